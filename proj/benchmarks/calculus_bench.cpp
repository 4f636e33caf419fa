/* Copyright 2026 The ordcalc Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <benchmark/benchmark.h>

#include <random>

#include "ordcalc/controlled.hpp"
#include "ordcalc/fixpoint.hpp"
#include "ordcalc/formula.hpp"
#include "ordcalc/resolution.hpp"
#include "ordcalc/sequent.hpp"

namespace {

using namespace ordcalc;

void BM_BuildRefutation(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_refutation(state.range(0)));
}
BENCHMARK(BM_BuildRefutation)->DenseRange(2, 7)->Unit(benchmark::kMicrosecond);

void BM_CheckDecoration(benchmark::State& state) {
  unsigned n = state.range(0);
  DNode d = build_refutation(n);
  for (auto _ : state) benchmark::DoNotOptimize(check_decoration(d, n));
  state.counters["leaves"] = derivation_stats(d).leaves;
}
BENCHMARK(BM_CheckDecoration)->DenseRange(2, 7)->Unit(benchmark::kMicrosecond);

void BM_BruteForce(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(brute_force(2, state.range(0)));
}
BENCHMARK(BM_BruteForce)->Arg(1)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

OperatorRegistry top_registry() {
  OperatorRegistry reg;
  OperatorEntry top;
  top.name = "top";
  top.body = Formula::disj(Formula::eq(Term::var("x"), Term::var("x")), Formula::mem("X", Term::var("x")));
  reg.add(top);
  return reg;
}

void BM_CheckControlled(benchmark::State& state) {
  unsigned n = state.range(0);
  Certificate c = to_controlled(build_refutation(n), n, PsiTerm(), psi_app(psi_app(PsiTerm())),
                                default_bindings(n, "top"));
  OperatorRegistry reg = top_registry();
  for (auto _ : state) benchmark::DoNotOptimize(check_certificate(c, reg));
}
BENCHMARK(BM_CheckControlled)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_LfpStages(benchmark::State& state) {
  std::uint64_t n = state.range(0);
  FiniteRelation r;
  r.n = n;
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t b = a + 1; b < n; ++b) r.edges.insert({a, b});
  }
  OperatorEntry op = acc_operator(r);
  for (auto _ : state) benchmark::DoNotOptimize(lfp_stages(op, n));
}
BENCHMARK(BM_LfpStages)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_Classify(benchmark::State& state) {
  Formula f = Formula::forall(
      "y", Formula::disj(Formula::nlt(Term::var("y"), Term::num(9)),
                         Formula::exists("z", Formula::conj(Formula::fix("top", Term::var("z")),
                                                            Formula::nfix("top", Term::var("y"))))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(f));
    benchmark::DoNotOptimize(dg(f));
  }
}
BENCHMARK(BM_Classify);

void BM_CheckLogicalInitial(benchmark::State& state) {
  OperatorRegistry reg = top_registry();
  ProofNode p;
  p.rule = Rule::kLogicalInitial;
  Formula f = Formula::fix("top", Term::num(3));
  p.conclusion = {f, negate(f)};
  TheoryId th = parse_theory("pn-id:0");
  for (auto _ : state) benchmark::DoNotOptimize(check_proof(p, th, reg));
}
BENCHMARK(BM_CheckLogicalInitial);

}  // namespace

BENCHMARK_MAIN();
