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

#include <random>

#include "doctest.h"
#include "ordcalc/fixpoint.hpp"
#include "support.hpp"

using namespace ordcalc;

namespace {

using U = std::vector<std::uint64_t>;

FiniteRelation relation(std::uint64_t n, std::vector<std::pair<std::uint64_t, std::uint64_t>> edges,
                        bool transitive = false) {
  FiniteRelation r;
  r.n = n;
  r.edges.insert(edges.begin(), edges.end());
  r.transitive = transitive;
  return r;
}

FiniteRelation from_mask(std::uint64_t n, std::uint64_t mask) {
  FiniteRelation r;
  r.n = n;
  for (std::uint64_t i = 0; i < n * n; ++i) {
    if (mask >> i & 1) r.edges.insert({i / n, i % n});
  }
  return r;
}

FiniteRelation random_relation(std::mt19937_64& rng, std::uint64_t n) {
  std::bernoulli_distribution edge(std::uniform_real_distribution<double>(0.05, 0.5)(rng));
  FiniteRelation r;
  r.n = n;
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t b = 0; b < n; ++b) {
      if (edge(rng)) r.edges.insert({a, b});
    }
  }
  return r;
}

// Compares stages, norms, the accessible part and the axioms against the
// rank recursion.
void agrees_with_oracle(const FiniteRelation& r) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges(r.edges.begin(), r.edges.end());
  oracle::RankOracle o = oracle::rank_oracle(r.n, edges);
  OperatorEntry op = acc_operator(r);
  StageTrace t = lfp_stages(op, r.n);
  AccPart a = acc_part(r);
  U w;
  for (std::uint64_t v = 0; v < r.n; ++v) {
    Norm nv = norm(t, v);
    if (o.rank[v] < 0) {
      CHECK(!nv.has_value());
      CHECK(!a.rank.count(v));
    } else {
      w.push_back(v);
      REQUIRE(nv.has_value());
      CHECK(*nv == static_cast<std::uint64_t>(o.rank[v]));
      CHECK(a.rank.at(v) == *nv);
    }
  }
  CHECK(a.w == w);
  CHECK(t.fixpoint() == w);
  for (std::size_t k = 0; k + 1 < t.stages.size(); ++k) {
    CHECK(std::includes(t.stages[k + 1].begin(), t.stages[k + 1].end(), t.stages[k].begin(),
                        t.stages[k].end()));
  }
  CHECK(t.closure <= r.n + 1);
  FixpointReport rep = check_fixpoint_axioms(op, t);
  CHECK(rep.passed());
  CHECK(rep.prog.has_value());
}

}  // namespace

TEST_CASE("stages of the documented operators") {
  StageTrace empty = lfp_stages(acc_operator(relation(3, {})), 3);
  REQUIRE(empty.stages.size() >= 2);
  CHECK(empty.stages[0].empty());
  CHECK(empty.stages[1] == U{0, 1, 2});
  CHECK(empty.closure == 1);

  StageTrace chain = lfp_stages(acc_operator(relation(3, {{0, 1}, {1, 2}, {0, 2}}, true)), 3);
  REQUIRE(chain.stages.size() >= 4);
  CHECK(chain.stages[1] == U{0});
  CHECK(chain.stages[2] == U{0, 1});
  CHECK(chain.stages[3] == U{0, 1, 2});
  CHECK(chain.closure == 3);

  OperatorEntry self;
  self.name = "self";
  self.body = Formula::mem("X", Term::var("x"));
  StageTrace none = lfp_stages(self, 4);
  for (const U& s : none.stages) CHECK(s.empty());
  CHECK(none.closure == 0);
  CHECK(check_fixpoint_axioms(self, 4).passed());
}

TEST_CASE("inductive norms") {
  CHECK(norm(acc_operator(relation(3, {})), 0, 3) == Norm(0));
  CHECK(norm(acc_operator(relation(3, {{0, 1}, {1, 2}, {0, 2}}, true)), 2, 3) == Norm(2));
  CHECK(norm(acc_operator(relation(2, {{0, 1}, {1, 0}})), 0, 2) == std::nullopt);
  CHECK(norm_to_string(std::nullopt) == "inf");
  CHECK(norm_to_string(Norm(3)) == "3");
}

TEST_CASE("accessible parts") {
  AccPart chain = acc_part(relation(3, {{0, 1}, {1, 2}, {0, 2}}, true));
  CHECK(chain.w == U{0, 1, 2});
  CHECK(chain.rank == std::map<std::uint64_t, std::uint64_t>{{0, 0}, {1, 1}, {2, 2}});
  AccPart cyc = acc_part(relation(3, {{0, 1}, {1, 0}, {1, 2}}));
  CHECK(cyc.w.empty());
  AccPart mixed = acc_part(relation(4, {{0, 1}, {1, 0}, {2, 3}}));
  CHECK(mixed.w == U{2, 3});
}

TEST_CASE("truncated traces fail closure and the empty universe passes") {
  FiniteRelation chain = relation(3, {{0, 1}, {1, 2}, {0, 2}}, true);
  OperatorEntry op = acc_operator(chain);
  StageTrace t = lfp_stages(op, 3);
  CHECK(check_fixpoint_axioms(op, t).passed());
  t.stages.resize(2);
  FixpointReport cut = check_fixpoint_axioms(op, t);
  CHECK(!cut.closed);
  CHECK(!cut.passed());
  CHECK(!cut.counterexamples.empty());
  CHECK(check_fixpoint_axioms(acc_operator(relation(0, {})), 0).passed());
}

TEST_CASE("relation validation") {
  CHECK(validate_relation(relation(3, {{0, 1}, {1, 2}, {0, 2}}, true)).empty());
  CHECK(!validate_relation(relation(3, {{0, 1}, {1, 2}}, true)).empty());
  CHECK(!validate_relation(relation(2, {{0, 5}})).empty());
  FiniteRelation c = transitive_closure(relation(4, {{0, 1}, {1, 2}, {2, 3}}));
  CHECK(is_transitive(c));
  CHECK(c.edges.size() == 6);
}

TEST_CASE("exhaustive agreement with the rank recursion up to four elements") {
  for (std::uint64_t n = 0; n <= 4; ++n) {
    std::uint64_t total = std::uint64_t{1} << (n * n);
    for (std::uint64_t m = 0; m < total; ++m) agrees_with_oracle(from_mask(n, m));
  }
}

TEST_CASE("random agreement up to eight elements") {
  std::mt19937_64 rng(20261014);
  for (int i = 0; i < 400; ++i) {
    std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(1, 8)(rng);
    FiniteRelation r = random_relation(rng, n);
    agrees_with_oracle(r);
    agrees_with_oracle(transitive_closure(r));
  }
}

TEST_CASE("transitive ranks follow the predecessor recursion") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    FiniteRelation r = transitive_closure(random_relation(rng, 6));
    AccPart a = acc_part(r);
    for (std::uint64_t v : a.w) {
      std::int64_t best = -1;
      for (const auto& [x, y] : r.edges) {
        if (y == v) best = std::max<std::int64_t>(best, static_cast<std::int64_t>(a.rank.at(x)));
      }
      CHECK(static_cast<std::int64_t>(a.rank.at(v)) == best + 1);
    }
  }
}

TEST_CASE("relations round trip through JSON") {
  FiniteRelation r = relation(4, {{0, 1}, {2, 3}}, false);
  FiniteRelation back = relation_from_json(Json::parse(relation_to_json(r).dump()));
  CHECK(back.n == r.n);
  CHECK(back.edges == r.edges);
  CHECK(back.transitive == r.transitive);
  CHECK_THROWS_AS(relation_from_json(Json::parse(R"({"n":2,"edges":[[0]]})")), ParseError);
  Json tj = trace_to_json(lfp_stages(acc_operator(r), 4));
  CHECK(tj.contains("stages"));
}
