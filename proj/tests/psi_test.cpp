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

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "ordcalc/psi.hpp"
#include "support.hpp"

using namespace ordcalc;

namespace {

PsiTerm P(const char* s) { return parse_psi(s); }
const PsiTerm kZero;
const PsiTerm kOm = PsiTerm::omega_const();
const PsiTerm kOne = psi_app(kZero);      // psi0 = 1
const PsiTerm kW = psi_app(kOne);         // psi1 = w
const PsiTerm kTwo = psi_nat(2);

PsiTerm om_plus(const PsiTerm& a) { return omega_pow(add_psi(kOm, a)); }  // w^(Omega+a)

std::vector<PsiTerm> sorted_by_cmp(std::vector<PsiTerm> ts) {
  std::sort(ts.begin(), ts.end(), psi_lt);
  return ts;
}

}  // namespace

TEST_CASE("g_set") {
  CHECK(g_set(kZero).empty());
  CHECK(g_set(kOm).empty());
  CHECK(g_set(psi_app(kOm)) == std::vector<PsiTerm>{kOm});
  CHECK(g_set(om_plus(kOne)) == std::vector<PsiTerm>{kZero});
}

TEST_CASE("normal forms") {
  CHECK(is_nf(kOne));
  CHECK(is_nf(psi_app(kOne)));
  CHECK(!is_nf(PsiTerm::raw_psi(PsiTerm::raw_psi(kOm))));
  CHECK(is_nf(psi_app(kOm)));
}

TEST_CASE("cmp examples") {
  CHECK(cmp_psi(kOne, kW) == Ord::LT);
  CHECK(cmp_psi(psi_app(kOm), kOm) == Ord::LT);
  CHECK(cmp_psi(psi_app(om_plus(kOne)), psi_app(om_plus(kW))) == Ord::LT);
  CHECK(cmp_psi(kOm, om_plus(kOne)) == Ord::LT);
  CHECK_THROWS_AS(cmp_psi(PsiTerm::raw_psi(PsiTerm::raw_psi(kOm)), kOne), DomainError);
}

TEST_CASE("constructors") {
  PsiTerm s = add_psi(kOm, kOne);
  CHECK(s.kind() == PsiTerm::Kind::kSum);
  CHECK(s.items() == std::vector<PsiTerm>{kOm, kOne});
  CHECK(add_psi(kOne, kOm) == kOm);
  CHECK_THROWS_AS(omega_pow(kOne), DomainError);
  CHECK_THROWS_AS(omega_pow(kOm), DomainError);
  CHECK(omega_pow_above(kOm) == kOm);
  CHECK(countable_omega_pow(kOne) == kW);
}

TEST_CASE("h_member examples") {
  CHECK(h_member(kZero, {}, kOm));
  CHECK(h_member(kTwo, {}, kW));
  CHECK(!h_member(kOne, {}, kW));
  CHECK(h_member(kOne, {kW}, kW));
  CHECK(h_member(kZero, {}, add_psi(kOm, kOm)));
}

TEST_CASE("h_member is monotone in gamma and X") {
  std::vector<PsiTerm> ts = sorted_by_cmp(enumerate_psi(6));
  std::vector<PsiTerm> gammas(ts.begin(), ts.begin() + std::min<std::size_t>(ts.size(), 25));
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    for (std::size_t j = i; j < gammas.size(); ++j) {
      for (const PsiTerm& x : ts) {
        for (const PsiTerm& t : ts) {
          if (h_member(gammas[i], {}, t)) {
            REQUIRE(h_member(gammas[j], {}, t));
            REQUIRE(h_member(gammas[i], {x}, t));
          }
        }
      }
    }
  }
}

TEST_CASE("hat examples") {
  // w^Omega is normalised to Omega.
  CHECK(hat(kZero, kZero) == kOm);
  CHECK(hat(kOne, kOne) == om_plus(kOne));
  CHECK(hat(om_plus(kOne), kW) == om_plus(kW));
}

TEST_CASE("collapse examples") {
  CollapseSteps s1 = collapse_steps(kZero, kZero, 1);
  CHECK(s1.b_m == kOm);
  CHECK(s1.beta_m == psi_app(kOm));
  CollapseSteps s2 = collapse_steps(kZero, kZero, 2);
  CHECK(s2.b_m == add_psi(kOm, kOm));
  CHECK(cmp_psi(s1.beta_m, s2.beta_m) == Ord::LT);
  CollapseSteps s5 = collapse_steps(kZero, kW, 5);
  REQUIRE(s5.b_m.kind() == PsiTerm::Kind::kSum);
  CHECK(s5.b_m.items() == std::vector<PsiTerm>(5, om_plus(kW)));
  CHECK(is_nf(s5.beta_m));
  CHECK_THROWS_AS(collapse_steps(kZero, kZero, 0), DomainError);
}

TEST_CASE("beta_m increases and hat is monotone") {
  std::vector<PsiTerm> ts;
  for (const PsiTerm& t : enumerate_psi(6)) {
    if (cmp_psi(t, kOm) == Ord::LT) ts.push_back(t);
  }
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, ts.size() - 1);
  for (int n = 0; n < 200; ++n) {
    PsiTerm g = ts[pick(rng)];
    PsiTerm a0 = ts[pick(rng)];
    for (unsigned m = 1; m <= 5; ++m) {
      REQUIRE(psi_lt(collapse_steps(g, a0, m).beta_m, collapse_steps(g, a0, m + 1).beta_m));
    }
    PsiTerm a = ts[pick(rng)];
    if (psi_lt(a0, a)) REQUIRE(psi_lt(psi_app(hat(g, a0)), psi_app(hat(g, a))));
  }
}

TEST_CASE("enumeration matches a naive generate-and-filter count") {
  for (std::size_t s = 1; s <= 7; ++s) {
    std::size_t naive = 0;
    for (std::size_t k = 1; k <= s; ++k) {
      for (const PsiTerm& t : oracle::raw_psi(k)) naive += validate_psi(t).empty() && is_nf(t);
    }
    CHECK_MESSAGE(enumerate_psi(s).size() == naive, "size " << s);
  }
}

TEST_CASE("cmp agrees with the ordinal oracle on countable terms") {
  std::vector<PsiTerm> ts;
  for (const PsiTerm& t : enumerate_psi(11)) {
    if (oracle::countable(t)) ts.push_back(t);
  }
  REQUIRE(ts.size() > 50);
  for (const PsiTerm& s : ts) {
    for (const PsiTerm& t : ts) {
      int c = compare(oracle::eval(s), oracle::eval(t));
      Ord want = c < 0 ? Ord::LT : c > 0 ? Ord::GT : Ord::EQ;
      REQUIRE(cmp_psi(s, t) == want);
    }
  }
  CHECK(eval_countable_psi(kOne) == Cnf::nat(1));
  CHECK(eval_countable_psi(kW) == Cnf::omega());
}

TEST_CASE("order laws on a small enumeration") {
  std::vector<PsiTerm> ts = enumerate_psi(8);
  for (const PsiTerm& a : ts) {
    for (const PsiTerm& b : ts) {
      Ord ab = cmp_psi(a, b);
      REQUIRE(cmp_psi(b, a) == flip(ab));
      REQUIRE((ab == Ord::EQ) == (a == b));
    }
  }
}

TEST_CASE("psi is the least beta closed under H") {
  std::vector<PsiTerm> universe;
  for (const PsiTerm& t : enumerate_psi(9)) {
    if (oracle::countable(t)) universe.push_back(t);
  }
  universe = sorted_by_cmp(universe);
  // H_alpha(beta) cap Omega contained in beta, over the universe.
  auto closed = [&](const PsiTerm& alpha, const PsiTerm& beta) {
    std::vector<PsiTerm> x;
    for (const PsiTerm& u : universe) {
      if (psi_lt(u, beta)) x.push_back(u);
    }
    for (const PsiTerm& u : universe) {
      if (h_member(alpha, x, u) && !psi_lt(u, beta)) return false;
    }
    return true;
  };
  for (const PsiTerm& alpha : {kZero, kOne, kTwo}) {
    PsiTerm t = psi_app(alpha);
    CHECK_MESSAGE(closed(alpha, t), psi_to_wire(t));
    for (const PsiTerm& beta : universe) {
      if (!psi_lt(beta, t)) break;
      CHECK_MESSAGE(!closed(alpha, beta), psi_to_wire(beta));
    }
  }
}

TEST_CASE("wire round trip and syntax") {
  for (const PsiTerm& t : enumerate_psi(9)) {
    std::string w = psi_to_wire(t);
    REQUIRE(parse_psi(w) == t);
  }
  CHECK(psi_to_wire(kW) == "(p (p 0))");
  CHECK(P("Om") == kOm);
  CHECK(P("(sum (p 0) (p 0))") == kTwo);
  CHECK_THROWS_AS(P("(p 0"), ParseError);
  CHECK_THROWS_AS(P("1"), ParseError);
  CHECK(!validate_psi(P("(w 0)")).empty());
  CHECK(!validate_psi(P("(sum (p 0) Om)")).empty());
}
