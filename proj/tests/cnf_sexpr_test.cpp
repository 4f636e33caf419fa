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
#include "ordcalc/cnf.hpp"
#include "ordcalc/common.hpp"
#include "ordcalc/sexpr.hpp"
#include "support.hpp"

using namespace ordcalc;

namespace {

struct Pair {
  Cnf cnf;
  oracle::Ord0 ref;
};

// Random ordinal below w^w^w built the same way on both sides.
Pair random_pair(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 3 : 1);
  switch (pick(rng)) {
    case 0: return {Cnf::zero(), oracle::Ord0{}};
    case 1: {
      unsigned n = std::uniform_int_distribution<unsigned>(1, 4)(rng);
      return {Cnf::nat(n), oracle::nat(n)};
    }
    case 2: {
      Pair e = random_pair(rng, depth - 1);
      return {Cnf::omega_pow(e.cnf), oracle::w_pow(e.ref)};
    }
    default: {
      Pair a = random_pair(rng, depth - 1);
      Pair b = random_pair(rng, depth - 1);
      return {a.cnf + b.cnf, oracle::add(a.ref, b.ref)};
    }
  }
}

int sign(std::strong_ordering o) { return o < 0 ? -1 : (o > 0 ? 1 : 0); }

}  // namespace

TEST_CASE("cnf basics") {
  CHECK(Cnf::zero().is_zero());
  CHECK(Cnf::nat(3).length() == 1);
  CHECK(Cnf::nat(3).coef(0) == 3);
  CHECK(Cnf::nat(1) + Cnf::omega() == Cnf::omega());
  CHECK(Cnf::omega() + Cnf::nat(1) > Cnf::omega());
  CHECK(Cnf::omega().times(3) == Cnf::omega() + Cnf::omega() + Cnf::omega());
  CHECK(Cnf::omega_pow(Cnf::zero()) == Cnf::nat(1));
  CHECK(Cnf::zero().str() == "0");
}

TEST_CASE("cnf arithmetic agrees with the exponent list oracle") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 3000; ++i) {
    Pair a = random_pair(rng, 3);
    Pair b = random_pair(rng, 3);
    CHECK(sign(a.cnf <=> b.cnf) == oracle::compare(a.ref, b.ref));
    Pair s{a.cnf + b.cnf, oracle::add(a.ref, b.ref)};
    Pair probe = random_pair(rng, 2);
    CHECK(sign(s.cnf <=> probe.cnf) == oracle::compare(s.ref, probe.ref));
    CHECK((a.cnf + b.cnf) + probe.cnf == a.cnf + (b.cnf + probe.cnf));
    CHECK(a.cnf + b.cnf >= b.cnf);
  }
}

TEST_CASE("s-expressions") {
  Sexpr e = parse_sexpr(" (sum (p 0)  (p Om)) ");
  CHECK(e.is_list());
  CHECK(e.is_form("sum"));
  REQUIRE(e.items.size() == 3);
  CHECK(e.items[1].is_form("p"));
  CHECK(e.str() == "(sum (p 0) (p Om))");
  CHECK(parse_sexpr(e.str()).str() == e.str());
  CHECK(parse_sexpr("abc").is_atom);
  CHECK(parse_sexpr("()").items.empty());
  CHECK_THROWS_AS(parse_sexpr("(a b"), ParseError);
  CHECK_THROWS_AS(parse_sexpr("a b"), ParseError);
  CHECK_THROWS_AS(parse_sexpr(")"), ParseError);
  CHECK_THROWS_AS(parse_sexpr(""), ParseError);
}
