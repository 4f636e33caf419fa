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

#include <set>

#include "doctest.h"
#include "ordcalc/resolution.hpp"
#include "support.hpp"

using namespace ordcalc;

namespace {

std::string clause_text(const DNode& d) { return to_string(d.clause); }

void collect_leaves(const DNode& d, std::vector<const DNode*>& out) {
  if (d.is_leaf()) {
    out.push_back(&d);
    return;
  }
  for (const DNode& p : d.premises) collect_leaves(p, out);
}

// Largest integer on a negative literal in any partition leaf.
unsigned max_negative_partition(const DNode& d) {
  std::vector<const DNode*> leaves;
  collect_leaves(d, leaves);
  unsigned best = 0;
  for (const DNode* l : leaves) {
    if (l->kind != DNode::Kind::kPartition) continue;
    for (const DLit& x : l->clause) {
      if (!x.positive) best = std::max(best, x.dec);
    }
  }
  return best;
}

// Path and node of the first unit leaf in preorder.
DNode* first_unit(DNode& d, std::string& path) {
  if (d.kind == DNode::Kind::kUnit) return &d;
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    std::string sub = path + ".premises[" + std::to_string(i) + "]";
    if (DNode* hit = first_unit(d.premises[i], sub)) {
      path = sub;
      return hit;
    }
  }
  return nullptr;
}

bool has_error(const DecorationReport& r, const std::string& path, const std::string& needle) {
  for (const Diagnostic& e : r.errors) {
    if (e.path == path && e.message.find(needle) != std::string::npos) return true;
  }
  return false;
}

std::size_t count_hyps(const Certificate& c) {
  std::size_t k = c.rule == CRule::kHyp ? 1 : 0;
  for (const Certificate& p : c.premises) k += count_hyps(p);
  return k;
}

}  // namespace

TEST_CASE("clause families") {
  ClauseFamilies one = gen_clauses(1);
  REQUIRE(one.units.size() == 1);
  CHECK(to_string(one.units[0]) == to_string(DClause{lit_c(0), lit_dbar(0)}));
  REQUIRE(one.partitions.size() == 2);
  std::set<std::string> parts;
  for (const DClause& c : one.partitions) parts.insert(to_string(c));
  CHECK(parts == std::set<std::string>{to_string(DClause{lit_cbar(0)}), to_string(DClause{lit_d(0)})});
  for (unsigned n = 1; n <= 6; ++n) {
    ClauseFamilies f = gen_clauses(n);
    CHECK(f.units.size() == n);
    CHECK(f.partitions.size() == (std::size_t{1} << n));
    for (const DClause& c : f.partitions) CHECK(c.size() == n);
  }
  CHECK_THROWS_AS(gen_clauses(0), DomainError);
}

TEST_CASE("literal syntax") {
  CHECK(to_string(lit_cbar(3, 2)) == "~C3^2");
  CHECK(to_string(lit_d(1)) == "D1");
  CHECK(parse_dlit("~D0^7") == lit_dbar(0, 7));
  CHECK(parse_dlit("C2") == lit_c(2));
  CHECK_THROWS_AS(parse_dlit("E1"), ParseError);
  CHECK(lit_c(0).complementary(lit_cbar(0, 4)));
  CHECK(!lit_c(0).complementary(lit_dbar(0)));
}

TEST_CASE("the base derivation for one index") {
  DNode pi = build_pi(0, 1);
  CHECK(clause_text(pi) == to_string(DClause{lit_dbar(0, 1)}));
  REQUIRE(pi.premises.size() == 2);
  std::vector<const DNode*> leaves;
  collect_leaves(pi, leaves);
  std::set<std::string> got;
  for (const DNode* l : leaves) got.insert(clause_text(*l));
  CHECK(got == std::set<std::string>{to_string(DClause{lit_c(0, 2), lit_dbar(0, 1)}),
                                     to_string(DClause{lit_cbar(0, 2)})});
  CHECK(check_decoration(pi, 1).ok());
  CHECK_THROWS_AS(build_pi(2, 2), DomainError);
}

TEST_CASE("extending with a negative literal shifts integers by one plus m") {
  DNode pi = build_pi(0, 1);
  DNode e1 = extend_neg(pi, 1, 1);
  std::set<std::string> c1;
  for (const DLit& l : e1.clause) c1.insert(to_string(l));
  CHECK(c1 == std::set<std::string>{"~D0^3", "~C1^1"});
  CHECK(check_decoration(e1, 2).ok());
  DNode e5 = extend_neg(pi, 1, 5);
  std::set<std::string> c5;
  for (const DLit& l : e5.clause) c5.insert(to_string(l));
  CHECK(c5 == std::set<std::string>{"~D0^7", "~C1^5"});
  CHECK(check_decoration(e5, 2).ok());
  CHECK_THROWS_AS(extend_neg(pi, 2, 1), DomainError);
  CHECK_THROWS_AS(extend_neg(pi, 1, 0), DomainError);
}

TEST_CASE("extending with a positive literal picks one above the negative integers") {
  DNode pi = build_pi(0, 1);
  auto [e, k] = extend_pos(pi, 1);
  CHECK(k == 3);
  CHECK(check_decoration(e, 2).ok());
  bool has_d = false;
  for (const DLit& l : e.clause) has_d |= l.kind == DLit::Kind::kD && l.positive && l.index == 1 && l.dec == 3;
  CHECK(has_d);

  auto [e2, k2] = extend_pos(raise(pi, 2), 1);
  CHECK(k2 == 5);
  CHECK(check_decoration(e2, 2).ok());

  for (unsigned n = 1; n <= 3; ++n) {
    for (unsigned j = 0; j < n; ++j) {
      DNode p = build_pi(j, n);
      auto [q, kq] = extend_pos(p, n);
      CHECK(kq == 1 + max_negative_partition(p));
      CHECK(check_decoration(q, n + 1).ok());
    }
  }
  CHECK_THROWS_AS(extend_pos(DNode(), 1), DomainError);
}

TEST_CASE("inductive derivations") {
  CHECK(clause_text(build_pi(1, 2)) == "~D1^6");
  CHECK(clause_text(build_pi(0, 2)) == "~D0^6");
  CHECK(clause_text(build_pi(2, 3)) == "~D2^16");
  for (unsigned n = 1; n <= 4; ++n) {
    for (unsigned j = 0; j < n; ++j) {
      DNode p = build_pi(j, n);
      REQUIRE(p.clause.size() == 1);
      CHECK(p.clause[0].same_literal(lit_dbar(j)));
      CHECK_MESSAGE(check_decoration(p, n).ok(), "j=" << j << " n=" << n);
    }
  }
}

TEST_CASE("refutations check for n up to eight") {
  for (unsigned n = 1; n <= 8; ++n) {
    DecorationReport r = check_decoration(build_refutation(n), n);
    CHECK_MESSAGE(r.ok(), n);
    CHECK(r.refutation);
  }
  for (unsigned n = 1; n <= 5; ++n) {
    DecorationReport r = check_decoration(build_refutation(n, Construction::kRecursive), n);
    CHECK_MESSAGE(r.ok(), n);
    CHECK(r.refutation);
  }
  DerivationStats one = derivation_stats(build_refutation(1));
  CHECK(one.leaves == 3);
  DerivationStats two = derivation_stats(build_refutation(2));
  CHECK(two.max_level == 5);
}

TEST_CASE("growth follows the recurrences") {
  std::vector<GrowthRow> pivot = growth(6);
  REQUIRE(pivot.size() == 6);
  std::size_t leaves = 1;
  for (const GrowthRow& g : pivot) {
    leaves = 1 + g.n * (1 + leaves);
    CHECK(g.leaves == leaves);
    CHECK(g.max_label == 2 * g.n);
    CHECK(g.max_level == 2 * g.n + 1);
  }
  std::vector<GrowthRow> rec = growth(5, Construction::kRecursive);
  std::vector<unsigned> labels;
  std::vector<std::size_t> counts;
  for (const GrowthRow& g : rec) {
    labels.push_back(g.max_label);
    counts.push_back(g.leaves);
  }
  CHECK(labels == std::vector<unsigned>{2, 7, 17, 37, 77});
  CHECK(counts == std::vector<std::size_t>{3, 13, 61, 329, 2061});
}

TEST_CASE("tampered leaves and unlinked duplicates are located") {
  DNode d = build_refutation(2);
  std::string path = "$";
  DNode* leaf = first_unit(d, path);
  REQUIRE(leaf != nullptr);
  for (DLit& l : leaf->clause) {
    if (l.kind == DLit::Kind::kC) l.dec = 1;
  }
  for (DLit& l : leaf->clause) {
    if (l.kind == DLit::Kind::kD) l.dec = 1;
  }
  DecorationReport r = check_decoration(d, 2);
  CHECK(!r.ok());
  CHECK(has_error(r, path, "condition 3"));

  DNode e = build_refutation(2);
  REQUIRE(!e.premises.empty());
  DNode* node = &e;
  std::string npath = "$";
  while (node->links.empty()) {
    REQUIRE(!node->premises.empty());
    std::size_t pick = node->premises[0].is_leaf() ? 1 : 0;
    npath += ".premises[" + std::to_string(pick) + "]";
    node = &node->premises[pick];
  }
  node->links.pop_back();
  DecorationReport u = check_decoration(e, 2);
  CHECK(!u.ok());
  CHECK(has_error(u, npath, "condition 2"));
}

TEST_CASE("brute force oracle") {
  std::optional<DNode> a = brute_force(1, 2);
  REQUIRE(a.has_value());
  CHECK(check_decoration(*a, 1).ok());
  CHECK(a->clause.empty());
  std::optional<DNode> b = brute_force(2, 5);
  REQUIRE(b.has_value());
  CHECK(check_decoration(*b, 2).ok());
  CHECK(!brute_force(2, 1).has_value());
  CHECK(!brute_force(1, 1).has_value());
  CHECK_THROWS_AS(brute_force(20, 20), DomainError);
}

TEST_CASE("controlled realisation of the two-index refutation") {
  DNode d = build_refutation(2);
  Bindings b = default_bindings(2, "top");
  PsiTerm gamma;
  PsiTerm a0 = psi_app(psi_app(PsiTerm()));
  Certificate c = to_controlled(d, 2, gamma, a0, b);
  PsiTerm beta5 = collapse_steps(gamma, a0, 5).beta_m;
  CHECK(cmp_psi(c.a, add_psi(beta5, psi_nat(5))) == Ord::EQ);
  OperatorRegistry reg;
  OperatorEntry top;
  top.name = "top";
  top.body = Formula::disj(Formula::eq(Term::var("x"), Term::var("x")), Formula::mem("X", Term::var("x")));
  reg.add(top);
  CertificateReport r = check_certificate(c, reg);
  CHECK(r.accepted());
  CHECK(r.hypotheses.size() == count_hyps(c));
  CHECK(count_hyps(c) == derivation_stats(d).leaves);
  CHECK(c.sequent.empty());

  Bindings short_b = default_bindings(1, "top");
  CHECK_THROWS_AS(to_controlled(d, 2, gamma, a0, short_b), DomainError);
  Bindings neg = b;
  neg.c[0] = Formula::nfix("top", Term::num(0));
  CHECK_THROWS_AS(to_controlled(d, 2, gamma, a0, neg), DomainError);
  Bindings open = b;
  open.d[1] = Formula::fix("top", Term::var("z"));
  CHECK_THROWS_AS(to_controlled(d, 2, gamma, a0, open), DomainError);
}

TEST_CASE("derivations round trip") {
  for (unsigned n = 1; n <= 4; ++n) {
    DNode d = build_refutation(n);
    Json j = derivation_to_json(d, n);
    auto [back, m] = derivation_from_json(Json::parse(j.dump()));
    CHECK(m == n);
    CHECK(derivation_to_json(back, m) == j);
    CHECK(check_decoration(back, m).ok());
  }
  CHECK_THROWS_AS(dnode_from_json(Json::parse(R"({"kind":"leafy"})")), ParseError);
}
