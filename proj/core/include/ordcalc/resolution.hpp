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

#ifndef ORDCALC_RESOLUTION_HPP_
#define ORDCALC_RESOLUTION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordcalc/common.hpp"
#include "ordcalc/controlled.hpp"
#include "ordcalc/formula.hpp"
#include "ordcalc/formula_json.hpp"
#include "ordcalc/psi.hpp"

namespace ordcalc {

// C_i, ~C_i, D_i or ~D_i with an attached integer; 0 means unassigned.
struct DLit {
  enum class Kind { kC, kD };
  Kind kind = Kind::kC;
  unsigned index = 0;
  bool positive = true;
  unsigned dec = 0;

  bool same_literal(const DLit& o) const {
    return kind == o.kind && index == o.index && positive == o.positive;
  }
  bool complementary(const DLit& o) const {
    return kind == o.kind && index == o.index && positive != o.positive;
  }
  bool operator==(const DLit& o) const { return same_literal(o) && dec == o.dec; }
  bool operator<(const DLit& o) const;
};

DLit lit_c(unsigned i, unsigned dec = 0);
DLit lit_cbar(unsigned i, unsigned dec = 0);
DLit lit_d(unsigned i, unsigned dec = 0);
DLit lit_dbar(unsigned i, unsigned dec = 0);

// "C0^2", "~D1^3"; "C0" when undecorated.
std::string to_string(const DLit& l);
DLit parse_dlit(const std::string& s);

using DClause = std::vector<DLit>;
std::string to_string(const DClause& c);

// Unit clauses C_i, ~D_i and one clause {~C_i}_{i in I}, {D_j}_{j in J}
// per partition. Partition p puts i in I when bit i of p is set.
struct ClauseFamilies {
  unsigned n = 0;
  std::vector<DClause> units;
  std::vector<DClause> partitions;
};
ClauseFamilies gen_clauses(unsigned n);

// Conclusion occurrence `concl` stems from occurrence `prem` of premise
// `side`.
struct Link {
  std::size_t concl = 0;
  unsigned side = 0;
  std::size_t prem = 0;
};

struct DNode {
  enum class Kind { kUnit, kPartition, kResolve };
  Kind kind = Kind::kUnit;
  DClause clause;
  // kResolve: positions of the complementary pair in premises 0 and 1.
  std::size_t cut[2] = {0, 0};
  std::vector<Link> links;
  std::vector<DNode> premises;

  bool is_leaf() const { return kind != Kind::kResolve; }
};

DNode unit_leaf(DClause c);
DNode partition_leaf(DClause c);
// Resolves on the complementary pair (left[i], right[j]); merges equal
// occurrences and records the links. Throws DomainError when the pair is
// not complementary.
DNode resolve(DNode left, std::size_t i, DNode right, std::size_t j);
// Resolves on the unique occurrence of `l` in one premise and its
// complement in the other.
DNode resolve_on(DNode left, DNode right, const DLit& l);

// Level a leaf needs: k for C_i^(k), ~D_i^(m); max(max k, 1 + max m) for a
// partition leaf, with max of the empty list taken as 0.
unsigned leaf_level(const DNode& leaf);

struct DerivationStats {
  std::size_t nodes = 0;
  std::size_t leaves = 0;
  std::size_t depth = 0;
  unsigned max_label = 0;  // largest attached integer
  unsigned max_level = 0;  // largest leaf level
};
DerivationStats derivation_stats(const DNode& d);

// Decorated derivation of ~D_j^(k_j) from the n-family by the inductive
// construction. Throws DomainError unless j < n.
DNode build_pi(unsigned j, unsigned n);
// Raises every integer by 1 + m and appends ~C_n^(m) below the partition
// leaves. Throws DomainError when pi does not prove a single ~D literal
// from the n-family.
DNode extend_neg(const DNode& pi, unsigned n, unsigned m);
// Appends D_n^(k) below the partition leaves with k one above every
// negative partition-leaf integer.
std::pair<DNode, unsigned> extend_pos(const DNode& pi, unsigned n);
// Swaps indices a and b in every literal.
DNode swap_indices(const DNode& d, unsigned a, unsigned b);
// Shifts every attached integer by `by`.
DNode raise(const DNode& d, unsigned by);

enum class Construction {
  kPivot,      // resolve each D_i through C_i; default
  kRecursive,  // assemble build_pi(j, n)
};
DNode build_refutation(unsigned n, Construction c = Construction::kPivot);

struct DecorationReport {
  Diagnostics errors;
  bool refutation = false;  // root clause is empty
  bool ok() const { return errors.empty(); }
};
DecorationReport check_decoration(const DNode& d, unsigned n);

// Exhaustive ground resolution over decorated literals with integers in
// [1, max_dec]; returns a refutation when one exists. Requires
// 4 * n * max_dec <= 256.
std::optional<DNode> brute_force(unsigned n, unsigned max_dec);

struct GrowthRow {
  unsigned n = 0;
  std::size_t leaves = 0;
  unsigned max_label = 0;
  unsigned max_level = 0;
};
std::vector<GrowthRow> growth(unsigned upto, Construction c = Construction::kPivot);

// C_i and D_i as positive sentences plus the side formulas Gamma.
struct Bindings {
  std::vector<Formula> c;
  std::vector<Formula> d;
  Sequent side;
};
// C_i := I^{<Omega}(2i), D_i := I^{<Omega}(2i+1) for operator `op`.
Bindings default_bindings(unsigned n, const std::string& op);

// Leaves become hypotheses H_{b_L+1} |-^{beta_L}_1 at their level L, cuts
// add one to the bound; literal X^(m) is realised with stage beta_m.
// Throws DomainError on an invalid derivation or bindings.
Certificate to_controlled(const DNode& d, unsigned n, const PsiTerm& gamma, const PsiTerm& a0,
                          const Bindings& b);

Json dnode_to_json(const DNode& d);
DNode dnode_from_json(const Json& j, const std::string& path = "$");
// {"n": N, "derivation": node}
Json derivation_to_json(const DNode& d, unsigned n);
std::pair<DNode, unsigned> derivation_from_json(const Json& j);
Json decoration_report_to_json(const DecorationReport& r);

}  // namespace ordcalc

#endif  // ORDCALC_RESOLUTION_HPP_
