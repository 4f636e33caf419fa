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

#ifndef ORDCALC_FIXPOINT_HPP_
#define ORDCALC_FIXPOINT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ordcalc/common.hpp"
#include "ordcalc/formula.hpp"
#include "ordcalc/formula_json.hpp"

namespace ordcalc {

// Relation on [0, n). An edge (a, b) reads a < b in the relation.
struct FiniteRelation {
  std::uint64_t n = 0;
  std::set<std::pair<std::uint64_t, std::uint64_t>> edges;
  bool transitive = false;  // declared flag, checked by validate_relation
};

bool is_transitive(const FiniteRelation& r);
FiniteRelation transitive_closure(const FiniteRelation& r);
// Edges outside the universe, or a transitive flag that does not hold.
Diagnostics validate_relation(const FiniteRelation& r);

// forall y (~theta0(x, y) | y in X) with theta0 listing the edges.
OperatorEntry acc_operator(const FiniteRelation& r, const std::string& name = "acc");

// Iterates I^0 = {} and I^(k+1) = {m < n : phi(I^k, m)}.
struct StageTrace {
  std::string op;
  std::uint64_t n = 0;
  std::vector<std::vector<std::uint64_t>> stages;  // stages[k] = I^k, sorted
  std::size_t closure = 0;  // least k with I^k = I^(k+1)
  bool truncated = false;   // an unbounded quantifier was cut to [0, n)
  const std::vector<std::uint64_t>& fixpoint() const { return stages.back(); }
};

// Throws DomainError when the body cannot be evaluated.
StageTrace lfp_stages(const OperatorEntry& op, std::uint64_t n);

// Inductive norm; nullopt stands for infinity.
using Norm = std::optional<std::uint64_t>;
Norm norm(const StageTrace& t, std::uint64_t elem);
Norm norm(const OperatorEntry& op, std::uint64_t elem, std::uint64_t n);
std::string norm_to_string(const Norm& v);

struct AccPart {
  std::vector<std::uint64_t> w;               // accessible part, sorted
  std::map<std::uint64_t, std::uint64_t> rank;  // defined on w
};
AccPart acc_part(const FiniteRelation& r);

struct FixpointReport {
  bool closed = true;      // phi(I) is contained in I
  bool supported = true;   // I is contained in phi(I)
  std::optional<bool> prog;  // Acc operators only
  bool truncated = false;
  Diagnostics counterexamples;
  bool passed() const { return closed && supported && prog.value_or(true); }
};

FixpointReport check_fixpoint_axioms(const OperatorEntry& op, std::uint64_t n);
// Checks the last stage of a given trace.
FixpointReport check_fixpoint_axioms(const OperatorEntry& op, const StageTrace& t);

Json relation_to_json(const FiniteRelation& r);
FiniteRelation relation_from_json(const Json& j, const std::string& path = "$");
Json trace_to_json(const StageTrace& t);
Json acc_part_to_json(const AccPart& a);
Json fixpoint_report_to_json(const FixpointReport& r);

}  // namespace ordcalc

#endif  // ORDCALC_FIXPOINT_HPP_
