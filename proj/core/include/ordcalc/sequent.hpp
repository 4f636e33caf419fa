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

#ifndef ORDCALC_SEQUENT_HPP_
#define ORDCALC_SEQUENT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "ordcalc/common.hpp"
#include "ordcalc/formula.hpp"
#include "ordcalc/formula_json.hpp"

namespace ordcalc {

enum class Rule {
  kLogicalInitial,
  kEqualityInitial,
  kArithInitial,
  kCut,
  kExists,
  kForall,
  kBExists,
  kBForall,
  kOr,
  kAnd,
  kR,
  kRbar,
  kInd,
};

const char* rule_name(Rule r);
// Throws ParseError on an unknown tag.
Rule rule_from_name(const std::string& s);
const std::vector<Rule>& all_rules();

// One node of a finite derivation in the one-sided calculus. Payload
// fields are used as the rule requires.
struct ProofNode {
  Rule rule = Rule::kLogicalInitial;
  Sequent conclusion;
  std::optional<Formula> principal;
  std::optional<Formula> cut;
  std::optional<Term> witness;        // exists, bexists
  std::optional<Term> term;           // ind: t; equality-initial: t
  std::optional<Term> term2;          // equality-initial: s
  std::string eigenvar;               // forall, bforall, Rbar, ind
  std::optional<unsigned> index;      // or
  std::optional<Abstraction> sigma;   // Rbar
  std::optional<Abstraction> theta;   // ind; equality-initial literal L(x)
  std::vector<ProofNode> premises;
};

enum class TheoryKind { kPnId, kPandnAcc, kPi01pAcc };

struct TheoryId {
  TheoryKind kind = TheoryKind::kPnId;
  unsigned k = 0;

  // Rank bound on induction formulas.
  unsigned ind_rank() const { return kind == TheoryKind::kPi01pAcc ? 1 : k; }
  bool acc_only() const { return kind != TheoryKind::kPnId; }
};

// "pn-id:K", "pandn-acc:K" or "pi01p-acc".
TheoryId parse_theory(const std::string& s);
std::string to_string(const TheoryId& t);

struct ProofReport {
  Diagnostics errors;
  // Trusted axioms that closed an arithmetical initial sequent.
  Diagnostics trusted_uses;
  bool accepted() const { return errors.empty(); }
};

// Checks every node locally. `trusted` lists closed sentences accepted as
// arithmetical initial sequents beyond those decided by evaluation.
ProofReport check_proof(const ProofNode& p, const TheoryId& th, const OperatorRegistry& reg,
                        const std::vector<Formula>& trusted = {});

// A proof file: registry, optional trusted axioms, optional default
// theory, and the tree.
struct ProofDocument {
  OperatorRegistry registry;
  std::vector<Formula> trusted;
  std::optional<std::string> theory;
  ProofNode proof;
};

Json proof_to_json(const ProofNode& p);
ProofNode proof_from_json(const Json& j, const std::string& path = "$");
Json document_to_json(const ProofDocument& d);
ProofDocument document_from_json(const Json& j);
Json report_to_json(const ProofReport& r, const TheoryId& th);

// Renames an eigenvariable consistently along the subtree that introduces
// it, or throws DomainError when `to` is not fresh there.
ProofNode rename_eigenvariables(const ProofNode& p, const std::string& suffix);

}  // namespace ordcalc

#endif  // ORDCALC_SEQUENT_HPP_
