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

#ifndef ORDCALC_CONTROLLED_HPP_
#define ORDCALC_CONTROLLED_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordcalc/common.hpp"
#include "ordcalc/formula.hpp"
#include "ordcalc/formula_json.hpp"
#include "ordcalc/psi.hpp"

namespace ordcalc {

enum class CRule {
  kInitial,
  kOr,          // finite disjunction, binary or, bounded exists with closed bound
  kAnd,         // finite conjunction, binary and, bounded forall with closed bound
  kExists,
  kForallOmega,
  kILess,
  kIbarLess,
  kCl,
  kCut,
  kHyp,         // assumed judgment, reported but not derived
};

const char* crule_name(CRule r);
CRule crule_from_name(const std::string& s);

// Judgment H_gamma[theta] |-^a_d sequent, with its last rule.
struct Certificate {
  PsiTerm gamma;
  std::vector<PsiTerm> theta;
  PsiTerm a;
  unsigned d = 1;
  Sequent sequent;
  CRule rule = CRule::kInitial;
  std::optional<Formula> principal;
  std::optional<unsigned> index;            // kOr
  std::optional<std::uint64_t> witness;     // kExists
  std::vector<std::uint64_t> instances;     // kForallOmega, one per premise
  std::optional<PsiTerm> beta;              // kILess
  std::vector<PsiTerm> stages;              // kIbarLess, one per premise
  std::vector<PsiTerm> declared_stages;     // kIbarLess sample beyond k(sequent)
  std::optional<PsiTerm> schematic_bound;   // kForallOmega, kIbarLess
  std::optional<Formula> cut;
  std::string note;                         // kHyp
  std::vector<Certificate> premises;
};

struct CertificateReport {
  Diagnostics errors;
  Diagnostics hypotheses;  // kHyp nodes met
  bool accepted() const { return errors.empty(); }
};

CertificateReport check_certificate(const Certificate& c, const OperatorRegistry& reg);

// The Bounding transform: from H |-^a_1 Gamma with Gamma positive and
// a < Omega, builds H |-^a_1 Gamma^(b) for a <= b in H and below Omega.
// Throws DomainError on violated preconditions.
Certificate apply_bounding(const Certificate& c, const PsiTerm& b, const OperatorRegistry& reg);

// Bound after removing the top cut layer: w^a.
PsiTerm cut_elimination_bound(const PsiTerm& a);

struct CertificateDocument {
  OperatorRegistry registry;
  Certificate certificate;
};

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j, const std::string& path = "$");
Json certificate_document_to_json(const CertificateDocument& d);
CertificateDocument certificate_document_from_json(const Json& j);
Json certificate_report_to_json(const CertificateReport& r);

// Number of nodes, for reports.
std::size_t certificate_size(const Certificate& c);

}  // namespace ordcalc

#endif  // ORDCALC_CONTROLLED_HPP_
