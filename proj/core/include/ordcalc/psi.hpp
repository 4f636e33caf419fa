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

#ifndef ORDCALC_PSI_HPP_
#define ORDCALC_PSI_HPP_

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ordcalc/cnf.hpp"
#include "ordcalc/common.hpp"
#include "ordcalc/sexpr.hpp"

namespace ordcalc {

struct PsiNode;

// Term of the psi system: 0, Omega, w^b (b > Omega), psi(a), or a weakly
// decreasing sum of at least two principal terms.
class PsiTerm {
 public:
  enum class Kind { kZero, kOmega, kOmegaPow, kPsi, kSum };

  PsiTerm() = default;  // zero
  static PsiTerm zero() { return PsiTerm(); }
  static PsiTerm omega_const();
  // Raw constructors; no checks. Use omega_pow / psi_app / add_psi for
  // checked, normalised construction.
  static PsiTerm raw_pow(PsiTerm exp);
  static PsiTerm raw_psi(PsiTerm arg);
  static PsiTerm raw_sum(std::vector<PsiTerm> items);

  Kind kind() const;
  bool is_zero() const { return node_ == nullptr; }
  bool is_principal() const;
  const PsiTerm& sub() const;                // exponent or psi argument
  const std::vector<PsiTerm>& items() const;  // sum summands

  bool operator==(const PsiTerm& o) const;

 private:
  explicit PsiTerm(std::shared_ptr<const PsiNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const PsiNode> node_;
};

struct PsiNode {
  PsiTerm::Kind kind = PsiTerm::Kind::kZero;
  PsiTerm sub;
  std::vector<PsiTerm> items;
};

// Result of the collapsing bookkeeping b_m = gamma + w^(Omega+a0)*m.
struct CollapseSteps {
  PsiTerm gamma;
  PsiTerm a0;
  unsigned m = 0;
  PsiTerm b_m;
  PsiTerm beta_m;
};

std::size_t psi_size(const PsiTerm& t);

// Grammar check: exponent above Omega, sums of principals weakly decreasing.
Diagnostics validate_psi(const PsiTerm& t);

// G(t), sorted ascending, duplicates removed.
std::vector<PsiTerm> g_set(const PsiTerm& t);
// Every psi(a) subterm satisfies G(a) < a.
bool is_nf(const PsiTerm& t);

// Throws DomainError when an argument is invalid or not in normal form.
Ord cmp_psi(const PsiTerm& s, const PsiTerm& t);
// Same order, with the normal-form precondition left to the caller.
Ord cmp_psi_unchecked(const PsiTerm& s, const PsiTerm& t);
inline bool psi_lt(const PsiTerm& s, const PsiTerm& t) {
  return cmp_psi_unchecked(s, t) == Ord::LT;
}

PsiTerm add_psi(const PsiTerm& s, const PsiTerm& t);
// w^e; throws DomainError unless e > Omega.
PsiTerm omega_pow(const PsiTerm& e);
// w^e for e >= Omega, using w^Omega = Omega.
PsiTerm omega_pow_above(const PsiTerm& e);
// w^a for countable a, written psi(a).
PsiTerm countable_omega_pow(const PsiTerm& a);
// psi(a); throws DomainError when a fails the grammar.
PsiTerm psi_app(const PsiTerm& a);
// psi(0) + ... + psi(0), n times.
PsiTerm psi_nat(unsigned n);
// Largest of two terms.
PsiTerm psi_max(const PsiTerm& a, const PsiTerm& b);

// Decides t in H_gamma(X) by structural recursion.
bool h_member(const PsiTerm& gamma, const std::vector<PsiTerm>& x, const PsiTerm& t);

PsiTerm hat(const PsiTerm& gamma, const PsiTerm& a);
// Throws DomainError when m == 0.
CollapseSteps collapse_steps(const PsiTerm& gamma, const PsiTerm& a0, unsigned m);

// Built from 0, + and psi only.
bool is_countable_psi(const PsiTerm& t);
// psi(a) = w^a; throws DomainError outside the countable fragment.
Cnf eval_countable_psi(const PsiTerm& t);

// Normal-form terms of size <= bound, ordered by size then wire text.
std::vector<PsiTerm> enumerate_psi(std::size_t size_bound);

// Wire syntax: 0 | Om | (w EXP) | (p ARG) | (sum T1 T2 ...)
Sexpr psi_to_sexpr(const PsiTerm& t);
std::string psi_to_wire(const PsiTerm& t);
PsiTerm psi_from_sexpr(const Sexpr& e);
PsiTerm parse_psi(std::string_view text);
std::string pretty_psi(const PsiTerm& t);

}  // namespace ordcalc

#endif  // ORDCALC_PSI_HPP_
