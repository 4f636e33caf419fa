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

#ifndef ORDCALC_FORMULA_HPP_
#define ORDCALC_FORMULA_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ordcalc/common.hpp"
#include "ordcalc/psi.hpp"

namespace ordcalc {

// ---------------------------------------------------------------------------
// Terms

struct TermNode;

// Arithmetic term over 0, S, +, *, pairing inverses p0/p1, 2^x,
// variables and numerals.
class Term {
 public:
  enum class Kind { kVar, kNum, kSucc, kAdd, kMul, kP0, kP1, kExp2 };

  Term();  // numeral 0
  static Term var(const std::string& name);
  static Term num(std::uint64_t n);
  static Term succ(const Term& t);
  static Term add(const Term& s, const Term& t);
  static Term mul(const Term& s, const Term& t);
  static Term p0(const Term& t);
  static Term p1(const Term& t);
  static Term exp2(const Term& t);

  Kind kind() const;
  const std::string& name() const;       // kVar
  std::uint64_t value() const;           // kNum
  const std::vector<Term>& args() const;
  // Canonical text; equality and ordering go through it.
  const std::string& key() const;

  bool operator==(const Term& o) const { return key() == o.key(); }
  bool operator<(const Term& o) const { return key() < o.key(); }

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  static Term make(TermNode n);
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  Term::Kind kind = Term::Kind::kNum;
  std::string name;
  std::uint64_t value = 0;
  std::vector<Term> args;
  std::string key;
};

// Cantor pairing and its inverses; pair throws DomainError on overflow.
std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b);
std::uint64_t cantor_p0(std::uint64_t w);
std::uint64_t cantor_p1(std::uint64_t w);

using Env = std::map<std::string, std::uint64_t>;

// Throws DomainError on an unbound variable or 64-bit overflow.
std::uint64_t eval_term(const Term& t, const Env& env = {});
bool is_closed(const Term& t);
std::set<std::string> free_vars(const Term& t);
Term subst(const Term& t, const std::string& var, const Term& by);

// ---------------------------------------------------------------------------
// Formulas

struct FormulaNode;

// Formula in negation normal form.
class Formula {
 public:
  enum class Kind {
    kEq, kNeq, kLt, kNlt,   // arithmetic literals
    kFix, kNFix,            // I_op^{<stage}(t) and its complement
    kMem, kNMem,            // set variable atom X(t) and its complement
    kAnd, kOr,
    kExists, kForall,
    kBExists, kBForall,     // Q x<t
    kBigAnd, kBigOr,
  };

  Formula();  // 0=0
  static Formula eq(const Term& s, const Term& t);
  static Formula neq(const Term& s, const Term& t);
  static Formula lt(const Term& s, const Term& t);
  static Formula nlt(const Term& s, const Term& t);
  // A stage of Omega denotes the fixpoint itself.
  static Formula fix(const std::string& op, const PsiTerm& stage, const Term& t);
  static Formula nfix(const std::string& op, const PsiTerm& stage, const Term& t);
  static Formula fix(const std::string& op, const Term& t);
  static Formula nfix(const std::string& op, const Term& t);
  static Formula mem(const std::string& set, const Term& t);
  static Formula nmem(const std::string& set, const Term& t);
  static Formula conj(const Formula& a, const Formula& b);
  static Formula disj(const Formula& a, const Formula& b);
  static Formula exists(const std::string& x, const Formula& body);
  static Formula forall(const std::string& x, const Formula& body);
  static Formula bexists(const std::string& x, const Term& bound, const Formula& body);
  static Formula bforall(const std::string& x, const Term& bound, const Formula& body);
  static Formula big_and(std::vector<Formula> items);
  static Formula big_or(std::vector<Formula> items);
  // A -> B, written ~A | B.
  static Formula implies(const Formula& a, const Formula& b);

  Kind kind() const;
  bool is_literal() const;
  bool is_arith_literal() const;
  bool is_fix_atom() const;   // kFix or kNFix
  bool is_quantifier() const; // any of the four quantifier kinds
  bool is_binary() const;     // kAnd or kOr
  bool is_list() const;       // kBigAnd or kBigOr

  // Literal sides; for fix/mem atoms lhs() is the argument.
  const Term& lhs() const;
  const Term& rhs() const;
  const Term& bound() const;               // bounded quantifiers
  const std::string& name() const;         // operator, set variable or bound variable
  const PsiTerm& stage() const;            // fix atoms
  bool omega_stage() const;                // fix atom at stage Omega
  const std::vector<Formula>& kids() const;  // connectives and quantifier body
  const Formula& body() const;             // quantifier body

  const std::string& key() const;
  bool operator==(const Formula& o) const { return key() == o.key(); }
  bool operator!=(const Formula& o) const { return key() != o.key(); }
  bool operator<(const Formula& o) const { return key() < o.key(); }

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  static Formula make(FormulaNode n);
  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  Formula::Kind kind = Formula::Kind::kEq;
  Term t1;
  Term t2;
  std::string name;
  PsiTerm stage;
  bool omega = true;
  std::vector<Formula> kids;
  std::string key;
};

using Sequent = std::set<Formula>;

std::string to_string(const Term& t);
std::string to_string(const Formula& f);
std::string to_string(const Sequent& s);

Formula negate(const Formula& f);

std::set<std::string> free_vars(const Formula& f);
bool is_closed(const Formula& f);
// Capture-avoiding substitution of a term for a first-order variable.
Formula subst(const Formula& f, const std::string& var, const Term& by);
// Simultaneous substitution.
Formula subst(const Formula& f, const std::map<std::string, Term>& by);
// Variable name not in `used`, derived from `base`.
std::string fresh_var(const std::string& base, const std::set<std::string>& used);

// lambda u. body
struct Abstraction {
  std::string var;
  Formula body;
};
Formula apply(const Abstraction& a, const Term& t);
std::set<std::string> free_vars(const Abstraction& a);

// Replaces every set-variable atom X(s) by by(s) and ~X(s) by
// negate(by(s)); bound variables in `avoid` are renamed first.
Formula subst_set(const Formula& f, const std::string& set,
                  const std::function<Formula(const Term&)>& by,
                  const std::set<std::string>& avoid);

// Occurrence of the fixpoint atoms at stage Omega.
enum class Polarity { kAbsent, kPosOnly, kNegOnly, kBoth };
const char* to_string(Polarity p);
// Per operator name; stage-tagged atoms below Omega are ignored.
std::map<std::string, Polarity> polarity(const Formula& f);
// No complement atom at stage Omega.
bool is_positive(const Formula& f);
// No positive atom at stage Omega.
bool is_negative(const Formula& f);
bool has_omega_atom(const Formula& f);
bool has_fix_atom(const Formula& f);
bool has_set_var(const Formula& f, const std::string& set);
bool has_set_var(const Formula& f);
bool has_unbounded_quantifier(const Formula& f);
// Stage tags below Omega occurring in f.
std::vector<PsiTerm> stage_set(const Formula& f);
std::vector<PsiTerm> stage_set(const Sequent& s);

enum class ClassMode { kFinitary, kInfinitary };

struct ClassInfo {
  bool is_pos = false;
  bool is_neg = false;
  bool is_p_and_n = false;
  bool is_n_or_p = false;
  bool is_acc_formula = false;
  std::optional<unsigned> pi_rank_p;
  std::optional<unsigned> sigma_rank_p;
  std::optional<unsigned> pi_rank_omega;
  std::optional<unsigned> sigma_rank_omega;
};

// Ranks are the least k with membership in Pi0_k / Sigma0_k. In the
// finitary mode rank 0 is the bounded closure of positive and negative
// formulas; in the infinitary mode bounded quantifiers with closed bounds
// count as finite lists, so both modes agree on the rank 0 class. The
// Omega ranks take quantifier-free combinations of all atoms as rank 0.
ClassInfo classify(const Formula& f, ClassMode mode = ClassMode::kFinitary);

// 0 without Omega-stage atoms, else 1 + min(pi rank, sigma rank).
// Throws DomainError for formulas with free set variables.
unsigned dg(const Formula& f);

// Rewrites a rank 0 formula into the shape OR_i AND_j (~C_ij | D_ij) with
// C_ij, D_ij positive; here a single disjunct built from a clause normal
// form over the maximal positive and negative subformulas. Throws
// DomainError above rank 0 or when a bound is open.
Formula coerce_pi0(const Formula& f);

// Expands bounded quantifiers with closed bounds and evaluates closed
// terms to numerals; throws DomainError on free variables.
Formula ground_bounded(const Formula& f);

// Replaces every closed term by its numeral; bounded quantifiers stay.
Formula eval_closed_terms(const Formula& f);

// Replaces positive atoms I_op^{<Omega} by I_op^{<b}. With a mask, the
// i-th positive Omega atom in preorder is replaced only when mask[i].
Formula bound_positive(const Formula& f, const PsiTerm& b,
                       const std::vector<bool>* mask = nullptr);
// Number of positive Omega atoms, the length a mask addresses.
std::size_t count_positive_omega(const Formula& f);

// Evaluation hooks: `atom` decides fixpoint and set-variable atoms at a
// number; `universe`, when set, truncates unbounded quantifiers to
// [0, universe) and records that in `truncated`.
struct EvalContext {
  std::function<bool(const Formula& atom, std::uint64_t n)> atom;
  std::optional<std::uint64_t> universe;
  bool* truncated = nullptr;
};
// Throws DomainError when an atom or unbounded quantifier has no hook.
bool eval_formula(const Formula& f, const Env& env, const EvalContext& ctx);

// Truth of a closed formula without fixpoint or set atoms. Unbounded
// quantifiers make the value undecidable; returns nullopt then.
std::optional<bool> eval_arith(const Formula& f, const Env& env = {});

// ---------------------------------------------------------------------------
// Operators

struct AccShape {
  std::string y;
  Formula theta0;   // bounded arithmetic formula in x, y
  Term t0;          // term in x, y
};

struct OperatorEntry {
  std::string name;
  std::string var = "x";
  std::string setvar = "X";
  Formula body;
  std::optional<AccShape> acc;

  bool is_acc() const { return acc.has_value(); }
  bool mentions_set() const { return has_set_var(body, setvar); }
};

// Matches forall y (~theta0 | X(t0)) with theta0 bounded and arithmetic.
std::optional<AccShape> match_acc(const Formula& body, const std::string& var,
                                  const std::string& setvar);

// phi(sigma, t): body with x := t and X := sigma.
Formula instantiate(const OperatorEntry& op, const Abstraction& sigma, const Term& t);
// phi(I_op^{<stage}, t).
Formula instantiate_stage(const OperatorEntry& op, const PsiTerm& stage, const Term& t);
// phi(I_op^{<Omega}, t).
Formula instantiate_fix(const OperatorEntry& op, const Term& t);

// phi_sigma(x) = forall w (theta0(x, p0 w) -> sigma0(p1 w, t0(x, p0 w)))
// for sigma(u) = forall z sigma0(z, u) with sigma0 in Pi0_0(P).
// Throws DomainError on shape mismatches.
Abstraction phi_sigma(const OperatorEntry& op, const Abstraction& sigma);

class OperatorRegistry {
 public:
  // Throws DomainError when the body is not X-positive, mentions another
  // set variable or a fixpoint atom, has other free variables, or the name
  // repeats.
  void add(OperatorEntry e);
  const OperatorEntry* find(const std::string& name) const;
  const OperatorEntry& at(const std::string& name) const;
  const std::vector<OperatorEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<OperatorEntry> entries_;
};

// Fixpoint atom operators not in the registry, in first-occurrence order.
std::vector<std::string> unknown_operators(const Formula& f,
                                           const OperatorRegistry& reg);

}  // namespace ordcalc

#endif  // ORDCALC_FORMULA_HPP_
