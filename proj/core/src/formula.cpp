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

#include "ordcalc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <utility>

namespace ordcalc {

namespace {

constexpr std::uint64_t kMaxExpansion = 1u << 16;
constexpr std::size_t kMaxClauses = 4096;
constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (b > kMax - a) throw DomainError("arithmetic overflow");
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kMax / a) throw DomainError("arithmetic overflow");
  return a * b;
}

std::string term_key(const TermNode& n) {
  switch (n.kind) {
    case Term::Kind::kVar: return n.name;
    case Term::Kind::kNum: return std::to_string(n.value);
    case Term::Kind::kSucc: return "S(" + n.args[0].key() + ")";
    case Term::Kind::kAdd: return "(" + n.args[0].key() + "+" + n.args[1].key() + ")";
    case Term::Kind::kMul: return "(" + n.args[0].key() + "*" + n.args[1].key() + ")";
    case Term::Kind::kP0: return "p0(" + n.args[0].key() + ")";
    case Term::Kind::kP1: return "p1(" + n.args[0].key() + ")";
    case Term::Kind::kExp2: return "2^(" + n.args[0].key() + ")";
  }
  return "?";
}

}  // namespace

// ---------------------------------------------------------------------------
// Terms

Term::Term() {
  static const std::shared_ptr<const TermNode> zero = [] {
    auto n = std::make_shared<TermNode>();
    n->key = "0";
    return n;
  }();
  node_ = zero;
}

Term Term::make(TermNode n) {
  n.key = term_key(n);
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::var(const std::string& name) {
  if (name.empty()) throw DomainError("empty variable name");
  TermNode n;
  n.kind = Kind::kVar;
  n.name = name;
  return make(std::move(n));
}

Term Term::num(std::uint64_t v) {
  TermNode n;
  n.kind = Kind::kNum;
  n.value = v;
  return make(std::move(n));
}

Term Term::succ(const Term& t) {
  TermNode n;
  n.kind = Kind::kSucc;
  n.args = {t};
  return make(std::move(n));
}

Term Term::add(const Term& s, const Term& t) {
  TermNode n;
  n.kind = Kind::kAdd;
  n.args = {s, t};
  return make(std::move(n));
}

Term Term::mul(const Term& s, const Term& t) {
  TermNode n;
  n.kind = Kind::kMul;
  n.args = {s, t};
  return make(std::move(n));
}

Term Term::p0(const Term& t) {
  TermNode n;
  n.kind = Kind::kP0;
  n.args = {t};
  return make(std::move(n));
}

Term Term::p1(const Term& t) {
  TermNode n;
  n.kind = Kind::kP1;
  n.args = {t};
  return make(std::move(n));
}

Term Term::exp2(const Term& t) {
  TermNode n;
  n.kind = Kind::kExp2;
  n.args = {t};
  return make(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
std::uint64_t Term::value() const { return node_->value; }
const std::vector<Term>& Term::args() const { return node_->args; }
const std::string& Term::key() const { return node_->key; }

std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = checked_add(a, b);
  std::uint64_t s1 = checked_add(s, 1);
  std::uint64_t tri = (s % 2 == 0) ? checked_mul(s / 2, s1) : checked_mul(s, s1 / 2);
  return checked_add(tri, b);
}

namespace {

// Largest s with s(s+1)/2 <= w.
std::uint64_t tri_root(std::uint64_t w) {
  auto s = static_cast<std::uint64_t>(
      (std::sqrt(8.0L * static_cast<long double>(w) + 1.0L) - 1.0L) / 2.0L);
  auto tri = [](std::uint64_t k) -> long double {
    return static_cast<long double>(k) * static_cast<long double>(k + 1) / 2.0L;
  };
  while (s > 0 && tri(s) > static_cast<long double>(w)) --s;
  while (tri(s + 1) <= static_cast<long double>(w)) ++s;
  return s;
}

}  // namespace

std::uint64_t cantor_p1(std::uint64_t w) {
  std::uint64_t s = tri_root(w);
  std::uint64_t tri = (s % 2 == 0) ? (s / 2) * (s + 1) : s * ((s + 1) / 2);
  return w - tri;
}

std::uint64_t cantor_p0(std::uint64_t w) { return tri_root(w) - cantor_p1(w); }

std::uint64_t eval_term(const Term& t, const Env& env) {
  switch (t.kind()) {
    case Term::Kind::kVar: {
      auto it = env.find(t.name());
      if (it == env.end()) throw DomainError("unbound variable " + t.name());
      return it->second;
    }
    case Term::Kind::kNum: return t.value();
    case Term::Kind::kSucc: return checked_add(eval_term(t.args()[0], env), 1);
    case Term::Kind::kAdd:
      return checked_add(eval_term(t.args()[0], env), eval_term(t.args()[1], env));
    case Term::Kind::kMul:
      return checked_mul(eval_term(t.args()[0], env), eval_term(t.args()[1], env));
    case Term::Kind::kP0: return cantor_p0(eval_term(t.args()[0], env));
    case Term::Kind::kP1: return cantor_p1(eval_term(t.args()[0], env));
    case Term::Kind::kExp2: {
      std::uint64_t e = eval_term(t.args()[0], env);
      if (e >= 64) throw DomainError("arithmetic overflow");
      return std::uint64_t{1} << e;
    }
  }
  return 0;
}

namespace {

void term_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind() == Term::Kind::kVar) {
    out.insert(t.name());
    return;
  }
  for (const Term& a : t.args()) term_vars(a, out);
}

Term subst_term(const Term& t, const std::map<std::string, Term>& by) {
  switch (t.kind()) {
    case Term::Kind::kVar: {
      auto it = by.find(t.name());
      return it == by.end() ? t : it->second;
    }
    case Term::Kind::kNum: return t;
    case Term::Kind::kSucc: return Term::succ(subst_term(t.args()[0], by));
    case Term::Kind::kAdd:
      return Term::add(subst_term(t.args()[0], by), subst_term(t.args()[1], by));
    case Term::Kind::kMul:
      return Term::mul(subst_term(t.args()[0], by), subst_term(t.args()[1], by));
    case Term::Kind::kP0: return Term::p0(subst_term(t.args()[0], by));
    case Term::Kind::kP1: return Term::p1(subst_term(t.args()[0], by));
    case Term::Kind::kExp2: return Term::exp2(subst_term(t.args()[0], by));
  }
  return t;
}

}  // namespace

bool is_closed(const Term& t) { return free_vars(t).empty(); }

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  term_vars(t, out);
  return out;
}

Term subst(const Term& t, const std::string& var, const Term& by) {
  return subst_term(t, {{var, by}});
}

std::string to_string(const Term& t) { return t.key(); }

// ---------------------------------------------------------------------------
// Formulas

namespace {

using K = Formula::Kind;

std::string stage_text(const FormulaNode& n) {
  return n.omega ? std::string("Om") : psi_to_wire(n.stage);
}

std::string join(const std::vector<Formula>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].key();
  }
  return s;
}

std::string formula_key(const FormulaNode& n) {
  switch (n.kind) {
    case K::kEq: return n.t1.key() + "=" + n.t2.key();
    case K::kNeq: return n.t1.key() + "!=" + n.t2.key();
    case K::kLt: return n.t1.key() + "<" + n.t2.key();
    case K::kNlt: return n.t1.key() + "!<" + n.t2.key();
    case K::kFix: return "I_" + n.name + "^{<" + stage_text(n) + "}(" + n.t1.key() + ")";
    case K::kNFix: return "~I_" + n.name + "^{<" + stage_text(n) + "}(" + n.t1.key() + ")";
    case K::kMem: return n.name + "(" + n.t1.key() + ")";
    case K::kNMem: return "~" + n.name + "(" + n.t1.key() + ")";
    case K::kAnd: return "(" + n.kids[0].key() + " & " + n.kids[1].key() + ")";
    case K::kOr: return "(" + n.kids[0].key() + " | " + n.kids[1].key() + ")";
    case K::kExists: return "(exists " + n.name + ". " + n.kids[0].key() + ")";
    case K::kForall: return "(forall " + n.name + ". " + n.kids[0].key() + ")";
    case K::kBExists:
      return "(exists " + n.name + "<" + n.t1.key() + ". " + n.kids[0].key() + ")";
    case K::kBForall:
      return "(forall " + n.name + "<" + n.t1.key() + ". " + n.kids[0].key() + ")";
    case K::kBigAnd: return "AND[" + join(n.kids) + "]";
    case K::kBigOr: return "OR[" + join(n.kids) + "]";
  }
  return "?";
}

FormulaNode literal(K k, const Term& s, const Term& t) {
  FormulaNode n;
  n.kind = k;
  n.t1 = s;
  n.t2 = t;
  return n;
}

FormulaNode fix_node(K k, const std::string& op, const PsiTerm& stage, const Term& t) {
  if (op.empty()) throw DomainError("empty operator name");
  Ord c = cmp_psi_unchecked(stage, PsiTerm::omega_const());
  if (c == Ord::GT) throw DomainError("stage tag above Omega");
  FormulaNode n;
  n.kind = k;
  n.name = op;
  n.t1 = t;
  n.omega = c == Ord::EQ;
  n.stage = n.omega ? PsiTerm::omega_const() : stage;
  return n;
}

FormulaNode mem_node(K k, const std::string& set, const Term& t) {
  if (set.empty()) throw DomainError("empty set variable name");
  FormulaNode n;
  n.kind = k;
  n.name = set;
  n.t1 = t;
  return n;
}

FormulaNode quant(K k, const std::string& x, const Term& bound, const Formula& body) {
  if (x.empty()) throw DomainError("empty variable name");
  FormulaNode n;
  n.kind = k;
  n.name = x;
  n.t1 = bound;
  n.kids = {body};
  return n;
}

FormulaNode connective(K k, std::vector<Formula> kids) {
  FormulaNode n;
  n.kind = k;
  n.kids = std::move(kids);
  return n;
}

}  // namespace

Formula::Formula() {
  static const std::shared_ptr<const FormulaNode> zero = [] {
    auto n = std::make_shared<FormulaNode>(literal(K::kEq, Term(), Term()));
    n->key = formula_key(*n);
    return n;
  }();
  node_ = zero;
}

Formula Formula::make(FormulaNode n) {
  n.key = formula_key(n);
  return Formula(std::make_shared<const FormulaNode>(std::move(n)));
}

Formula Formula::eq(const Term& s, const Term& t) { return make(literal(K::kEq, s, t)); }
Formula Formula::neq(const Term& s, const Term& t) { return make(literal(K::kNeq, s, t)); }
Formula Formula::lt(const Term& s, const Term& t) { return make(literal(K::kLt, s, t)); }
Formula Formula::nlt(const Term& s, const Term& t) { return make(literal(K::kNlt, s, t)); }

Formula Formula::fix(const std::string& op, const PsiTerm& stage, const Term& t) {
  return make(fix_node(K::kFix, op, stage, t));
}
Formula Formula::nfix(const std::string& op, const PsiTerm& stage, const Term& t) {
  return make(fix_node(K::kNFix, op, stage, t));
}
Formula Formula::fix(const std::string& op, const Term& t) {
  return fix(op, PsiTerm::omega_const(), t);
}
Formula Formula::nfix(const std::string& op, const Term& t) {
  return nfix(op, PsiTerm::omega_const(), t);
}
Formula Formula::mem(const std::string& set, const Term& t) {
  return make(mem_node(K::kMem, set, t));
}
Formula Formula::nmem(const std::string& set, const Term& t) {
  return make(mem_node(K::kNMem, set, t));
}
Formula Formula::conj(const Formula& a, const Formula& b) {
  return make(connective(K::kAnd, {a, b}));
}
Formula Formula::disj(const Formula& a, const Formula& b) {
  return make(connective(K::kOr, {a, b}));
}
Formula Formula::exists(const std::string& x, const Formula& body) {
  return make(quant(K::kExists, x, Term(), body));
}
Formula Formula::forall(const std::string& x, const Formula& body) {
  return make(quant(K::kForall, x, Term(), body));
}
Formula Formula::bexists(const std::string& x, const Term& bound, const Formula& body) {
  return make(quant(K::kBExists, x, bound, body));
}
Formula Formula::bforall(const std::string& x, const Term& bound, const Formula& body) {
  return make(quant(K::kBForall, x, bound, body));
}
Formula Formula::big_and(std::vector<Formula> items) {
  return make(connective(K::kBigAnd, std::move(items)));
}
Formula Formula::big_or(std::vector<Formula> items) {
  return make(connective(K::kBigOr, std::move(items)));
}
Formula Formula::implies(const Formula& a, const Formula& b) {
  return disj(negate(a), b);
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_literal() const {
  switch (kind()) {
    case K::kEq: case K::kNeq: case K::kLt: case K::kNlt:
    case K::kFix: case K::kNFix: case K::kMem: case K::kNMem:
      return true;
    default:
      return false;
  }
}

bool Formula::is_arith_literal() const {
  K k = kind();
  return k == K::kEq || k == K::kNeq || k == K::kLt || k == K::kNlt;
}

bool Formula::is_fix_atom() const { return kind() == K::kFix || kind() == K::kNFix; }

bool Formula::is_quantifier() const {
  K k = kind();
  return k == K::kExists || k == K::kForall || k == K::kBExists || k == K::kBForall;
}

bool Formula::is_binary() const { return kind() == K::kAnd || kind() == K::kOr; }
bool Formula::is_list() const { return kind() == K::kBigAnd || kind() == K::kBigOr; }

const Term& Formula::lhs() const { return node_->t1; }
const Term& Formula::rhs() const { return node_->t2; }
const Term& Formula::bound() const { return node_->t1; }
const std::string& Formula::name() const { return node_->name; }
const PsiTerm& Formula::stage() const { return node_->stage; }
bool Formula::omega_stage() const { return is_fix_atom() && node_->omega; }
const std::vector<Formula>& Formula::kids() const { return node_->kids; }
const Formula& Formula::body() const { return node_->kids.at(0); }
const std::string& Formula::key() const { return node_->key; }

std::string to_string(const Formula& f) { return f.key(); }

std::string to_string(const Sequent& s) {
  std::string out = "{";
  bool first = true;
  for (const Formula& f : s) {
    if (!first) out += ", ";
    first = false;
    out += f.key();
  }
  return out + "}";
}

Formula negate(const Formula& f) {
  switch (f.kind()) {
    case K::kEq: return Formula::neq(f.lhs(), f.rhs());
    case K::kNeq: return Formula::eq(f.lhs(), f.rhs());
    case K::kLt: return Formula::nlt(f.lhs(), f.rhs());
    case K::kNlt: return Formula::lt(f.lhs(), f.rhs());
    case K::kFix: return Formula::nfix(f.name(), f.stage(), f.lhs());
    case K::kNFix: return Formula::fix(f.name(), f.stage(), f.lhs());
    case K::kMem: return Formula::nmem(f.name(), f.lhs());
    case K::kNMem: return Formula::mem(f.name(), f.lhs());
    case K::kAnd: return Formula::disj(negate(f.kids()[0]), negate(f.kids()[1]));
    case K::kOr: return Formula::conj(negate(f.kids()[0]), negate(f.kids()[1]));
    case K::kExists: return Formula::forall(f.name(), negate(f.body()));
    case K::kForall: return Formula::exists(f.name(), negate(f.body()));
    case K::kBExists: return Formula::bforall(f.name(), f.bound(), negate(f.body()));
    case K::kBForall: return Formula::bexists(f.name(), f.bound(), negate(f.body()));
    case K::kBigAnd:
    case K::kBigOr: {
      std::vector<Formula> items;
      items.reserve(f.kids().size());
      for (const Formula& k : f.kids()) items.push_back(negate(k));
      return f.kind() == K::kBigAnd ? Formula::big_or(std::move(items))
                                    : Formula::big_and(std::move(items));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Variables and substitution

namespace {

void formula_vars(const Formula& f, std::set<std::string>& out) {
  if (f.is_literal()) {
    term_vars(f.lhs(), out);
    if (f.is_arith_literal()) term_vars(f.rhs(), out);
    return;
  }
  if (f.is_quantifier()) {
    if (f.kind() == K::kBExists || f.kind() == K::kBForall) term_vars(f.bound(), out);
    std::set<std::string> inner;
    formula_vars(f.body(), inner);
    inner.erase(f.name());
    out.insert(inner.begin(), inner.end());
    return;
  }
  for (const Formula& k : f.kids()) formula_vars(k, out);
}

Formula rebuild_quant(const Formula& f, const std::string& x, const Term& bound,
                      const Formula& body) {
  switch (f.kind()) {
    case K::kExists: return Formula::exists(x, body);
    case K::kForall: return Formula::forall(x, body);
    case K::kBExists: return Formula::bexists(x, bound, body);
    default: return Formula::bforall(x, bound, body);
  }
}

Formula rebuild_kids(const Formula& f, std::vector<Formula> kids) {
  switch (f.kind()) {
    case K::kAnd: return Formula::conj(kids[0], kids[1]);
    case K::kOr: return Formula::disj(kids[0], kids[1]);
    case K::kBigAnd: return Formula::big_and(std::move(kids));
    default: return Formula::big_or(std::move(kids));
  }
}

Formula rebuild_literal(const Formula& f, const Term& a, const Term& b) {
  switch (f.kind()) {
    case K::kEq: return Formula::eq(a, b);
    case K::kNeq: return Formula::neq(a, b);
    case K::kLt: return Formula::lt(a, b);
    case K::kNlt: return Formula::nlt(a, b);
    case K::kFix: return Formula::fix(f.name(), f.stage(), a);
    case K::kNFix: return Formula::nfix(f.name(), f.stage(), a);
    case K::kMem: return Formula::mem(f.name(), a);
    default: return Formula::nmem(f.name(), a);
  }
}

Formula subst_rec(const Formula& f, const std::map<std::string, Term>& by) {
  if (by.empty()) return f;
  if (f.is_literal()) {
    Term a = subst_term(f.lhs(), by);
    Term b = f.is_arith_literal() ? subst_term(f.rhs(), by) : Term();
    return rebuild_literal(f, a, b);
  }
  if (f.is_quantifier()) {
    bool bounded = f.kind() == K::kBExists || f.kind() == K::kBForall;
    Term bound = bounded ? subst_term(f.bound(), by) : f.bound();
    std::set<std::string> body_fv = free_vars(f.body());
    std::map<std::string, Term> inner;
    std::set<std::string> incoming;
    for (const auto& [v, t] : by) {
      if (v == f.name() || !body_fv.count(v)) continue;
      inner.emplace(v, t);
      term_vars(t, incoming);
    }
    std::string x = f.name();
    if (incoming.count(x)) {
      std::set<std::string> used = body_fv;
      used.insert(incoming.begin(), incoming.end());
      for (const auto& [v, t] : inner) used.insert(v);
      x = fresh_var(f.name(), used);
      inner[f.name()] = Term::var(x);
    }
    return rebuild_quant(f, x, bound, subst_rec(f.body(), inner));
  }
  std::vector<Formula> kids;
  kids.reserve(f.kids().size());
  for (const Formula& k : f.kids()) kids.push_back(subst_rec(k, by));
  return rebuild_kids(f, std::move(kids));
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  formula_vars(f, out);
  return out;
}

bool is_closed(const Formula& f) { return free_vars(f).empty(); }

Formula subst(const Formula& f, const std::string& var, const Term& by) {
  return subst_rec(f, {{var, by}});
}

Formula subst(const Formula& f, const std::map<std::string, Term>& by) {
  return subst_rec(f, by);
}

std::string fresh_var(const std::string& base, const std::set<std::string>& used) {
  std::string stem = base.empty() ? "v" : base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) {
    stem.pop_back();
  }
  if (stem.empty()) stem = "v";
  if (!used.count(stem)) return stem;
  for (unsigned i = 1;; ++i) {
    std::string c = stem + std::to_string(i);
    if (!used.count(c)) return c;
  }
}

Formula apply(const Abstraction& a, const Term& t) { return subst(a.body, a.var, t); }

std::set<std::string> free_vars(const Abstraction& a) {
  std::set<std::string> fv = free_vars(a.body);
  fv.erase(a.var);
  return fv;
}

Formula subst_set(const Formula& f, const std::string& set,
                  const std::function<Formula(const Term&)>& by,
                  const std::set<std::string>& avoid) {
  if (f.kind() == K::kMem || f.kind() == K::kNMem) {
    if (f.name() != set) return f;
    Formula r = by(f.lhs());
    return f.kind() == K::kMem ? r : negate(r);
  }
  if (f.is_literal()) return f;
  if (f.is_quantifier()) {
    std::string x = f.name();
    Formula body = f.body();
    if (avoid.count(x)) {
      std::set<std::string> used = free_vars(body);
      used.insert(avoid.begin(), avoid.end());
      x = fresh_var(x, used);
      body = subst(body, f.name(), Term::var(x));
    }
    return rebuild_quant(f, x, f.bound(), subst_set(body, set, by, avoid));
  }
  std::vector<Formula> kids;
  kids.reserve(f.kids().size());
  for (const Formula& k : f.kids()) kids.push_back(subst_set(k, set, by, avoid));
  return rebuild_kids(f, std::move(kids));
}

// ---------------------------------------------------------------------------
// Occurrence analysis

const char* to_string(Polarity p) {
  switch (p) {
    case Polarity::kAbsent: return "absent";
    case Polarity::kPosOnly: return "pos_only";
    case Polarity::kNegOnly: return "neg_only";
    default: return "both";
  }
}

namespace {

template <typename Fn>
void visit(const Formula& f, const Fn& fn) {
  fn(f);
  for (const Formula& k : f.kids()) visit(k, fn);
}

template <typename Pred>
bool any_node(const Formula& f, const Pred& pred) {
  if (pred(f)) return true;
  for (const Formula& k : f.kids()) {
    if (any_node(k, pred)) return true;
  }
  return false;
}

}  // namespace

std::map<std::string, Polarity> polarity(const Formula& f) {
  std::map<std::string, std::pair<bool, bool>> seen;
  visit(f, [&](const Formula& g) {
    if (!g.omega_stage()) return;
    auto& e = seen[g.name()];
    (g.kind() == K::kFix ? e.first : e.second) = true;
  });
  std::map<std::string, Polarity> out;
  for (const auto& [op, pn] : seen) {
    out[op] = pn.first && pn.second ? Polarity::kBoth
              : pn.first            ? Polarity::kPosOnly
                                    : Polarity::kNegOnly;
  }
  return out;
}

bool is_positive(const Formula& f) {
  return !any_node(f, [](const Formula& g) {
    return g.kind() == K::kNFix && g.omega_stage();
  });
}

bool is_negative(const Formula& f) {
  return !any_node(f, [](const Formula& g) {
    return g.kind() == K::kFix && g.omega_stage();
  });
}

bool has_omega_atom(const Formula& f) {
  return any_node(f, [](const Formula& g) { return g.omega_stage(); });
}

bool has_fix_atom(const Formula& f) {
  return any_node(f, [](const Formula& g) { return g.is_fix_atom(); });
}

bool has_set_var(const Formula& f, const std::string& set) {
  return any_node(f, [&](const Formula& g) {
    return (g.kind() == K::kMem || g.kind() == K::kNMem) && g.name() == set;
  });
}

bool has_set_var(const Formula& f) {
  return any_node(f, [](const Formula& g) {
    return g.kind() == K::kMem || g.kind() == K::kNMem;
  });
}

bool has_unbounded_quantifier(const Formula& f) {
  return any_node(f, [](const Formula& g) {
    return g.kind() == K::kExists || g.kind() == K::kForall;
  });
}

namespace {

void sort_unique(std::vector<PsiTerm>& v) {
  std::sort(v.begin(), v.end(), psi_lt);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<PsiTerm> stage_set(const Formula& f) {
  std::vector<PsiTerm> out;
  visit(f, [&](const Formula& g) {
    if (g.is_fix_atom() && !g.omega_stage()) out.push_back(g.stage());
  });
  sort_unique(out);
  return out;
}

std::vector<PsiTerm> stage_set(const Sequent& s) {
  std::vector<PsiTerm> out;
  for (const Formula& f : s) {
    std::vector<PsiTerm> k = stage_set(f);
    out.insert(out.end(), k.begin(), k.end());
  }
  sort_unique(out);
  return out;
}

// ---------------------------------------------------------------------------
// Classes

namespace {

struct Rank {
  unsigned pi = 0;
  unsigned sigma = 0;
};

Rank tighten(Rank r) {
  r.pi = std::min(r.pi, r.sigma + 1);
  r.sigma = std::min(r.sigma, r.pi + 1);
  return r;
}

template <typename Base>
Rank rank_of(const Formula& f, const Base& base) {
  if (base(f)) return {0, 0};
  switch (f.kind()) {
    case K::kAnd: case K::kOr: case K::kBigAnd: case K::kBigOr: {
      Rank r;
      for (const Formula& k : f.kids()) {
        Rank c = rank_of(k, base);
        r.pi = std::max(r.pi, c.pi);
        r.sigma = std::max(r.sigma, c.sigma);
      }
      return tighten(r);
    }
    case K::kBExists: case K::kBForall:
      return rank_of(f.body(), base);
    case K::kForall: {
      Rank b = rank_of(f.body(), base);
      unsigned pi = std::max(1u, b.pi);
      return {pi, pi + 1};
    }
    case K::kExists: {
      Rank b = rank_of(f.body(), base);
      unsigned sigma = std::max(1u, b.sigma);
      return {sigma + 1, sigma};
    }
    default:
      return {0, 0};
  }
}

Rank rank_p(const Formula& f) {
  return rank_of(f, [](const Formula& g) { return is_positive(g) || is_negative(g); });
}

Rank rank_omega(const Formula& f) {
  return rank_of(f, [](const Formula& g) { return !has_unbounded_quantifier(g); });
}

bool is_bounded_arith(const Formula& f) {
  return !has_fix_atom(f) && !has_set_var(f) && !has_unbounded_quantifier(f);
}

bool is_positive_target(const Formula& f) {
  return f.kind() == K::kMem || (f.kind() == K::kFix && f.omega_stage());
}

// forall y (~theta0 | atom(t0)) with a positive set or fixpoint atom.
bool acc_like(const Formula& f) {
  if (f.kind() != K::kForall || f.body().kind() != K::kOr) return false;
  const auto& k = f.body().kids();
  for (int side = 0; side < 2; ++side) {
    if (is_positive_target(k[side]) && is_bounded_arith(k[1 - side])) return true;
  }
  return false;
}

Formula ground_rec(const Formula& f);

Term ground_term(const Term& t) {
  if (is_closed(t)) return Term::num(eval_term(t));
  switch (t.kind()) {
    case Term::Kind::kSucc: return Term::succ(ground_term(t.args()[0]));
    case Term::Kind::kAdd:
      return Term::add(ground_term(t.args()[0]), ground_term(t.args()[1]));
    case Term::Kind::kMul:
      return Term::mul(ground_term(t.args()[0]), ground_term(t.args()[1]));
    case Term::Kind::kP0: return Term::p0(ground_term(t.args()[0]));
    case Term::Kind::kP1: return Term::p1(ground_term(t.args()[0]));
    case Term::Kind::kExp2: return Term::exp2(ground_term(t.args()[0]));
    default: return t;
  }
}

Formula ground_rec(const Formula& f) {
  if (f.is_literal()) {
    Term a = ground_term(f.lhs());
    Term b = f.is_arith_literal() ? ground_term(f.rhs()) : Term();
    return rebuild_literal(f, a, b);
  }
  if (f.kind() == K::kBExists || f.kind() == K::kBForall) {
    Term bound = ground_term(f.bound());
    if (bound.kind() != Term::Kind::kNum) {
      return rebuild_quant(f, f.name(), bound, ground_rec(f.body()));
    }
    if (bound.value() > kMaxExpansion) throw DomainError("bounded quantifier too large to expand");
    std::vector<Formula> items;
    items.reserve(bound.value());
    for (std::uint64_t i = 0; i < bound.value(); ++i) {
      items.push_back(ground_rec(subst(f.body(), f.name(), Term::num(i))));
    }
    return f.kind() == K::kBExists ? Formula::big_or(std::move(items))
                                   : Formula::big_and(std::move(items));
  }
  if (f.is_quantifier()) return rebuild_quant(f, f.name(), f.bound(), ground_rec(f.body()));
  std::vector<Formula> kids;
  for (const Formula& k : f.kids()) kids.push_back(ground_rec(k));
  return rebuild_kids(f, std::move(kids));
}

}  // namespace

ClassInfo classify(const Formula& f, ClassMode mode) {
  Formula g = f;
  if (mode == ClassMode::kInfinitary && is_closed(f)) {
    try {
      g = ground_bounded(f);
    } catch (const DomainError&) {
      g = f;
    }
  }
  ClassInfo c;
  c.is_pos = is_positive(g);
  c.is_neg = is_negative(g);
  if (g.kind() == K::kAnd || g.kind() == K::kOr) {
    const Formula& a = g.kids()[0];
    const Formula& b = g.kids()[1];
    bool split = (is_positive(a) && is_negative(b)) || (is_negative(a) && is_positive(b));
    c.is_p_and_n = g.kind() == K::kAnd && split;
    c.is_n_or_p = g.kind() == K::kOr && split;
  }
  c.is_acc_formula = acc_like(g);
  if (!has_set_var(g)) {
    Rank p = rank_p(g);
    c.pi_rank_p = p.pi;
    c.sigma_rank_p = p.sigma;
  }
  Rank o = rank_omega(g);
  c.pi_rank_omega = o.pi;
  c.sigma_rank_omega = o.sigma;
  return c;
}

unsigned dg(const Formula& f) {
  if (has_set_var(f)) {
    throw DomainError("formula with a free set variable lies outside the hierarchy");
  }
  if (!has_omega_atom(f)) return 0;
  ClassInfo c = classify(f, ClassMode::kInfinitary);
  return 1 + std::min(*c.pi_rank_p, *c.sigma_rank_p);
}

namespace {

// Clause: disjunction of positive parts and negative parts.
struct Clause {
  std::vector<Formula> pos;
  std::vector<Formula> neg;
};

std::vector<Clause> clauses_of(const Formula& f) {
  if (is_positive(f)) return {Clause{{f}, {}}};
  if (is_negative(f)) return {Clause{{}, {f}}};
  switch (f.kind()) {
    case K::kAnd:
    case K::kBigAnd: {
      std::vector<Clause> out;
      for (const Formula& k : f.kids()) {
        std::vector<Clause> c = clauses_of(k);
        out.insert(out.end(), c.begin(), c.end());
        if (out.size() > kMaxClauses) throw DomainError("clause form too large");
      }
      return out;
    }
    case K::kOr:
    case K::kBigOr: {
      std::vector<Clause> acc = {Clause{}};
      for (const Formula& k : f.kids()) {
        std::vector<Clause> c = clauses_of(k);
        std::vector<Clause> next;
        for (const Clause& a : acc) {
          for (const Clause& b : c) {
            Clause m = a;
            m.pos.insert(m.pos.end(), b.pos.begin(), b.pos.end());
            m.neg.insert(m.neg.end(), b.neg.begin(), b.neg.end());
            next.push_back(std::move(m));
          }
        }
        if (next.size() > kMaxClauses) throw DomainError("clause form too large");
        acc = std::move(next);
      }
      return acc;
    }
    case K::kBExists:
    case K::kBForall: {
      Term bound = f.bound();
      if (!is_closed(bound)) throw DomainError("bounded quantifier with open bound");
      std::uint64_t n = eval_term(bound);
      if (n > kMaxExpansion) throw DomainError("bounded quantifier too large to expand");
      std::vector<Formula> items;
      for (std::uint64_t i = 0; i < n; ++i) {
        items.push_back(subst(f.body(), f.name(), Term::num(i)));
      }
      return clauses_of(f.kind() == K::kBExists ? Formula::big_or(std::move(items))
                                                : Formula::big_and(std::move(items)));
    }
    default:
      throw DomainError("formula is not in Pi0_0(P)");
  }
}

Formula single_or_list(std::vector<Formula> v, bool conj) {
  if (v.size() == 1) return v[0];
  return conj ? Formula::big_and(std::move(v)) : Formula::big_or(std::move(v));
}

}  // namespace

Formula coerce_pi0(const Formula& f) {
  if (has_set_var(f) || rank_p(f).pi != 0) {
    throw DomainError("formula is not in Pi0_0(P)");
  }
  std::vector<Formula> conjuncts;
  for (const Clause& c : clauses_of(f)) {
    std::vector<Formula> premise;
    for (const Formula& n : c.neg) premise.push_back(negate(n));
    Formula cf = single_or_list(std::move(premise), true);
    Formula df = single_or_list(c.pos, false);
    conjuncts.push_back(Formula::implies(cf, df));
  }
  return Formula::big_or({Formula::big_and(std::move(conjuncts))});
}

namespace {

Formula closed_terms_rec(const Formula& f) {
  if (f.is_literal()) {
    Term a = ground_term(f.lhs());
    Term b = f.is_arith_literal() ? ground_term(f.rhs()) : Term();
    return rebuild_literal(f, a, b);
  }
  if (f.is_quantifier()) {
    Term bound = f.bound();
    if (f.kind() == K::kBExists || f.kind() == K::kBForall) bound = ground_term(bound);
    return rebuild_quant(f, f.name(), bound, closed_terms_rec(f.body()));
  }
  std::vector<Formula> kids;
  for (const Formula& k : f.kids()) kids.push_back(closed_terms_rec(k));
  return rebuild_kids(f, std::move(kids));
}

}  // namespace

Formula eval_closed_terms(const Formula& f) { return closed_terms_rec(f); }

Formula ground_bounded(const Formula& f) {
  std::set<std::string> fv = free_vars(f);
  if (!fv.empty()) {
    std::string names;
    for (const std::string& v : fv) names += (names.empty() ? "" : ", ") + v;
    throw DomainError("open variables: " + names);
  }
  return ground_rec(f);
}

namespace {

Formula bound_rec(const Formula& f, const PsiTerm& b, const std::vector<bool>* mask,
                  std::size_t& index) {
  if (f.kind() == K::kFix && f.omega_stage()) {
    bool hit = mask == nullptr || (index < mask->size() && (*mask)[index]);
    ++index;
    return hit ? Formula::fix(f.name(), b, f.lhs()) : f;
  }
  if (f.is_literal()) return f;
  if (f.is_quantifier()) {
    return rebuild_quant(f, f.name(), f.bound(), bound_rec(f.body(), b, mask, index));
  }
  std::vector<Formula> kids;
  for (const Formula& k : f.kids()) kids.push_back(bound_rec(k, b, mask, index));
  return rebuild_kids(f, std::move(kids));
}

}  // namespace

Formula bound_positive(const Formula& f, const PsiTerm& b, const std::vector<bool>* mask) {
  std::size_t index = 0;
  return bound_rec(f, b, mask, index);
}

std::size_t count_positive_omega(const Formula& f) {
  std::size_t n = 0;
  visit(f, [&](const Formula& g) {
    if (g.kind() == K::kFix && g.omega_stage()) ++n;
  });
  return n;
}

// ---------------------------------------------------------------------------
// Evaluation

bool eval_formula(const Formula& f, const Env& env, const EvalContext& ctx) {
  switch (f.kind()) {
    case K::kEq: return eval_term(f.lhs(), env) == eval_term(f.rhs(), env);
    case K::kNeq: return eval_term(f.lhs(), env) != eval_term(f.rhs(), env);
    case K::kLt: return eval_term(f.lhs(), env) < eval_term(f.rhs(), env);
    case K::kNlt: return !(eval_term(f.lhs(), env) < eval_term(f.rhs(), env));
    case K::kFix: case K::kNFix: case K::kMem: case K::kNMem: {
      if (!ctx.atom) throw DomainError("no interpretation for atom " + f.key());
      bool v = ctx.atom(f, eval_term(f.lhs(), env));
      return (f.kind() == K::kFix || f.kind() == K::kMem) ? v : !v;
    }
    case K::kAnd:
      return eval_formula(f.kids()[0], env, ctx) && eval_formula(f.kids()[1], env, ctx);
    case K::kOr:
      return eval_formula(f.kids()[0], env, ctx) || eval_formula(f.kids()[1], env, ctx);
    case K::kBigAnd:
      for (const Formula& k : f.kids()) {
        if (!eval_formula(k, env, ctx)) return false;
      }
      return true;
    case K::kBigOr:
      for (const Formula& k : f.kids()) {
        if (eval_formula(k, env, ctx)) return true;
      }
      return false;
    case K::kExists: case K::kForall: case K::kBExists: case K::kBForall: {
      bool bounded = f.kind() == K::kBExists || f.kind() == K::kBForall;
      bool is_exists = f.kind() == K::kExists || f.kind() == K::kBExists;
      std::uint64_t n;
      if (bounded) {
        n = eval_term(f.bound(), env);
      } else {
        if (!ctx.universe) throw DomainError("unbounded quantifier cannot be decided");
        n = *ctx.universe;
        if (ctx.truncated) *ctx.truncated = true;
      }
      Env inner = env;
      for (std::uint64_t i = 0; i < n; ++i) {
        inner[f.name()] = i;
        bool v = eval_formula(f.body(), inner, ctx);
        if (v == is_exists) return is_exists;
      }
      return !is_exists;
    }
  }
  return false;
}

std::optional<bool> eval_arith(const Formula& f, const Env& env) {
  if (has_fix_atom(f) || has_set_var(f) || has_unbounded_quantifier(f)) return std::nullopt;
  try {
    return eval_formula(f, env, EvalContext{});
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Operators

std::optional<AccShape> match_acc(const Formula& body, const std::string& var,
                                  const std::string& setvar) {
  if (body.kind() != K::kForall || body.body().kind() != K::kOr) return std::nullopt;
  const std::string& y = body.name();
  if (y == var) return std::nullopt;
  const auto& k = body.body().kids();
  for (int side = 0; side < 2; ++side) {
    const Formula& atom = k[side];
    const Formula& rest = k[1 - side];
    if (atom.kind() != K::kMem || atom.name() != setvar) continue;
    if (!is_bounded_arith(rest)) continue;
    std::set<std::string> fv = free_vars(rest);
    std::set<std::string> tv = free_vars(atom.lhs());
    fv.insert(tv.begin(), tv.end());
    bool ok = std::all_of(fv.begin(), fv.end(),
                          [&](const std::string& v) { return v == var || v == y; });
    if (!ok) continue;
    return AccShape{y, negate(rest), atom.lhs()};
  }
  return std::nullopt;
}

Formula instantiate(const OperatorEntry& op, const Abstraction& sigma, const Term& t) {
  Formula body = subst(op.body, op.var, t);
  return subst_set(
      body, op.setvar, [&](const Term& s) { return apply(sigma, s); }, free_vars(sigma));
}

Formula instantiate_stage(const OperatorEntry& op, const PsiTerm& stage, const Term& t) {
  Formula body = subst(op.body, op.var, t);
  return subst_set(
      body, op.setvar, [&](const Term& s) { return Formula::fix(op.name, stage, s); }, {});
}

Formula instantiate_fix(const OperatorEntry& op, const Term& t) {
  return instantiate_stage(op, PsiTerm::omega_const(), t);
}

Abstraction phi_sigma(const OperatorEntry& op, const Abstraction& sigma) {
  if (!op.acc) throw DomainError("operator " + op.name + " is not an Acc operator");
  if (sigma.body.kind() != K::kForall) {
    throw DomainError("sigma is not universally quantified");
  }
  const std::string& z = sigma.body.name();
  const Formula& sigma0 = sigma.body.body();
  if (z == sigma.var) throw DomainError("sigma binds its own parameter");
  if (has_set_var(sigma0) || rank_p(sigma0).pi != 0) {
    throw DomainError("sigma0 is not in Pi0_0(P)");
  }
  const AccShape& acc = *op.acc;
  std::set<std::string> used = free_vars(sigma0);
  std::set<std::string> fv_theta = free_vars(acc.theta0);
  std::set<std::string> fv_t0 = free_vars(acc.t0);
  used.insert(fv_theta.begin(), fv_theta.end());
  used.insert(fv_t0.begin(), fv_t0.end());
  used.insert(op.var);
  used.insert(z);
  used.insert(sigma.var);
  std::string w = fresh_var("w", used);
  Term p0w = Term::p0(Term::var(w));
  Term p1w = Term::p1(Term::var(w));
  Formula theta = subst(acc.theta0, acc.y, p0w);
  Term t1 = subst(acc.t0, acc.y, p0w);
  Formula s0 = subst(sigma0, std::map<std::string, Term>{{z, p1w}, {sigma.var, t1}});
  return Abstraction{op.var, Formula::forall(w, Formula::implies(theta, s0))};
}

void OperatorRegistry::add(OperatorEntry e) {
  if (e.name.empty()) throw DomainError("operator without a name");
  if (find(e.name)) throw DomainError("duplicate operator " + e.name);
  bool bad_set = any_node(e.body, [&](const Formula& g) {
    return (g.kind() == K::kMem || g.kind() == K::kNMem) && g.name() != e.setvar;
  });
  if (bad_set) throw DomainError("operator " + e.name + " mentions a foreign set variable");
  bool negative = any_node(e.body, [&](const Formula& g) {
    return g.kind() == K::kNMem && g.name() == e.setvar;
  });
  if (negative) throw DomainError("operator " + e.name + " is not " + e.setvar + "-positive");
  if (has_fix_atom(e.body)) throw DomainError("operator " + e.name + " mentions a fixpoint atom");
  for (const std::string& v : free_vars(e.body)) {
    if (v != e.var) throw DomainError("operator " + e.name + " has free variable " + v);
  }
  e.acc = match_acc(e.body, e.var, e.setvar);
  entries_.push_back(std::move(e));
}

const OperatorEntry* OperatorRegistry::find(const std::string& name) const {
  for (const OperatorEntry& e : entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

const OperatorEntry& OperatorRegistry::at(const std::string& name) const {
  const OperatorEntry* e = find(name);
  if (!e) throw DomainError("unknown operator " + name);
  return *e;
}

std::vector<std::string> unknown_operators(const Formula& f, const OperatorRegistry& reg) {
  std::vector<std::string> out;
  visit(f, [&](const Formula& g) {
    if (g.is_fix_atom() && !reg.find(g.name()) &&
        std::find(out.begin(), out.end(), g.name()) == out.end()) {
      out.push_back(g.name());
    }
  });
  return out;
}

}  // namespace ordcalc
