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

#include "ordcalc/psi.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace ordcalc {

namespace {

const std::vector<PsiTerm>& no_items() {
  static const std::vector<PsiTerm> v;
  return v;
}

int rank(const PsiTerm& t) {
  switch (t.kind()) {
    case PsiTerm::Kind::kPsi: return 0;
    case PsiTerm::Kind::kOmega: return 1;
    default: return 2;
  }
}

Ord cmp_principal(const PsiTerm& a, const PsiTerm& b) {
  int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb ? Ord::LT : Ord::GT;
  if (a.kind() == PsiTerm::Kind::kOmega) return Ord::EQ;
  return cmp_psi_unchecked(a.sub(), b.sub());
}

std::size_t summand_count(const PsiTerm& t) {
  if (t.is_zero()) return 0;
  if (t.kind() == PsiTerm::Kind::kSum) return t.items().size();
  return 1;
}

const PsiTerm& summand(const PsiTerm& t, std::size_t i) {
  if (t.kind() == PsiTerm::Kind::kSum) return t.items()[i];
  return t;
}

std::vector<PsiTerm> summands(const PsiTerm& t) {
  if (t.is_zero()) return {};
  if (t.kind() == PsiTerm::Kind::kSum) return t.items();
  return {t};
}

PsiTerm from_summands(std::vector<PsiTerm> v) {
  if (v.empty()) return PsiTerm::zero();
  if (v.size() == 1) return v[0];
  return PsiTerm::raw_sum(std::move(v));
}

void collect_g(const PsiTerm& t, std::vector<PsiTerm>& out) {
  switch (t.kind()) {
    case PsiTerm::Kind::kZero:
    case PsiTerm::Kind::kOmega:
      return;
    case PsiTerm::Kind::kPsi:
      out.push_back(t.sub());
      collect_g(t.sub(), out);
      return;
    case PsiTerm::Kind::kOmegaPow:
      collect_g(t.sub(), out);
      return;
    case PsiTerm::Kind::kSum:
      for (const PsiTerm& s : t.items()) collect_g(s, out);
      return;
  }
}

void validate_rec(const PsiTerm& t, const std::string& path, Diagnostics& out) {
  switch (t.kind()) {
    case PsiTerm::Kind::kZero:
    case PsiTerm::Kind::kOmega:
      return;
    case PsiTerm::Kind::kPsi:
      validate_rec(t.sub(), path + ".arg", out);
      return;
    case PsiTerm::Kind::kOmegaPow: {
      std::size_t before = out.size();
      validate_rec(t.sub(), path + ".exp", out);
      if (out.size() == before && cmp_psi_unchecked(t.sub(), PsiTerm::omega_const()) != Ord::GT)
        out.push_back({path, "exponent of w must exceed Omega"});
      return;
    }
    case PsiTerm::Kind::kSum:
      break;
  }
  const auto& xs = t.items();
  if (xs.size() < 2) out.push_back({path, "sum needs at least two summands"});
  std::size_t before = out.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::string p = path + ".item[" + std::to_string(i) + "]";
    if (!xs[i].is_principal())
      out.push_back({p, "summand must be Omega, w^b or psi(a)"});
    else
      validate_rec(xs[i], p, out);
  }
  if (out.size() != before) return;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (cmp_principal(xs[i], xs[i + 1]) == Ord::LT)
      out.push_back({path + ".item[" + std::to_string(i + 1) + "]",
                     "summands must weakly decrease"});
}

bool nf_rec(const PsiTerm& t) {
  switch (t.kind()) {
    case PsiTerm::Kind::kZero:
    case PsiTerm::Kind::kOmega:
      return true;
    case PsiTerm::Kind::kOmegaPow:
      return nf_rec(t.sub());
    case PsiTerm::Kind::kSum:
      return std::all_of(t.items().begin(), t.items().end(), nf_rec);
    case PsiTerm::Kind::kPsi:
      break;
  }
  const PsiTerm& a = t.sub();
  if (!nf_rec(a)) return false;
  std::vector<PsiTerm> g;
  collect_g(a, g);
  return std::all_of(g.begin(), g.end(),
                     [&](const PsiTerm& x) { return cmp_psi_unchecked(x, a) == Ord::LT; });
}

class Generator {
 public:
  const std::vector<PsiTerm>& exact(std::size_t s) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return exact_locked(s);
  }

 private:
  // All grammatical terms of size s (not yet filtered for normal form).
  const std::vector<PsiTerm>& exact_locked(std::size_t s) {
    auto it = by_size_.find(s);
    if (it != by_size_.end()) return it->second;
    std::vector<PsiTerm> out;
    if (s == 1) {
      out.push_back(PsiTerm::zero());
      out.push_back(PsiTerm::omega_const());
    } else if (s >= 2) {
      for (const PsiTerm& a : principals(s)) out.push_back(a);
      std::vector<PsiTerm> acc;
      sums(s - 1, acc, out);
      std::vector<std::pair<std::string, PsiTerm>> keyed;
      for (auto& t : out) keyed.emplace_back(psi_to_wire(t), t);
      std::sort(keyed.begin(), keyed.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      out.clear();
      for (auto& kv : keyed) out.push_back(kv.second);
    }
    return by_size_.emplace(s, std::move(out)).first->second;
  }

  const std::vector<PsiTerm>& principals(std::size_t s) {
    auto it = principals_.find(s);
    if (it != principals_.end()) return it->second;
    std::vector<PsiTerm> out;
    if (s == 1) {
      out.push_back(PsiTerm::omega_const());
    } else {
      const PsiTerm om = PsiTerm::omega_const();
      for (const PsiTerm& a : exact_locked(s - 1)) {
        if (!nf_rec(a)) continue;
        PsiTerm p = PsiTerm::raw_psi(a);
        if (nf_rec(p)) out.push_back(p);
        if (cmp_psi_unchecked(a, om) == Ord::GT) out.push_back(PsiTerm::raw_pow(a));
      }
    }
    return principals_.emplace(s, std::move(out)).first->second;
  }

  void sums(std::size_t remaining, std::vector<PsiTerm>& acc, std::vector<PsiTerm>& out) {
    if (remaining == 0) {
      if (acc.size() >= 2) out.push_back(PsiTerm::raw_sum(acc));
      return;
    }
    for (std::size_t s = 1; s <= remaining; ++s) {
      for (const PsiTerm& p : principals(s)) {
        if (!acc.empty() && cmp_principal(p, acc.back()) == Ord::GT) continue;
        acc.push_back(p);
        sums(remaining - s, acc, out);
        acc.pop_back();
      }
    }
  }

  std::recursive_mutex mu_;
  std::map<std::size_t, std::vector<PsiTerm>> by_size_;
  std::map<std::size_t, std::vector<PsiTerm>> principals_;
};

Generator& generator() {
  static Generator g;
  return g;
}

std::string pretty_sub(const PsiTerm& t) {
  std::string s = pretty_psi(t);
  return t.kind() == PsiTerm::Kind::kSum ? "(" + s + ")" : s;
}

}  // namespace

PsiTerm PsiTerm::omega_const() {
  static const PsiTerm om = [] {
    auto n = std::make_shared<PsiNode>();
    n->kind = Kind::kOmega;
    return PsiTerm(std::move(n));
  }();
  return om;
}

PsiTerm PsiTerm::raw_pow(PsiTerm exp) {
  auto n = std::make_shared<PsiNode>();
  n->kind = Kind::kOmegaPow;
  n->sub = std::move(exp);
  return PsiTerm(std::move(n));
}

PsiTerm PsiTerm::raw_psi(PsiTerm arg) {
  auto n = std::make_shared<PsiNode>();
  n->kind = Kind::kPsi;
  n->sub = std::move(arg);
  return PsiTerm(std::move(n));
}

PsiTerm PsiTerm::raw_sum(std::vector<PsiTerm> items) {
  auto n = std::make_shared<PsiNode>();
  n->kind = Kind::kSum;
  n->items = std::move(items);
  return PsiTerm(std::move(n));
}

PsiTerm::Kind PsiTerm::kind() const { return node_ ? node_->kind : Kind::kZero; }

bool PsiTerm::is_principal() const {
  Kind k = kind();
  return k == Kind::kOmega || k == Kind::kOmegaPow || k == Kind::kPsi;
}

const PsiTerm& PsiTerm::sub() const {
  if (kind() != Kind::kOmegaPow && kind() != Kind::kPsi)
    throw DomainError("sub() on a term without argument");
  return node_->sub;
}

const std::vector<PsiTerm>& PsiTerm::items() const {
  return kind() == Kind::kSum ? node_->items : no_items();
}

bool PsiTerm::operator==(const PsiTerm& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::kZero:
    case Kind::kOmega:
      return true;
    case Kind::kOmegaPow:
    case Kind::kPsi:
      return sub() == o.sub();
    case Kind::kSum:
      return items() == o.items();
  }
  return false;
}

std::size_t psi_size(const PsiTerm& t) {
  switch (t.kind()) {
    case PsiTerm::Kind::kZero:
    case PsiTerm::Kind::kOmega:
      return 1;
    case PsiTerm::Kind::kOmegaPow:
    case PsiTerm::Kind::kPsi:
      return 1 + psi_size(t.sub());
    case PsiTerm::Kind::kSum:
      break;
  }
  std::size_t s = 1;
  for (const PsiTerm& x : t.items()) s += psi_size(x);
  return s;
}

Diagnostics validate_psi(const PsiTerm& t) {
  Diagnostics d;
  validate_rec(t, "$", d);
  return d;
}

std::vector<PsiTerm> g_set(const PsiTerm& t) {
  std::vector<PsiTerm> g;
  collect_g(t, g);
  std::sort(g.begin(), g.end(), psi_lt);
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

bool is_nf(const PsiTerm& t) { return nf_rec(t); }

Ord cmp_psi_unchecked(const PsiTerm& s, const PsiTerm& t) {
  std::size_t ns = summand_count(s), nt = summand_count(t);
  for (std::size_t i = 0; i < ns && i < nt; ++i)
    if (Ord c = cmp_principal(summand(s, i), summand(t, i)); c != Ord::EQ) return c;
  if (ns == nt) return Ord::EQ;
  return ns < nt ? Ord::LT : Ord::GT;
}

Ord cmp_psi(const PsiTerm& s, const PsiTerm& t) {
  for (const PsiTerm* x : {&s, &t}) {
    Diagnostics d = validate_psi(*x);
    if (!d.empty())
      throw DomainError("invalid term " + psi_to_wire(*x) + ": " + d[0].path + ": " + d[0].message);
    if (!is_nf(*x)) throw DomainError("term not in normal form: " + psi_to_wire(*x));
  }
  return cmp_psi_unchecked(s, t);
}

PsiTerm add_psi(const PsiTerm& s, const PsiTerm& t) {
  if (t.is_zero()) return s;
  if (s.is_zero()) return t;
  std::vector<PsiTerm> r;
  const PsiTerm& lead = summand(t, 0);
  for (std::size_t i = 0; i < summand_count(s); ++i) {
    if (cmp_principal(summand(s, i), lead) == Ord::LT) break;
    r.push_back(summand(s, i));
  }
  for (const PsiTerm& x : summands(t)) r.push_back(x);
  return from_summands(std::move(r));
}

PsiTerm omega_pow(const PsiTerm& e) {
  if (cmp_psi_unchecked(e, PsiTerm::omega_const()) != Ord::GT)
    throw DomainError("w^b needs b > Omega, got " + psi_to_wire(e));
  return PsiTerm::raw_pow(e);
}

PsiTerm omega_pow_above(const PsiTerm& e) {
  if (e == PsiTerm::omega_const()) return e;
  return omega_pow(e);
}

PsiTerm countable_omega_pow(const PsiTerm& a) {
  if (!is_countable_psi(a)) throw DomainError("exponent is not countable: " + psi_to_wire(a));
  return PsiTerm::raw_psi(a);
}

PsiTerm psi_app(const PsiTerm& a) {
  Diagnostics d = validate_psi(a);
  if (!d.empty()) throw DomainError("invalid psi argument: " + d[0].path + ": " + d[0].message);
  return PsiTerm::raw_psi(a);
}

PsiTerm psi_nat(unsigned n) {
  std::vector<PsiTerm> v(n, PsiTerm::raw_psi(PsiTerm::zero()));
  return from_summands(std::move(v));
}

PsiTerm psi_max(const PsiTerm& a, const PsiTerm& b) {
  return cmp_psi_unchecked(a, b) == Ord::LT ? b : a;
}

bool h_member(const PsiTerm& gamma, const std::vector<PsiTerm>& x, const PsiTerm& t) {
  if (t.is_zero() || t.kind() == PsiTerm::Kind::kOmega) return true;
  for (const PsiTerm& y : x)
    if (cmp_psi_unchecked(y, t) == Ord::EQ) return true;
  switch (t.kind()) {
    case PsiTerm::Kind::kSum:
      return std::all_of(t.items().begin(), t.items().end(),
                         [&](const PsiTerm& s) { return h_member(gamma, x, s); });
    case PsiTerm::Kind::kOmegaPow:
      return cmp_psi_unchecked(t.sub(), PsiTerm::omega_const()) == Ord::GT &&
             h_member(gamma, x, t.sub());
    case PsiTerm::Kind::kPsi:
      return cmp_psi_unchecked(t.sub(), gamma) == Ord::LT && h_member(gamma, x, t.sub());
    default:
      return false;
  }
}

PsiTerm hat(const PsiTerm& gamma, const PsiTerm& a) {
  return add_psi(gamma, omega_pow_above(add_psi(PsiTerm::omega_const(), a)));
}

CollapseSteps collapse_steps(const PsiTerm& gamma, const PsiTerm& a0, unsigned m) {
  if (m == 0) throw DomainError("collapse_steps needs m >= 1");
  PsiTerm w = omega_pow_above(add_psi(PsiTerm::omega_const(), a0));
  PsiTerm b = gamma;
  for (unsigned i = 0; i < m; ++i) b = add_psi(b, w);
  return CollapseSteps{gamma, a0, m, b, psi_app(b)};
}

bool is_countable_psi(const PsiTerm& t) {
  switch (t.kind()) {
    case PsiTerm::Kind::kZero: return true;
    case PsiTerm::Kind::kPsi: return is_countable_psi(t.sub());
    case PsiTerm::Kind::kSum:
      return std::all_of(t.items().begin(), t.items().end(), is_countable_psi);
    default: return false;
  }
}

Cnf eval_countable_psi(const PsiTerm& t) {
  switch (t.kind()) {
    case PsiTerm::Kind::kZero: return Cnf::zero();
    case PsiTerm::Kind::kPsi: return Cnf::omega_pow(eval_countable_psi(t.sub()));
    case PsiTerm::Kind::kSum: {
      Cnf r;
      for (const PsiTerm& x : t.items()) r = r + eval_countable_psi(x);
      return r;
    }
    default:
      throw DomainError("term is not countable: " + psi_to_wire(t));
  }
}

std::vector<PsiTerm> enumerate_psi(std::size_t size_bound) {
  std::vector<PsiTerm> out;
  for (std::size_t s = 1; s <= size_bound; ++s)
    for (const PsiTerm& t : generator().exact(s))
      if (validate_psi(t).empty() && is_nf(t)) out.push_back(t);
  return out;
}

Sexpr psi_to_sexpr(const PsiTerm& t) {
  switch (t.kind()) {
    case PsiTerm::Kind::kZero: return Sexpr::make_atom("0");
    case PsiTerm::Kind::kOmega: return Sexpr::make_atom("Om");
    case PsiTerm::Kind::kOmegaPow:
      return Sexpr::make_list({Sexpr::make_atom("w"), psi_to_sexpr(t.sub())});
    case PsiTerm::Kind::kPsi:
      return Sexpr::make_list({Sexpr::make_atom("p"), psi_to_sexpr(t.sub())});
    case PsiTerm::Kind::kSum:
      break;
  }
  std::vector<Sexpr> xs{Sexpr::make_atom("sum")};
  for (const PsiTerm& x : t.items()) xs.push_back(psi_to_sexpr(x));
  return Sexpr::make_list(std::move(xs));
}

std::string psi_to_wire(const PsiTerm& t) { return psi_to_sexpr(t).str(); }

PsiTerm psi_from_sexpr(const Sexpr& e) {
  if (e.is_atom) {
    if (e.atom == "0") return PsiTerm::zero();
    if (e.atom == "Om") return PsiTerm::omega_const();
    throw ParseError("unknown psi atom '" + e.atom + "'");
  }
  if (e.is_form("w") || e.is_form("p")) {
    if (e.items.size() != 2) throw ParseError(e.items[0].atom + " takes one argument");
    PsiTerm a = psi_from_sexpr(e.items[1]);
    return e.is_form("w") ? PsiTerm::raw_pow(a) : PsiTerm::raw_psi(a);
  }
  if (e.is_form("sum")) {
    std::vector<PsiTerm> xs;
    for (std::size_t i = 1; i < e.items.size(); ++i) xs.push_back(psi_from_sexpr(e.items[i]));
    return PsiTerm::raw_sum(std::move(xs));
  }
  throw ParseError("unknown psi form " + e.str());
}

PsiTerm parse_psi(std::string_view text) { return psi_from_sexpr(parse_sexpr(text)); }

std::string pretty_psi(const PsiTerm& t) {
  switch (t.kind()) {
    case PsiTerm::Kind::kZero: return "0";
    case PsiTerm::Kind::kOmega: return "Om";
    case PsiTerm::Kind::kOmegaPow: return "w^" + pretty_sub(t.sub());
    case PsiTerm::Kind::kPsi: return "p(" + pretty_psi(t.sub()) + ")";
    case PsiTerm::Kind::kSum: break;
  }
  std::string s;
  for (const PsiTerm& x : t.items()) s += (s.empty() ? "" : "+") + pretty_psi(x);
  return s;
}

}  // namespace ordcalc
