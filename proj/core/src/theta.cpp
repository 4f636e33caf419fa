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

#include "ordcalc/theta.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

namespace ordcalc {

namespace {

const ThetaTerm& zero_term() {
  static const ThetaTerm z;
  return z;
}

const std::vector<ThetaMono>& no_monos() {
  static const std::vector<ThetaMono> v;
  return v;
}

// Uniform base-Omega view: theta(b) is the single monomial Omega^0 * theta(b).
struct MonoView {
  const ThetaTerm* exp;
  const ThetaTerm* coef;
  std::size_t ncoef;
};

std::size_t view_len(const ThetaTerm& t) {
  if (t.is_zero()) return 0;
  if (t.is_app()) return 1;
  return t.monos().size();
}

MonoView view_at(const ThetaTerm& t, std::size_t i) {
  if (t.is_app()) return {&zero_term(), &t, 1};
  const ThetaMono& m = t.monos()[i];
  return {&m.exp, m.coef.data(), m.coef.size()};
}

ThetaTerm coef_term(const std::vector<ThetaTerm>& coef) {
  if (coef.size() == 1) return coef[0];
  return ThetaTerm::sum({{ThetaTerm::zero(), coef}});
}

void collect_k(const ThetaTerm& t, std::vector<ThetaTerm>& out) {
  switch (t.kind()) {
    case ThetaTerm::Kind::kZero:
      return;
    case ThetaTerm::Kind::kApp:
      out.push_back(t);
      return;
    case ThetaTerm::Kind::kSum:
      for (const ThetaMono& m : t.monos()) {
        collect_k(m.exp, out);
        out.push_back(coef_term(m.coef));
      }
      return;
  }
}

Ord cmp_apps(const ThetaTerm& a, const ThetaTerm& b) {
  const ThetaTerm& alpha = a.arg();
  const ThetaTerm& beta = b.arg();
  Ord c = cmp_theta(alpha, beta);
  if (c == Ord::EQ) return Ord::EQ;
  if (c == Ord::LT) {
    std::vector<ThetaTerm> ka;
    collect_k(alpha, ka);
    bool all_below = std::all_of(ka.begin(), ka.end(),
                                 [&](const ThetaTerm& g) { return cmp_theta(g, b) == Ord::LT; });
    if (all_below) return Ord::LT;
  }
  std::vector<ThetaTerm> kb;
  collect_k(beta, kb);
  for (const ThetaTerm& d : kb)
    if (cmp_theta(a, d) != Ord::GT) return Ord::LT;
  return Ord::GT;
}

void validate_rec(const ThetaTerm& t, const std::string& path, Diagnostics& out) {
  switch (t.kind()) {
    case ThetaTerm::Kind::kZero:
      return;
    case ThetaTerm::Kind::kApp:
      validate_rec(t.arg(), path + ".arg", out);
      return;
    case ThetaTerm::Kind::kSum:
      break;
  }
  const auto& ms = t.monos();
  if (ms.empty()) {
    out.push_back({path, "sum without monomials"});
    return;
  }
  std::size_t before = out.size();
  for (std::size_t k = 0; k < ms.size(); ++k) {
    std::string mp = path + ".mono[" + std::to_string(k) + "]";
    validate_rec(ms[k].exp, mp + ".exp", out);
    if (ms[k].coef.empty()) out.push_back({mp + ".coef", "empty coefficient"});
    for (std::size_t i = 0; i < ms[k].coef.size(); ++i) {
      std::string cp = mp + ".coef[" + std::to_string(i) + "]";
      if (!ms[k].coef[i].is_app())
        out.push_back({cp, "coefficient summand is not a theta term"});
      else
        validate_rec(ms[k].coef[i], cp, out);
    }
  }
  if (out.size() != before) return;  // orderings need valid parts
  for (std::size_t k = 0; k < ms.size(); ++k) {
    std::string mp = path + ".mono[" + std::to_string(k) + "]";
    if (k + 1 < ms.size() && cmp_theta(ms[k].exp, ms[k + 1].exp) != Ord::GT)
      out.push_back({mp + ".exp", "exponents must strictly decrease"});
    for (std::size_t i = 0; i + 1 < ms[k].coef.size(); ++i)
      if (cmp_theta(ms[k].coef[i], ms[k].coef[i + 1]) == Ord::LT)
        out.push_back({mp + ".coef[" + std::to_string(i + 1) + "]",
                       "coefficient summands must weakly decrease"});
  }
  if (ms.size() == 1 && ms[0].exp.is_zero() && ms[0].coef.size() == 1)
    out.push_back({path, "lone monomial with exponent 0 needs n>1 or a longer coefficient; "
                         "write the theta term itself"});
}

std::vector<ThetaTerm> add_coef(const std::vector<ThetaTerm>& a, const std::vector<ThetaTerm>& b) {
  std::vector<ThetaTerm> r;
  for (const ThetaTerm& x : a) {
    if (cmp_theta(x, b.front()) == Ord::LT) break;
    r.push_back(x);
  }
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

std::vector<ThetaMono> monos_of(const ThetaTerm& t) {
  if (t.is_zero()) return {};
  if (t.is_app()) return {ThetaMono{ThetaTerm::zero(), {t}}};
  return t.monos();
}

ThetaTerm from_monos(std::vector<ThetaMono> ms) {
  if (ms.empty()) return ThetaTerm::zero();
  if (ms.size() == 1 && ms[0].exp.is_zero() && ms[0].coef.size() == 1) return ms[0].coef[0];
  std::vector<std::pair<ThetaTerm, std::vector<ThetaTerm>>> v;
  for (auto& m : ms) v.emplace_back(std::move(m.exp), std::move(m.coef));
  return ThetaTerm::sum(std::move(v));
}

// Memoised exact-size generation shared by all enumerations.
class Generator {
 public:
  const std::vector<ThetaTerm>& exact(std::size_t s) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return exact_locked(s);
  }

 private:
  const std::vector<ThetaTerm>& exact_locked(std::size_t s) {
    auto it = by_size_.find(s);
    if (it != by_size_.end()) return it->second;
    std::vector<ThetaTerm> out;
    if (s == 1) {
      out.push_back(ThetaTerm::zero());
    } else if (s >= 2) {
      for (const ThetaTerm& a : exact_locked(s - 1)) out.push_back(ThetaTerm::app(a));
      std::vector<ThetaMono> acc;
      sums(s - 1, nullptr, acc, out);
      std::vector<std::pair<std::string, ThetaTerm>> keyed;
      for (auto& t : out) keyed.emplace_back(theta_to_wire(t), t);
      std::sort(keyed.begin(), keyed.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      out.clear();
      for (auto& kv : keyed) out.push_back(kv.second);
    }
    return by_size_.emplace(s, std::move(out)).first->second;
  }

  // Weakly decreasing lists of theta terms with total size exactly s.
  const std::vector<std::vector<ThetaTerm>>& coef_lists(std::size_t s) {
    auto it = coefs_.find(s);
    if (it != coefs_.end()) return it->second;
    std::vector<std::vector<ThetaTerm>> out;
    for (std::size_t first = 2; first <= s; ++first) {
      for (const ThetaTerm& a : exact_locked(first - 1)) {
        ThetaTerm x = ThetaTerm::app(a);
        if (first == s) {
          out.push_back({x});
          continue;
        }
        for (const auto& rest : coef_lists(s - first)) {
          if (cmp_theta(x, rest.front()) == Ord::LT) continue;
          std::vector<ThetaTerm> l{x};
          l.insert(l.end(), rest.begin(), rest.end());
          out.push_back(std::move(l));
        }
      }
    }
    return coefs_.emplace(s, std::move(out)).first->second;
  }

  void sums(std::size_t remaining, const ThetaTerm* prev, std::vector<ThetaMono>& acc,
            std::vector<ThetaTerm>& out) {
    if (remaining == 0) {
      if (acc.empty()) return;
      if (acc.size() == 1 && acc[0].exp.is_zero() && acc[0].coef.size() == 1) return;
      out.push_back(from_raw(acc));
      return;
    }
    for (std::size_t se = 1; se + 2 <= remaining; ++se) {
      const std::vector<ThetaTerm>& exps = exact_locked(se);
      for (const ThetaTerm& e : exps) {
        if (prev && cmp_theta(e, *prev) != Ord::LT) continue;
        for (std::size_t sc = 2; se + sc <= remaining; ++sc) {
          const auto& lists = coef_lists(sc);
          for (const auto& l : lists) {
            acc.push_back(ThetaMono{e, l});
            sums(remaining - se - sc, &e, acc, out);
            acc.pop_back();
          }
        }
      }
    }
  }

  static ThetaTerm from_raw(const std::vector<ThetaMono>& ms) {
    std::vector<std::pair<ThetaTerm, std::vector<ThetaTerm>>> v;
    for (const auto& m : ms) v.emplace_back(m.exp, m.coef);
    return ThetaTerm::sum(std::move(v));
  }

  std::recursive_mutex mu_;
  std::map<std::size_t, std::vector<ThetaTerm>> by_size_;
  std::map<std::size_t, std::vector<std::vector<ThetaTerm>>> coefs_;
};

Generator& generator() {
  static Generator g;
  return g;
}

std::string pretty_arg(const ThetaTerm& t) {
  std::string s = pretty_theta(t);
  if (t.is_sum()) return "(" + s + ")";
  return s;
}

}  // namespace

ThetaTerm ThetaTerm::app(ThetaTerm arg) {
  auto n = std::make_shared<ThetaNode>();
  n->kind = Kind::kApp;
  n->arg = std::move(arg);
  return ThetaTerm(std::move(n));
}

ThetaTerm ThetaTerm::sum(std::vector<std::pair<ThetaTerm, std::vector<ThetaTerm>>> monos) {
  auto n = std::make_shared<ThetaNode>();
  n->kind = Kind::kSum;
  for (auto& [e, c] : monos) n->monos.push_back(ThetaMono{std::move(e), std::move(c)});
  return ThetaTerm(std::move(n));
}

ThetaTerm ThetaTerm::omega_const() {
  ThetaTerm one = app(zero());
  return sum({{one, {one}}});
}

ThetaTerm ThetaTerm::nat(unsigned n) {
  if (n == 0) return zero();
  ThetaTerm one = app(zero());
  if (n == 1) return one;
  return sum({{zero(), std::vector<ThetaTerm>(n, one)}});
}

ThetaTerm::Kind ThetaTerm::kind() const { return node_ ? node_->kind : Kind::kZero; }

const ThetaTerm& ThetaTerm::arg() const {
  if (!is_app()) throw DomainError("arg() on a non-theta term");
  return node_->arg;
}

const std::vector<ThetaMono>& ThetaTerm::monos() const {
  return is_sum() ? node_->monos : no_monos();
}

bool ThetaTerm::operator==(const ThetaTerm& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  if (is_app()) return arg() == o.arg();
  const auto& a = monos();
  const auto& b = o.monos();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i].exp == b[i].exp) || a[i].coef != b[i].coef) return false;
  return true;
}

std::size_t theta_size(const ThetaTerm& t) {
  switch (t.kind()) {
    case ThetaTerm::Kind::kZero: return 1;
    case ThetaTerm::Kind::kApp: return 1 + theta_size(t.arg());
    default: break;
  }
  std::size_t s = 1;
  for (const ThetaMono& m : t.monos()) {
    s += theta_size(m.exp);
    for (const ThetaTerm& c : m.coef) s += theta_size(c);
  }
  return s;
}

Diagnostics validate_theta(const ThetaTerm& t) {
  Diagnostics d;
  validate_rec(t, "$", d);
  return d;
}

bool is_valid_theta(const ThetaTerm& t) { return validate_theta(t).empty(); }

std::vector<ThetaTerm> k_set(const ThetaTerm& t) {
  std::vector<ThetaTerm> v;
  collect_k(t, v);
  std::sort(v.begin(), v.end(), theta_lt);
  v.erase(std::unique(v.begin(), v.end(),
                      [](const ThetaTerm& a, const ThetaTerm& b) { return cmp_theta(a, b) == Ord::EQ; }),
          v.end());
  return v;
}

Ord cmp_theta(const ThetaTerm& s, const ThetaTerm& t) {
  if (s.is_zero()) return t.is_zero() ? Ord::EQ : Ord::LT;
  if (t.is_zero()) return Ord::GT;
  if (s.is_app() && t.is_app()) return cmp_apps(s, t);
  std::size_t ns = view_len(s), nt = view_len(t);
  for (std::size_t i = 0; i < ns && i < nt; ++i) {
    MonoView a = view_at(s, i), b = view_at(t, i);
    if (Ord c = cmp_theta(*a.exp, *b.exp); c != Ord::EQ) return c;
    for (std::size_t j = 0; j < a.ncoef && j < b.ncoef; ++j)
      if (Ord c = cmp_theta(a.coef[j], b.coef[j]); c != Ord::EQ) return c;
    if (a.ncoef != b.ncoef) return a.ncoef < b.ncoef ? Ord::LT : Ord::GT;
  }
  if (ns == nt) return Ord::EQ;
  return ns < nt ? Ord::LT : Ord::GT;
}

ThetaTerm add_theta(const ThetaTerm& s, const ThetaTerm& t) {
  if (t.is_zero()) return s;
  if (s.is_zero()) return t;
  std::vector<ThetaMono> ms = monos_of(s), mt = monos_of(t);
  std::vector<ThetaMono> r;
  const ThetaTerm& lead = mt.front().exp;
  bool merged = false;
  for (const ThetaMono& m : ms) {
    Ord c = cmp_theta(m.exp, lead);
    if (c == Ord::GT) {
      r.push_back(m);
    } else {
      if (c == Ord::EQ) {
        r.push_back(ThetaMono{m.exp, add_coef(m.coef, mt.front().coef)});
        merged = true;
      }
      break;
    }
  }
  r.insert(r.end(), mt.begin() + (merged ? 1 : 0), mt.end());
  return from_monos(std::move(r));
}

bool is_countable_theta(const ThetaTerm& t) {
  switch (t.kind()) {
    case ThetaTerm::Kind::kZero: return true;
    case ThetaTerm::Kind::kApp: return is_countable_theta(t.arg());
    default: break;
  }
  for (const ThetaMono& m : t.monos()) {
    if (!m.exp.is_zero()) return false;
    for (const ThetaTerm& c : m.coef)
      if (!is_countable_theta(c)) return false;
  }
  return true;
}

Cnf eval_countable_theta(const ThetaTerm& t) {
  switch (t.kind()) {
    case ThetaTerm::Kind::kZero: return Cnf::zero();
    case ThetaTerm::Kind::kApp: return Cnf::omega_pow(eval_countable_theta(t.arg()));
    default: break;
  }
  Cnf r;
  for (const ThetaMono& m : t.monos()) {
    if (!m.exp.is_zero())
      throw DomainError("term has an Omega monomial: " + theta_to_wire(t));
    for (const ThetaTerm& c : m.coef) r = r + eval_countable_theta(c);
  }
  return r;
}

std::vector<ThetaTerm> enumerate_theta(std::size_t size_bound) {
  std::vector<ThetaTerm> out;
  for (std::size_t s = 1; s <= size_bound; ++s) {
    const auto& v = generator().exact(s);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

ThetaStream::ThetaStream(std::size_t size_bound) : items_(enumerate_theta(size_bound)) {}

std::optional<ThetaTerm> ThetaStream::next() {
  if (pos_ >= items_.size()) return std::nullopt;
  return items_[pos_++];
}

Sexpr theta_to_sexpr(const ThetaTerm& t) {
  switch (t.kind()) {
    case ThetaTerm::Kind::kZero: return Sexpr::make_atom("0");
    case ThetaTerm::Kind::kApp:
      return Sexpr::make_list({Sexpr::make_atom("v"), theta_to_sexpr(t.arg())});
    default: break;
  }
  std::vector<Sexpr> items{Sexpr::make_atom("sum")};
  for (const ThetaMono& m : t.monos()) {
    std::vector<Sexpr> cs{Sexpr::make_atom("cs")};
    for (const ThetaTerm& c : m.coef) cs.push_back(theta_to_sexpr(c));
    items.push_back(Sexpr::make_list(
        {Sexpr::make_atom("mono"), theta_to_sexpr(m.exp), Sexpr::make_list(std::move(cs))}));
  }
  return Sexpr::make_list(std::move(items));
}

std::string theta_to_wire(const ThetaTerm& t) { return theta_to_sexpr(t).str(); }

ThetaTerm theta_from_sexpr(const Sexpr& e) {
  if (e.is_atom) {
    if (e.atom == "0") return ThetaTerm::zero();
    throw ParseError("unknown theta atom '" + e.atom + "'");
  }
  if (e.is_form("v")) {
    if (e.items.size() != 2) throw ParseError("(v ARG) takes one argument");
    return ThetaTerm::app(theta_from_sexpr(e.items[1]));
  }
  if (e.is_form("sum")) {
    std::vector<std::pair<ThetaTerm, std::vector<ThetaTerm>>> monos;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const Sexpr& m = e.items[i];
      if (!m.is_form("mono") || m.items.size() != 3)
        throw ParseError("expected (mono EXP COEF), got " + m.str());
      const Sexpr& cs = m.items[2];
      if (!cs.is_form("cs")) throw ParseError("expected (cs ...), got " + cs.str());
      std::vector<ThetaTerm> coef;
      for (std::size_t j = 1; j < cs.items.size(); ++j) {
        if (!cs.items[j].is_form("v"))
          throw ParseError("coefficient summand must be (v ARG), got " + cs.items[j].str());
        coef.push_back(theta_from_sexpr(cs.items[j]));
      }
      monos.emplace_back(theta_from_sexpr(m.items[1]), std::move(coef));
    }
    return ThetaTerm::sum(std::move(monos));
  }
  throw ParseError("unknown theta form " + e.str());
}

ThetaTerm parse_theta(std::string_view text) { return theta_from_sexpr(parse_sexpr(text)); }

std::string pretty_theta(const ThetaTerm& t) {
  switch (t.kind()) {
    case ThetaTerm::Kind::kZero: return "0";
    case ThetaTerm::Kind::kApp: return "v(" + pretty_theta(t.arg()) + ")";
    default: break;
  }
  const ThetaTerm one = ThetaTerm::app(ThetaTerm::zero());
  std::string s;
  for (const ThetaMono& m : t.monos()) {
    if (!s.empty()) s += "+";
    std::string cs;
    for (const ThetaTerm& c : m.coef) cs += (cs.empty() ? "" : "+") + pretty_theta(c);
    if (m.exp.is_zero()) {
      s += cs;
      continue;
    }
    std::string base = m.exp == one ? "O" : "O^" + pretty_arg(m.exp);
    if (m.coef.size() == 1 && m.coef[0] == one) {
      s += base;
    } else {
      s += base + "·" + (m.coef.size() > 1 ? "(" + cs + ")" : cs);
    }
  }
  return s;
}

}  // namespace ordcalc
