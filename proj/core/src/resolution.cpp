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

#include "ordcalc/resolution.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <tuple>

namespace ordcalc {

bool DLit::operator<(const DLit& o) const {
  return std::tuple(index, kind, !positive, dec) < std::tuple(o.index, o.kind, !o.positive, o.dec);
}

DLit lit_c(unsigned i, unsigned dec) { return {DLit::Kind::kC, i, true, dec}; }
DLit lit_cbar(unsigned i, unsigned dec) { return {DLit::Kind::kC, i, false, dec}; }
DLit lit_d(unsigned i, unsigned dec) { return {DLit::Kind::kD, i, true, dec}; }
DLit lit_dbar(unsigned i, unsigned dec) { return {DLit::Kind::kD, i, false, dec}; }

std::string to_string(const DLit& l) {
  std::string s = l.positive ? "" : "~";
  s += l.kind == DLit::Kind::kC ? 'C' : 'D';
  s += std::to_string(l.index);
  if (l.dec) s += "^" + std::to_string(l.dec);
  return s;
}

DLit parse_dlit(const std::string& s) {
  std::size_t i = 0;
  DLit l;
  if (i < s.size() && s[i] == '~') {
    l.positive = false;
    ++i;
  }
  if (i >= s.size() || (s[i] != 'C' && s[i] != 'D')) {
    throw ParseError("literal \"" + s + "\": expected C or D");
  }
  l.kind = s[i] == 'C' ? DLit::Kind::kC : DLit::Kind::kD;
  ++i;
  auto number = [&](const char* what) {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i || i - start > 9) throw ParseError("literal \"" + s + "\": bad " + what);
    return static_cast<unsigned>(std::stoul(s.substr(start, i - start)));
  };
  l.index = number("index");
  if (i < s.size() && s[i] == '^') {
    ++i;
    l.dec = number("decoration");
    if (l.dec == 0) throw ParseError("literal \"" + s + "\": decorations start at 1");
  }
  if (i != s.size()) throw ParseError("literal \"" + s + "\": trailing characters");
  return l;
}

std::string to_string(const DClause& c) {
  if (c.empty()) return "[]";
  std::string s;
  for (const DLit& l : c) s += (s.empty() ? "" : ", ") + to_string(l);
  return s;
}

ClauseFamilies gen_clauses(unsigned n) {
  if (n == 0) throw DomainError("clause families need n >= 1");
  if (n > 20) throw DomainError("clause families are limited to n <= 20");
  ClauseFamilies f;
  f.n = n;
  for (unsigned i = 0; i < n; ++i) f.units.push_back({lit_c(i), lit_dbar(i)});
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << n); ++p) {
    DClause c;
    for (unsigned i = 0; i < n; ++i) c.push_back(((p >> i) & 1) ? lit_cbar(i) : lit_d(i));
    f.partitions.push_back(std::move(c));
  }
  return f;
}

DNode unit_leaf(DClause c) {
  DNode d;
  d.kind = DNode::Kind::kUnit;
  d.clause = std::move(c);
  return d;
}

DNode partition_leaf(DClause c) {
  DNode d;
  d.kind = DNode::Kind::kPartition;
  d.clause = std::move(c);
  return d;
}

namespace {

std::optional<std::size_t> find_lit(const DClause& c, const DLit& l) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == l) return i;
  }
  return std::nullopt;
}

}  // namespace

DNode resolve(DNode left, std::size_t i, DNode right, std::size_t j) {
  if (i >= left.clause.size() || j >= right.clause.size()) {
    throw DomainError("resolution position out of range");
  }
  const DLit& a = left.clause[i];
  const DLit& b = right.clause[j];
  if (!a.complementary(b)) {
    throw DomainError("resolution on non-complementary " + to_string(a) + " and " + to_string(b));
  }
  DNode d;
  d.kind = DNode::Kind::kResolve;
  d.cut[0] = i;
  d.cut[1] = j;
  const DNode* prem[2] = {&left, &right};
  for (unsigned side = 0; side < 2; ++side) {
    for (std::size_t k = 0; k < prem[side]->clause.size(); ++k) {
      if (k == d.cut[side]) continue;
      const DLit& l = prem[side]->clause[k];
      std::optional<std::size_t> at = find_lit(d.clause, l);
      if (!at) {
        at = d.clause.size();
        d.clause.push_back(l);
      }
      d.links.push_back({*at, side, k});
    }
  }
  d.premises.push_back(std::move(left));
  d.premises.push_back(std::move(right));
  return d;
}

DNode resolve_on(DNode left, DNode right, const DLit& l) {
  DLit comp = l;
  comp.positive = !l.positive;
  if (auto i = find_lit(left.clause, l)) {
    if (auto j = find_lit(right.clause, comp)) {
      return resolve(std::move(left), *i, std::move(right), *j);
    }
  }
  if (auto i = find_lit(left.clause, comp)) {
    if (auto j = find_lit(right.clause, l)) {
      return resolve(std::move(left), *i, std::move(right), *j);
    }
  }
  throw DomainError("no complementary pair on " + to_string(l));
}

unsigned leaf_level(const DNode& leaf) {
  unsigned top_k = 0;
  unsigned top_m = 0;
  bool any_m = false;
  for (const DLit& l : leaf.clause) {
    if (leaf.kind == DNode::Kind::kUnit) {
      if (l.kind == DLit::Kind::kC) top_k = std::max(top_k, l.dec);
      continue;
    }
    if (l.positive) {
      top_k = std::max(top_k, l.dec);
    } else {
      top_m = std::max(top_m, l.dec);
      any_m = true;
    }
  }
  return any_m ? std::max(top_k, top_m + 1) : top_k;
}

namespace {

void stats_rec(const DNode& d, std::size_t depth, DerivationStats& s) {
  ++s.nodes;
  s.depth = std::max(s.depth, depth);
  for (const DLit& l : d.clause) s.max_label = std::max(s.max_label, l.dec);
  if (d.is_leaf()) {
    ++s.leaves;
    s.max_level = std::max(s.max_level, leaf_level(d));
  }
  for (const DNode& p : d.premises) stats_rec(p, depth + 1, s);
}

DNode map_tree(const DNode& d, const std::function<DNode(const DNode&)>& leaf,
               const std::function<DLit(const DLit&)>& lit) {
  if (d.is_leaf()) {
    DNode l = d;
    for (DLit& x : l.clause) x = lit(x);
    return leaf(l);
  }
  DNode p0 = map_tree(d.premises[0], leaf, lit);
  DNode p1 = map_tree(d.premises[1], leaf, lit);
  // Positions may move when literals are appended; locate the pair again.
  std::optional<std::size_t> i = find_lit(p0.clause, lit(d.premises[0].clause[d.cut[0]]));
  std::optional<std::size_t> j = find_lit(p1.clause, lit(d.premises[1].clause[d.cut[1]]));
  if (!i || !j) throw DomainError("cut pair lost while rebuilding a derivation");
  return resolve(std::move(p0), *i, std::move(p1), *j);
}

DLit identity(const DLit& l) { return l; }
DNode keep(const DNode& d) { return d; }

DNode append_below_partitions(const DNode& d, const DLit& extra) {
  return map_tree(
      d,
      [&](const DNode& leaf) {
        if (leaf.kind != DNode::Kind::kPartition) return leaf;
        DNode out = leaf;
        out.clause.push_back(extra);
        return out;
      },
      identity);
}

void require_single_dbar(const DNode& pi, unsigned n, const char* what) {
  if (pi.clause.size() != 1 || pi.clause[0].kind != DLit::Kind::kD || pi.clause[0].positive ||
      pi.clause[0].index >= n) {
    throw DomainError(std::string(what) + " needs a derivation of a single ~D_q with q < " +
                      std::to_string(n) + ", got [" + to_string(pi.clause) + "]");
  }
  DecorationReport r = check_decoration(pi, n);
  if (!r.ok()) {
    throw DomainError(std::string(what) + ": derivation is not decorated over the " +
                      std::to_string(n) + "-family: " + r.errors[0].path + ": " +
                      r.errors[0].message);
  }
}

unsigned max_negative_partition(const DNode& d) {
  if (d.kind == DNode::Kind::kPartition) {
    unsigned m = 0;
    for (const DLit& l : d.clause) {
      if (!l.positive) m = std::max(m, l.dec);
    }
    return m;
  }
  unsigned m = 0;
  for (const DNode& p : d.premises) m = std::max(m, max_negative_partition(p));
  return m;
}

// Derivations pi_q(n) for all q < n.
std::vector<DNode> all_pi(unsigned n) {
  std::vector<DNode> cur;
  cur.push_back(resolve_on(unit_leaf({lit_c(0, 2), lit_dbar(0, 1)}), partition_leaf({lit_cbar(0, 2)}),
                           lit_c(0, 2)));
  for (unsigned size = 1; size < n; ++size) {
    unsigned k = 0;
    std::vector<DNode> with_d;
    for (const DNode& pi : cur) k = std::max(k, max_negative_partition(pi));
    k += 1;
    // D_n^(k) from the I = {} leaf and every pi_q(n) * D_n^(k).
    DClause top;
    for (const DNode& pi : cur) top.push_back(lit_d(pi.clause[0].index, pi.clause[0].dec));
    top.push_back(lit_d(size, k));
    DNode dn = partition_leaf(top);
    for (const DNode& pi : cur) {
      DNode ext = append_below_partitions(pi, lit_d(size, k));
      DLit q = pi.clause[0];
      dn = resolve_on(std::move(ext), std::move(dn), q);
    }
    unsigned m = k + 1;
    DNode cn = resolve_on(unit_leaf({lit_c(size, m), lit_dbar(size, k)}), std::move(dn),
                          lit_dbar(size, k));
    std::vector<DNode> next;
    for (unsigned p = 0; p < size; ++p) {
      DNode neg = append_below_partitions(raise(cur[p], 1 + m), lit_cbar(size, m));
      next.push_back(resolve_on(cn, std::move(neg), lit_c(size, m)));
    }
    next.push_back(swap_indices(next[0], 0, size));
    cur = std::move(next);
  }
  return cur;
}

// Refutation of the empty clause plus E from the indices in s, with every
// new integer at least base.
DNode pivot(const std::vector<unsigned>& s, const DClause& e, unsigned base) {
  if (s.empty()) {
    DClause c = e;
    std::sort(c.begin(), c.end());
    return partition_leaf(c);
  }
  std::vector<DNode> dbar;
  for (unsigned i : s) {
    std::vector<unsigned> rest;
    for (unsigned x : s) {
      if (x != i) rest.push_back(x);
    }
    DClause e2 = e;
    e2.push_back(lit_cbar(i, base + 1));
    DNode y = pivot(rest, e2, base + 2);
    dbar.push_back(
        resolve_on(unit_leaf({lit_c(i, base + 1), lit_dbar(i, base)}), std::move(y),
                   lit_c(i, base + 1)));
  }
  DClause top = e;
  for (unsigned i : s) top.push_back(lit_d(i, base));
  std::sort(top.begin(), top.end());
  DNode cur = partition_leaf(top);
  for (std::size_t k = 0; k < s.size(); ++k) {
    cur = resolve_on(std::move(dbar[k]), std::move(cur), lit_dbar(s[k], base));
  }
  return cur;
}

}  // namespace

DerivationStats derivation_stats(const DNode& d) {
  DerivationStats s;
  stats_rec(d, 0, s);
  return s;
}

DNode swap_indices(const DNode& d, unsigned a, unsigned b) {
  return map_tree(d, keep, [&](const DLit& l) {
    DLit out = l;
    if (l.index == a) {
      out.index = b;
    } else if (l.index == b) {
      out.index = a;
    }
    return out;
  });
}

DNode raise(const DNode& d, unsigned by) {
  return map_tree(d, keep, [&](const DLit& l) {
    DLit out = l;
    if (out.dec) out.dec += by;
    return out;
  });
}

DNode build_pi(unsigned j, unsigned n) {
  if (n == 0 || j >= n) {
    throw DomainError("build_pi needs j < n, got j=" + std::to_string(j) + ", n=" +
                      std::to_string(n));
  }
  return std::move(all_pi(n)[j]);
}

DNode extend_neg(const DNode& pi, unsigned n, unsigned m) {
  if (m == 0) throw DomainError("extend_neg needs m >= 1");
  require_single_dbar(pi, n, "extend_neg");
  return append_below_partitions(raise(pi, 1 + m), lit_cbar(n, m));
}

std::pair<DNode, unsigned> extend_pos(const DNode& pi, unsigned n) {
  require_single_dbar(pi, n, "extend_pos");
  unsigned k = 1 + max_negative_partition(pi);
  return {append_below_partitions(pi, lit_d(n, k)), k};
}

DNode build_refutation(unsigned n, Construction c) {
  if (n == 0) throw DomainError("build_refutation needs n >= 1");
  if (c == Construction::kPivot) {
    if (n > 10) throw DomainError("pivot refutations are limited to n <= 10");
    std::vector<unsigned> s;
    for (unsigned i = 0; i < n; ++i) s.push_back(i);
    return pivot(s, {}, 1);
  }
  if (n > 7) throw DomainError("recursive refutations are limited to n <= 7");
  std::vector<DNode> pis = all_pi(n);
  DClause top;
  for (const DNode& pi : pis) top.push_back(lit_d(pi.clause[0].index, pi.clause[0].dec));
  std::sort(top.begin(), top.end());
  DNode cur = partition_leaf(top);
  for (DNode& pi : pis) {
    DLit q = pi.clause[0];
    cur = resolve_on(std::move(pi), std::move(cur), q);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Checking

namespace {

class DecorationChecker {
 public:
  explicit DecorationChecker(unsigned n) : n_(n) {}

  void node(const DNode& d, const std::string& path) {
    bool ok = true;
    for (std::size_t i = 0; i < d.clause.size(); ++i) {
      const DLit& l = d.clause[i];
      if (l.dec == 0) {
        err(path, "literal " + to_string(l) + " is undecorated");
        ok = false;
      }
      if (l.index >= n_) {
        err(path, "literal " + to_string(l) + " has index outside the " + std::to_string(n_) +
                      "-family");
        ok = false;
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (d.clause[j] == l) {
          err(path, "condition 2: duplicate occurrence of " + to_string(l) + " in one clause");
          ok = false;
        }
      }
    }
    switch (d.kind) {
      case DNode::Kind::kUnit:
        if (!d.premises.empty()) err(path, "leaf with premises");
        if (ok) unit(d, path);
        return;
      case DNode::Kind::kPartition:
        if (!d.premises.empty()) err(path, "leaf with premises");
        if (ok) partition(d, path);
        return;
      case DNode::Kind::kResolve:
        if (d.premises.size() != 2) {
          err(path, "resolution node needs two premises");
          return;
        }
        if (ok) resolution(d, path);
        for (std::size_t i = 0; i < 2; ++i) {
          node(d.premises[i], path + ".premises[" + std::to_string(i) + "]");
        }
        return;
    }
  }

  DecorationReport report;

 private:
  void err(const std::string& path, const std::string& msg) { report.errors.push_back({path, msg}); }

  void unit(const DNode& d, const std::string& path) {
    if (d.clause.size() != 2) {
      err(path, "unit leaf [" + to_string(d.clause) + "] is not of the form C_i, ~D_i");
      return;
    }
    const DLit* c = nullptr;
    const DLit* dbar = nullptr;
    for (const DLit& l : d.clause) {
      if (l.kind == DLit::Kind::kC && l.positive) c = &l;
      if (l.kind == DLit::Kind::kD && !l.positive) dbar = &l;
    }
    if (!c || !dbar || c->index != dbar->index) {
      err(path, "unit leaf [" + to_string(d.clause) + "] is not of the form C_i, ~D_i");
      return;
    }
    if (c->dec <= dbar->dec) {
      err(path, "condition 3: unit leaf " + to_string(*c) + ", " + to_string(*dbar) +
                    " needs k > m");
    }
  }

  void partition(const DNode& d, const std::string& path) {
    std::vector<int> seen(n_, 0);
    unsigned max_m = 0;
    unsigned min_k = 0;
    bool any_k = false;
    for (const DLit& l : d.clause) {
      bool cbar = l.kind == DLit::Kind::kC && !l.positive;
      bool dpos = l.kind == DLit::Kind::kD && l.positive;
      if (!cbar && !dpos) {
        err(path, "partition leaf contains " + to_string(l));
        return;
      }
      ++seen[l.index];
      if (cbar) {
        max_m = std::max(max_m, l.dec);
      } else {
        min_k = any_k ? std::min(min_k, l.dec) : l.dec;
        any_k = true;
      }
    }
    for (unsigned i = 0; i < n_; ++i) {
      if (seen[i] != 1) {
        err(path, "partition leaf [" + to_string(d.clause) + "] does not mention index " +
                      std::to_string(i) + " exactly once");
        return;
      }
    }
    if (any_k && max_m >= min_k) {
      err(path, "condition 3: partition leaf [" + to_string(d.clause) + "] needs max m = " +
                    std::to_string(max_m) + " < min k = " + std::to_string(min_k));
    }
  }

  void resolution(const DNode& d, const std::string& path) {
    const DClause* prem[2] = {&d.premises[0].clause, &d.premises[1].clause};
    for (unsigned s = 0; s < 2; ++s) {
      if (d.cut[s] >= prem[s]->size()) {
        err(path, "cut position out of range in premise " + std::to_string(s));
        return;
      }
    }
    const DLit& a = (*prem[0])[d.cut[0]];
    const DLit& b = (*prem[1])[d.cut[1]];
    if (!a.complementary(b)) {
      err(path, "cut pair " + to_string(a) + ", " + to_string(b) + " is not complementary");
      return;
    }
    if (a.dec != b.dec) {
      err(path, "condition 1: cut pair " + to_string(a) + ", " + to_string(b) +
                    " carries different integers");
    }
    std::vector<int> linked_concl(d.clause.size(), 0);
    std::vector<int> linked_prem[2] = {std::vector<int>(prem[0]->size(), 0),
                                       std::vector<int>(prem[1]->size(), 0)};
    for (const Link& l : d.links) {
      if (l.side > 1 || l.prem >= prem[l.side]->size() || l.concl >= d.clause.size()) {
        err(path, "link out of range");
        continue;
      }
      if (l.prem == d.cut[l.side]) {
        err(path, "cut occurrence " + to_string((*prem[l.side])[l.prem]) + " is linked");
        continue;
      }
      const DLit& up = (*prem[l.side])[l.prem];
      const DLit& down = d.clause[l.concl];
      if (!up.same_literal(down)) {
        err(path, "link joins different literals " + to_string(up) + " and " + to_string(down));
        continue;
      }
      if (up.dec != down.dec) {
        err(path, "condition 2: linked occurrences " + to_string(up) + " and " + to_string(down) +
                      " carry different integers");
      }
      ++linked_concl[l.concl];
      ++linked_prem[l.side][l.prem];
    }
    for (unsigned s = 0; s < 2; ++s) {
      for (std::size_t k = 0; k < prem[s]->size(); ++k) {
        if (k == d.cut[s]) continue;
        if (linked_prem[s][k] != 1) {
          err(path, "condition 2: occurrence " + to_string((*prem[s])[k]) + " of premise " +
                        std::to_string(s) + " is linked " + std::to_string(linked_prem[s][k]) +
                        " times");
        }
      }
    }
    for (std::size_t k = 0; k < d.clause.size(); ++k) {
      if (!linked_concl[k]) {
        err(path, "condition 2: occurrence " + to_string(d.clause[k]) + " is not linked to a premise");
      }
    }
    std::set<DLit> expect;
    for (unsigned s = 0; s < 2; ++s) {
      for (std::size_t k = 0; k < prem[s]->size(); ++k) {
        if (k != d.cut[s]) expect.insert((*prem[s])[k]);
      }
    }
    std::set<DLit> got(d.clause.begin(), d.clause.end());
    if (got != expect) {
      err(path, "conclusion [" + to_string(d.clause) + "] is not the union of the premises minus the cut pair");
    }
  }

  unsigned n_;
};

}  // namespace

DecorationReport check_decoration(const DNode& d, unsigned n) {
  DecorationChecker k(n);
  if (n == 0) {
    k.report.errors.push_back({"$", "family size must be at least 1"});
    return std::move(k.report);
  }
  k.node(d, "$");
  k.report.refutation = d.clause.empty();
  return std::move(k.report);
}

// ---------------------------------------------------------------------------
// Search

namespace {

struct Bits {
  std::array<std::uint64_t, 4> w{};
  void set(unsigned i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(unsigned i) { w[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(unsigned i) const { return (w[i / 64] >> (i % 64)) & 1; }
  bool subset_of(const Bits& o) const {
    for (int k = 0; k < 4; ++k) {
      if (w[k] & ~o.w[k]) return false;
    }
    return true;
  }
  bool empty() const { return !(w[0] | w[1] | w[2] | w[3]); }
  int count() const {
    int c = 0;
    for (std::uint64_t x : w) c += __builtin_popcountll(x);
    return c;
  }
  Bits operator|(const Bits& o) const {
    Bits r;
    for (int k = 0; k < 4; ++k) r.w[k] = w[k] | o.w[k];
    return r;
  }
  bool operator<(const Bits& o) const { return w < o.w; }
};

class Search {
 public:
  Search(unsigned n, unsigned max_dec) : n_(n), md_(max_dec) {}

  unsigned atom(const DLit& l) const {
    unsigned lit = ((l.kind == DLit::Kind::kC ? 0 : 1) * n_ + l.index) * 2 + (l.positive ? 0 : 1);
    return lit * md_ + (l.dec - 1);
  }
  DLit lit(unsigned a) const {
    unsigned dec = a % md_ + 1;
    unsigned rest = a / md_;
    bool pos = rest % 2 == 0;
    rest /= 2;
    DLit l;
    l.kind = rest >= n_ ? DLit::Kind::kD : DLit::Kind::kC;
    l.index = rest % n_;
    l.positive = pos;
    l.dec = dec;
    return l;
  }
  unsigned comp(unsigned a) const {
    unsigned dec = a % md_;
    unsigned lit = a / md_;
    return (lit ^ 1) * md_ + dec;
  }
  unsigned atoms() const { return 4 * n_ * md_; }

  struct Entry {
    Bits bits;
    int left = -1;
    int right = -1;
    int pivot = -1;  // atom resolved in `left`
    DNode::Kind leaf = DNode::Kind::kResolve;
  };

  std::optional<DNode> run() {
    ClauseFamilies fam = gen_clauses(n_);
    for (const DClause& u : fam.units) {
      for (unsigned k = 1; k <= md_; ++k) {
        for (unsigned m = 1; m < k; ++m) {
          DClause c = {u[0], u[1]};
          c[0].dec = k;
          c[1].dec = m;
          add_leaf(c, DNode::Kind::kUnit);
        }
      }
    }
    for (const DClause& p : fam.partitions) {
      std::vector<unsigned> decs(n_, 1);
      while (true) {
        DClause c = p;
        unsigned max_m = 0;
        unsigned min_k = md_ + 1;
        for (unsigned i = 0; i < n_; ++i) {
          c[i].dec = decs[i];
          if (c[i].positive) {
            min_k = std::min(min_k, decs[i]);
          } else {
            max_m = std::max(max_m, decs[i]);
          }
        }
        if (max_m < min_k) add_leaf(c, DNode::Kind::kPartition);
        unsigned i = 0;
        while (i < n_ && decs[i] == md_) decs[i++] = 1;
        if (i == n_) break;
        ++decs[i];
      }
    }
    using Key = std::pair<int, int>;  // (size, index)
    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> queue;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].bits.empty()) return build(static_cast<int>(i));
      queue.push({entries_[i].bits.count(), static_cast<int>(i)});
    }
    std::vector<int> processed;
    while (!queue.empty()) {
      int g = queue.top().second;
      queue.pop();
      if (dead_[g]) continue;
      for (int p : processed) {
        if (dead_[p]) continue;
        for (unsigned a = 0; a < atoms(); ++a) {
          if (!entries_[g].bits.test(a) || !entries_[p].bits.test(comp(a))) continue;
          Bits r = entries_[g].bits | entries_[p].bits;
          r.reset(a);
          r.reset(comp(a));
          if (tautology(r) || subsumed(r)) continue;
          int idx = add(Entry{r, g, p, static_cast<int>(a), DNode::Kind::kResolve});
          if (r.empty()) return build(idx);
          queue.push({r.count(), idx});
        }
      }
      processed.push_back(g);
    }
    return std::nullopt;
  }

 private:
  void add_leaf(const DClause& c, DNode::Kind kind) {
    Bits b;
    for (const DLit& l : c) b.set(atom(l));
    if (subsumed(b)) return;
    add(Entry{b, -1, -1, -1, kind});
  }

  int add(Entry e) {
    // Backward subsumption retires weaker clauses.
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (!dead_[i] && e.bits.subset_of(entries_[i].bits)) dead_[i] = true;
    }
    entries_.push_back(e);
    dead_.push_back(false);
    return static_cast<int>(entries_.size() - 1);
  }

  bool subsumed(const Bits& b) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (!dead_[i] && entries_[i].bits.subset_of(b)) return true;
    }
    return false;
  }

  bool tautology(const Bits& b) const {
    for (unsigned a = 0; a < atoms(); ++a) {
      if (b.test(a) && b.test(comp(a))) return true;
    }
    return false;
  }

  DClause clause(const Bits& b) const {
    DClause c;
    for (unsigned a = 0; a < atoms(); ++a) {
      if (b.test(a)) c.push_back(lit(a));
    }
    std::sort(c.begin(), c.end());
    return c;
  }

  DNode build(int i) const {
    const Entry& e = entries_[i];
    if (e.leaf == DNode::Kind::kUnit) {
      DClause c = clause(e.bits);
      // C_i first, then ~D_i.
      std::sort(c.begin(), c.end(), [](const DLit& x, const DLit& y) {
        return x.kind < y.kind;
      });
      return unit_leaf(c);
    }
    if (e.leaf == DNode::Kind::kPartition) return partition_leaf(clause(e.bits));
    return resolve_on(build(e.left), build(e.right), lit(static_cast<unsigned>(e.pivot)));
  }

  unsigned n_;
  unsigned md_;
  std::vector<Entry> entries_;
  std::vector<bool> dead_;
};

}  // namespace

std::optional<DNode> brute_force(unsigned n, unsigned max_dec) {
  if (n == 0) throw DomainError("brute_force needs n >= 1");
  if (max_dec == 0) return std::nullopt;
  if (4 * n * max_dec > 256) {
    throw DomainError("brute_force supports 4 * n * max_dec <= 256");
  }
  return Search(n, max_dec).run();
}

std::vector<GrowthRow> growth(unsigned upto, Construction c) {
  std::vector<GrowthRow> rows;
  for (unsigned n = 1; n <= upto; ++n) {
    DerivationStats s = derivation_stats(build_refutation(n, c));
    rows.push_back({n, s.leaves, s.max_label, s.max_level});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Controlled realisation

Bindings default_bindings(unsigned n, const std::string& op) {
  Bindings b;
  for (unsigned i = 0; i < n; ++i) {
    b.c.push_back(Formula::fix(op, Term::num(2 * i)));
    b.d.push_back(Formula::fix(op, Term::num(2 * i + 1)));
  }
  return b;
}

namespace {

class Realiser {
 public:
  Realiser(const PsiTerm& gamma, const PsiTerm& a0, const Bindings& b)
      : gamma_(gamma), a0_(a0), b_(b) {}

  const CollapseSteps& steps(unsigned m) {
    while (steps_.size() < m) {
      steps_.push_back(collapse_steps(gamma_, a0_, static_cast<unsigned>(steps_.size() + 1)));
    }
    return steps_[m - 1];
  }

  Formula realise(const DLit& l) {
    const Formula& base = l.kind == DLit::Kind::kC ? b_.c[l.index] : b_.d[l.index];
    Formula f = bound_positive(base, steps(l.dec).beta_m);
    return l.positive ? f : negate(f);
  }

  Sequent sequent(const DClause& c) {
    Sequent s = b_.side;
    for (const DLit& l : c) s.insert(realise(l));
    return s;
  }

  // Returns the certificate and the largest leaf level below it.
  std::pair<Certificate, unsigned> node(const DNode& d) {
    Certificate c;
    c.d = 1;
    c.sequent = sequent(d.clause);
    if (d.is_leaf()) {
      unsigned lv = leaf_level(d);
      const CollapseSteps& s = steps(lv);
      c.rule = CRule::kHyp;
      c.gamma = add_psi(s.b_m, psi_nat(1));
      c.a = s.beta_m;
      c.note = std::string(d.kind == DNode::Kind::kUnit ? "unit" : "partition") + " leaf " +
               to_string(d.clause) + " at level " + std::to_string(lv);
      return {c, lv};
    }
    auto [p0, l0] = node(d.premises[0]);
    auto [p1, l1] = node(d.premises[1]);
    unsigned lv = std::max(l0, l1);
    const DLit& left_cut = d.premises[0].clause[d.cut[0]];
    bool left_negative = !left_cut.positive;
    DLit pos = left_cut;
    pos.positive = true;
    c.rule = CRule::kCut;
    c.cut = realise(pos);
    c.gamma = add_psi(steps(lv).b_m, psi_nat(1));
    c.a = add_psi(psi_max(p0.a, p1.a), psi_nat(1));
    if (left_negative) {
      c.premises.push_back(std::move(p0));
      c.premises.push_back(std::move(p1));
    } else {
      c.premises.push_back(std::move(p1));
      c.premises.push_back(std::move(p0));
    }
    return {c, lv};
  }

 private:
  PsiTerm gamma_;
  PsiTerm a0_;
  const Bindings& b_;
  std::vector<CollapseSteps> steps_;
};

void check_binding(const Formula& f, const std::string& what) {
  if (!is_closed(f)) throw DomainError("binding " + what + " is not closed: " + to_string(f));
  if (has_set_var(f)) throw DomainError("binding " + what + " mentions a set variable");
  if (!is_positive(f)) throw DomainError("binding " + what + " is not positive: " + to_string(f));
}

}  // namespace

Certificate to_controlled(const DNode& d, unsigned n, const PsiTerm& gamma, const PsiTerm& a0,
                          const Bindings& b) {
  DecorationReport r = check_decoration(d, n);
  if (!r.ok()) {
    throw DomainError("derivation is not decorated: " + r.errors[0].path + ": " +
                      r.errors[0].message);
  }
  for (const PsiTerm* t : {&gamma, &a0}) {
    if (!validate_psi(*t).empty() || !is_nf(*t)) {
      throw DomainError("not a normal-form term: " + psi_to_wire(*t));
    }
  }
  if (b.c.size() < n || b.d.size() < n) {
    throw DomainError("bindings cover " + std::to_string(std::min(b.c.size(), b.d.size())) +
                      " indices, need " + std::to_string(n));
  }
  for (unsigned i = 0; i < n; ++i) {
    check_binding(b.c[i], "C" + std::to_string(i));
    check_binding(b.d[i], "D" + std::to_string(i));
  }
  for (const Formula& f : b.side) check_binding(f, "side formula");
  Realiser re(gamma, a0, b);
  return re.node(d).first;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

const char* kind_name(DNode::Kind k) {
  switch (k) {
    case DNode::Kind::kUnit: return "unit";
    case DNode::Kind::kPartition: return "partition";
    default: return "resolve";
  }
}

}  // namespace

Json dnode_to_json(const DNode& d) {
  Json clause = Json::array();
  for (const DLit& l : d.clause) clause.push_back(to_string(l));
  Json j;
  j["rule"] = kind_name(d.kind);
  j["clause"] = clause;
  if (d.kind == DNode::Kind::kResolve) {
    j["cut"] = {d.cut[0], d.cut[1]};
    Json links = Json::array();
    for (const Link& l : d.links) links.push_back({l.concl, l.side, l.prem});
    j["links"] = links;
    Json prem = Json::array();
    for (const DNode& p : d.premises) prem.push_back(dnode_to_json(p));
    j["premises"] = prem;
  }
  return j;
}

DNode dnode_from_json(const Json& j, const std::string& path) {
  DNode d;
  std::string rule = json_string(json_field(j, "rule", path), path + ".rule");
  if (rule == "unit") {
    d.kind = DNode::Kind::kUnit;
  } else if (rule == "partition") {
    d.kind = DNode::Kind::kPartition;
  } else if (rule == "resolve") {
    d.kind = DNode::Kind::kResolve;
  } else {
    throw ParseError(path + ".rule: unknown rule \"" + rule + "\"");
  }
  const Json& clause = json_field(j, "clause", path);
  if (!clause.is_array()) throw ParseError(path + ".clause: expected an array");
  for (std::size_t i = 0; i < clause.size(); ++i) {
    std::string p = path + ".clause[" + std::to_string(i) + "]";
    try {
      d.clause.push_back(parse_dlit(json_string(clause[i], p)));
    } catch (const ParseError& e) {
      throw ParseError(p + ": " + e.what());
    }
  }
  if (d.kind != DNode::Kind::kResolve) return d;
  const Json& cut = json_field(j, "cut", path);
  if (!cut.is_array() || cut.size() != 2) throw ParseError(path + ".cut: expected a pair");
  d.cut[0] = json_uint(cut[0], path + ".cut[0]");
  d.cut[1] = json_uint(cut[1], path + ".cut[1]");
  const Json& links = json_field(j, "links", path);
  if (!links.is_array()) throw ParseError(path + ".links: expected an array");
  for (std::size_t i = 0; i < links.size(); ++i) {
    std::string p = path + ".links[" + std::to_string(i) + "]";
    if (!links[i].is_array() || links[i].size() != 3) throw ParseError(p + ": expected a triple");
    Link l;
    l.concl = json_uint(links[i][0], p + "[0]");
    l.side = static_cast<unsigned>(json_uint(links[i][1], p + "[1]"));
    l.prem = json_uint(links[i][2], p + "[2]");
    d.links.push_back(l);
  }
  const Json& prem = json_field(j, "premises", path);
  if (!prem.is_array()) throw ParseError(path + ".premises: expected an array");
  for (std::size_t i = 0; i < prem.size(); ++i) {
    d.premises.push_back(dnode_from_json(prem[i], path + ".premises[" + std::to_string(i) + "]"));
  }
  return d;
}

Json derivation_to_json(const DNode& d, unsigned n) {
  DerivationStats s = derivation_stats(d);
  return {{"n", n},
          {"leaves", s.leaves},
          {"max_label", s.max_label},
          {"max_level", s.max_level},
          {"derivation", dnode_to_json(d)}};
}

std::pair<DNode, unsigned> derivation_from_json(const Json& j) {
  unsigned n = static_cast<unsigned>(json_uint(json_field(j, "n", "$"), "$.n"));
  return {dnode_from_json(json_field(j, "derivation", "$"), "$.derivation"), n};
}

Json decoration_report_to_json(const DecorationReport& r) {
  Json errors = Json::array();
  for (const Diagnostic& d : r.errors) errors.push_back({{"path", d.path}, {"message", d.message}});
  return {{"ok", r.ok()}, {"refutation", r.refutation}, {"errors", errors}};
}

}  // namespace ordcalc
