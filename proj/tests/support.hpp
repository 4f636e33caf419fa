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

// Independent oracles and generators shared by the test binaries.

#ifndef ORDCALC_TESTS_SUPPORT_HPP_
#define ORDCALC_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ordcalc/psi.hpp"
#include "ordcalc/theta.hpp"

namespace oracle {

// Ordinal below epsilon_0 as the non-increasing exponent list of
// w^e1 + w^e2 + ... Written from scratch, shares no code with ordcalc::Cnf.
struct Ord0 {
  std::vector<Ord0> terms;
};

inline int compare(const Ord0& a, const Ord0& b) {
  std::size_t n = std::min(a.terms.size(), b.terms.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(a.terms[i], b.terms[i]);
    if (c != 0) return c;
  }
  if (a.terms.size() == b.terms.size()) return 0;
  return a.terms.size() < b.terms.size() ? -1 : 1;
}

inline Ord0 nat(unsigned n) {
  Ord0 r;
  for (unsigned i = 0; i < n; ++i) r.terms.push_back(Ord0{});
  return r;
}

inline Ord0 w_pow(const Ord0& e) { return Ord0{{e}}; }

inline Ord0 add(const Ord0& a, const Ord0& b) {
  if (b.terms.empty()) return a;
  Ord0 r;
  for (const Ord0& e : a.terms) {
    if (compare(e, b.terms.front()) >= 0) r.terms.push_back(e);
  }
  for (const Ord0& e : b.terms) r.terms.push_back(e);
  return r;
}

// theta(a) = w^a on the countable fragment.
inline Ord0 eval(const ordcalc::ThetaTerm& t) {
  using K = ordcalc::ThetaTerm::Kind;
  switch (t.kind()) {
    case K::kZero: return Ord0{};
    case K::kApp: return w_pow(eval(t.arg()));
    case K::kSum: break;
  }
  Ord0 r;
  for (const ordcalc::ThetaMono& m : t.monos()) {
    if (!m.exp.is_zero()) throw std::runtime_error("uncountable theta term");
    for (const ordcalc::ThetaTerm& c : m.coef) r = add(r, eval(c));
  }
  return r;
}

// psi(a) = w^a on the fragment built from 0, + and psi.
inline Ord0 eval(const ordcalc::PsiTerm& t) {
  using K = ordcalc::PsiTerm::Kind;
  switch (t.kind()) {
    case K::kZero: return Ord0{};
    case K::kPsi: return w_pow(eval(t.sub()));
    case K::kSum: {
      Ord0 r;
      for (const ordcalc::PsiTerm& x : t.items()) r = add(r, eval(x));
      return r;
    }
    default: throw std::runtime_error("uncountable psi term");
  }
}

inline bool countable(const ordcalc::ThetaTerm& t) {
  using K = ordcalc::ThetaTerm::Kind;
  switch (t.kind()) {
    case K::kZero: return true;
    case K::kApp: return countable(t.arg());
    case K::kSum: break;
  }
  for (const ordcalc::ThetaMono& m : t.monos()) {
    if (!m.exp.is_zero()) return false;
    for (const ordcalc::ThetaTerm& c : m.coef) {
      if (!countable(c)) return false;
    }
  }
  return true;
}

inline bool countable(const ordcalc::PsiTerm& t) {
  using K = ordcalc::PsiTerm::Kind;
  switch (t.kind()) {
    case K::kZero: return true;
    case K::kPsi: return countable(t.sub());
    case K::kSum:
      for (const ordcalc::PsiTerm& x : t.items()) {
        if (!countable(x)) return false;
      }
      return true;
    default: return false;
  }
}

// Every raw theta tree of exactly `size` nodes, unfiltered. Sizes: zero 1,
// theta 1 + arg, sum 1 + exponents + coefficient summands.
inline std::vector<ordcalc::ThetaTerm> raw_theta(std::size_t size) {
  static std::map<std::size_t, std::vector<ordcalc::ThetaTerm>> memo;
  if (auto it = memo.find(size); it != memo.end()) return it->second;
  std::vector<ordcalc::ThetaTerm> out;
  if (size == 1) out.push_back(ordcalc::ThetaTerm::zero());
  if (size >= 2) {
    for (const auto& a : raw_theta(size - 1)) out.push_back(ordcalc::ThetaTerm::app(a));
  }
  // Monomial lists with total cost size - 1.
  using Mono = std::pair<ordcalc::ThetaTerm, std::vector<ordcalc::ThetaTerm>>;
  std::function<void(std::size_t, std::vector<Mono>&)> monos;
  std::function<void(std::size_t, const ordcalc::ThetaTerm&, std::vector<ordcalc::ThetaTerm>&,
                     std::vector<Mono>&)>
      coefs;
  coefs = [&](std::size_t left, const ordcalc::ThetaTerm& exp,
              std::vector<ordcalc::ThetaTerm>& cs, std::vector<Mono>& acc) {
    if (!cs.empty()) {
      acc.push_back({exp, cs});
      monos(left, acc);
      acc.pop_back();
    }
    for (std::size_t k = 2; k <= left; ++k) {
      for (const auto& a : raw_theta(k - 1)) {
        cs.push_back(ordcalc::ThetaTerm::app(a));
        coefs(left - k, exp, cs, acc);
        cs.pop_back();
      }
    }
  };
  monos = [&](std::size_t left, std::vector<Mono>& acc) {
    if (left == 0) {
      if (!acc.empty()) out.push_back(ordcalc::ThetaTerm::sum(acc));
      return;
    }
    for (std::size_t e = 1; e < left; ++e) {
      for (const auto& exp : raw_theta(e)) {
        std::vector<ordcalc::ThetaTerm> cs;
        coefs(left - e, exp, cs, acc);
      }
    }
  };
  if (size >= 2) {
    std::vector<Mono> acc;
    monos(size - 1, acc);
  }
  memo[size] = out;
  return out;
}

// Every raw psi tree of exactly `size` nodes; sums get at least two items.
inline std::vector<ordcalc::PsiTerm> raw_psi(std::size_t size) {
  static std::map<std::size_t, std::vector<ordcalc::PsiTerm>> memo;
  if (auto it = memo.find(size); it != memo.end()) return it->second;
  std::vector<ordcalc::PsiTerm> out;
  if (size == 1) {
    out.push_back(ordcalc::PsiTerm::zero());
    out.push_back(ordcalc::PsiTerm::omega_const());
  } else {
    for (const auto& a : raw_psi(size - 1)) {
      out.push_back(ordcalc::PsiTerm::raw_pow(a));
      out.push_back(ordcalc::PsiTerm::raw_psi(a));
    }
    std::vector<ordcalc::PsiTerm> acc;
    std::function<void(std::size_t)> items = [&](std::size_t left) {
      if (left == 0) {
        if (acc.size() >= 2) out.push_back(ordcalc::PsiTerm::raw_sum(acc));
        return;
      }
      for (std::size_t k = 1; k <= left; ++k) {
        for (const auto& x : raw_psi(k)) {
          acc.push_back(x);
          items(left - k);
          acc.pop_back();
        }
      }
    };
    items(size - 1);
  }
  memo[size] = out;
  return out;
}

// Well-founded part and ranks of a finite relation by depth-first search
// over predecessors. An element is accessible when no predecessor chain
// reaches a cycle; rank(n) = 1 + max rank of its predecessors, max {} = -1.
struct RankOracle {
  std::vector<int> rank;  // -1 for inaccessible
};

inline RankOracle rank_oracle(std::uint64_t n,
                              const std::vector<std::pair<std::uint64_t, std::uint64_t>>& edges) {
  std::vector<std::vector<std::uint64_t>> pred(n);
  for (const auto& [a, b] : edges) pred[b].push_back(a);
  enum Color { kWhite, kGrey, kBlack };
  std::vector<Color> color(n, kWhite);
  RankOracle out;
  out.rank.assign(n, -1);
  std::function<int(std::uint64_t)> visit = [&](std::uint64_t v) -> int {
    if (color[v] == kGrey) return -1;
    if (color[v] == kBlack) return out.rank[v];
    color[v] = kGrey;
    int best = -1;
    bool ok = true;
    for (std::uint64_t u : pred[v]) {
      int r = visit(u);
      if (r < 0) ok = false;
      best = std::max(best, r);
    }
    color[v] = kBlack;
    out.rank[v] = ok ? best + 1 : -1;
    return out.rank[v];
  };
  for (std::uint64_t v = 0; v < n; ++v) visit(v);
  return out;
}

}  // namespace oracle

namespace testdata {

inline std::string path(const std::string& rel) { return std::string(ORDCALC_TEST_DATA) + "/" + rel; }

inline nlohmann::ordered_json load(const std::string& rel) {
  std::ifstream in(path(rel));
  if (!in) throw std::runtime_error("missing test data " + rel);
  return nlohmann::ordered_json::parse(in);
}

}  // namespace testdata

#endif  // ORDCALC_TESTS_SUPPORT_HPP_
