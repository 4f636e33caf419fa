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

#ifndef ORDCALC_THETA_HPP_
#define ORDCALC_THETA_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ordcalc/cnf.hpp"
#include "ordcalc/common.hpp"
#include "ordcalc/sexpr.hpp"

namespace ordcalc {

struct ThetaNode;
struct ThetaMono;

// Term of the theta notation system: 0, a base-Omega sum, or theta(arg).
// Values are immutable and share structure.
class ThetaTerm {
 public:
  enum class Kind { kZero, kSum, kApp };

  ThetaTerm() = default;  // zero
  static ThetaTerm zero() { return ThetaTerm(); }
  static ThetaTerm app(ThetaTerm arg);
  // Monomials are given highest exponent first.
  static ThetaTerm sum(std::vector<std::pair<ThetaTerm, std::vector<ThetaTerm>>> monos);
  // Omega^1 * 1.
  static ThetaTerm omega_const();
  // The natural number n as theta(0)+...+theta(0).
  static ThetaTerm nat(unsigned n);

  Kind kind() const;
  bool is_zero() const { return node_ == nullptr; }
  bool is_app() const { return kind() == Kind::kApp; }
  bool is_sum() const { return kind() == Kind::kSum; }
  const ThetaTerm& arg() const;
  const std::vector<ThetaMono>& monos() const;

  bool operator==(const ThetaTerm& o) const;

 private:
  explicit ThetaTerm(std::shared_ptr<const ThetaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ThetaNode> node_;
};

// Omega^exp * (coef[0] + coef[1] + ...).
struct ThetaMono {
  ThetaTerm exp;
  std::vector<ThetaTerm> coef;  // theta applications, weakly decreasing
};

struct ThetaNode {
  ThetaTerm::Kind kind = ThetaTerm::Kind::kZero;
  ThetaTerm arg;
  std::vector<ThetaMono> monos;
};

// Node count: zero and theta each count one, a sum counts one plus the size
// of every exponent and coefficient summand.
std::size_t theta_size(const ThetaTerm& t);

Diagnostics validate_theta(const ThetaTerm& t);
bool is_valid_theta(const ThetaTerm& t);

// K(t), sorted ascending and without duplicates.
std::vector<ThetaTerm> k_set(const ThetaTerm& t);

Ord cmp_theta(const ThetaTerm& s, const ThetaTerm& t);
inline bool theta_lt(const ThetaTerm& s, const ThetaTerm& t) {
  return cmp_theta(s, t) == Ord::LT;
}

ThetaTerm add_theta(const ThetaTerm& s, const ThetaTerm& t);

// True when no monomial has a nonzero exponent, recursively.
bool is_countable_theta(const ThetaTerm& t);
// theta(a) = w^a; throws DomainError outside the countable fragment.
Cnf eval_countable_theta(const ThetaTerm& t);

// Every valid term of size <= bound, ordered by size, then by wire text.
std::vector<ThetaTerm> enumerate_theta(std::size_t size_bound);

// Pull-style view over enumerate_theta; each stream is independent.
class ThetaStream {
 public:
  explicit ThetaStream(std::size_t size_bound);
  std::optional<ThetaTerm> next();

 private:
  std::vector<ThetaTerm> items_;
  std::size_t pos_ = 0;
};

// Wire syntax: 0 | (v ARG) | (sum (mono EXP (cs (v ARG) ...)) ...)
std::string theta_to_wire(const ThetaTerm& t);
Sexpr theta_to_sexpr(const ThetaTerm& t);
ThetaTerm theta_from_sexpr(const Sexpr& e);
ThetaTerm parse_theta(std::string_view text);
// Human form: 0, v(b), O^a.b+..., O.
std::string pretty_theta(const ThetaTerm& t);

}  // namespace ordcalc

#endif  // ORDCALC_THETA_HPP_
