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

#ifndef ORDCALC_CNF_HPP_
#define ORDCALC_CNF_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ordcalc {

// Ordinals below epsilon_0 in Cantor normal form: a sum of w^e * c with
// strictly decreasing exponents and positive natural coefficients.
class Cnf {
 public:
  Cnf() = default;
  static Cnf zero() { return Cnf(); }
  static Cnf nat(std::uint64_t n);
  static Cnf omega() { return omega_pow(nat(1)); }
  static Cnf omega_pow(Cnf e);

  bool is_zero() const { return exps_.empty(); }
  std::size_t length() const { return exps_.size(); }
  const Cnf& exp(std::size_t i) const { return exps_[i]; }
  std::uint64_t coef(std::size_t i) const { return coefs_[i]; }

  Cnf operator+(const Cnf& o) const;
  // Multiplication by a natural number on the right.
  Cnf times(std::uint64_t n) const;

  std::strong_ordering operator<=>(const Cnf& o) const;
  bool operator==(const Cnf& o) const { return (*this <=> o) == 0; }

  std::string str() const;

 private:
  void push(Cnf e, std::uint64_t c) {
    exps_.push_back(std::move(e));
    coefs_.push_back(c);
  }

  std::vector<Cnf> exps_;
  std::vector<std::uint64_t> coefs_;
};

}  // namespace ordcalc

#endif  // ORDCALC_CNF_HPP_
