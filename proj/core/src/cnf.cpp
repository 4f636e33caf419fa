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

#include "ordcalc/cnf.hpp"

#include <algorithm>

namespace ordcalc {

Cnf Cnf::nat(std::uint64_t n) {
  Cnf r;
  if (n > 0) r.push(Cnf(), n);
  return r;
}

Cnf Cnf::omega_pow(Cnf e) {
  Cnf r;
  r.push(std::move(e), 1);
  return r;
}

Cnf Cnf::operator+(const Cnf& o) const {
  if (o.is_zero()) return *this;
  const Cnf& lead = o.exps_.front();
  Cnf r;
  std::size_t from = 0;
  for (std::size_t i = 0; i < length(); ++i) {
    auto c = exps_[i] <=> lead;
    if (c > 0) {
      r.push(exps_[i], coefs_[i]);
    } else {
      if (c == 0) {
        r.push(exps_[i], coefs_[i] + o.coefs_.front());
        from = 1;
      }
      break;
    }
  }
  for (std::size_t i = from; i < o.length(); ++i) r.push(o.exps_[i], o.coefs_[i]);
  return r;
}

Cnf Cnf::times(std::uint64_t n) const {
  if (n == 0 || is_zero()) return Cnf();
  Cnf r = *this;
  r.coefs_.front() *= n;
  return r;
}

std::strong_ordering Cnf::operator<=>(const Cnf& o) const {
  std::size_t n = std::min(length(), o.length());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = exps_[i] <=> o.exps_[i]; c != 0) return c;
    if (auto c = coefs_[i] <=> o.coefs_[i]; c != 0) return c;
  }
  return length() <=> o.length();
}

std::string Cnf::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < length(); ++i) {
    if (!s.empty()) s += "+";
    if (exps_[i].is_zero()) {
      s += std::to_string(coefs_[i]);
      continue;
    }
    s += exps_[i] == nat(1) ? "w" : "w^(" + exps_[i].str() + ")";
    if (coefs_[i] != 1) s += "*" + std::to_string(coefs_[i]);
  }
  return s;
}

}  // namespace ordcalc
