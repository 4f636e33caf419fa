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

#ifndef ORDCALC_COMMON_HPP_
#define ORDCALC_COMMON_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace ordcalc {

enum class Ord { LT, EQ, GT };

inline const char* to_string(Ord o) {
  switch (o) {
    case Ord::LT: return "LT";
    case Ord::EQ: return "EQ";
    default: return "GT";
  }
}

inline Ord flip(Ord o) {
  return o == Ord::LT ? Ord::GT : o == Ord::GT ? Ord::LT : Ord::EQ;
}

// Malformed textual input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was applied outside its domain.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A located problem found by a validator or checker.
struct Diagnostic {
  std::string path;
  std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

}  // namespace ordcalc

#endif  // ORDCALC_COMMON_HPP_
