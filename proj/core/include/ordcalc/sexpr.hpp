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

#ifndef ORDCALC_SEXPR_HPP_
#define ORDCALC_SEXPR_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace ordcalc {

// Minimal s-expression: an atom or a parenthesised list.
struct Sexpr {
  bool is_atom = true;
  std::string atom;
  std::vector<Sexpr> items;

  static Sexpr make_atom(std::string a) { return Sexpr{true, std::move(a), {}}; }
  static Sexpr make_list(std::vector<Sexpr> xs) { return Sexpr{false, {}, std::move(xs)}; }

  bool is_list() const { return !is_atom; }
  // True for a list whose first item is the atom 'head'.
  bool is_form(std::string_view head) const;
  std::string str() const;
};

// Parses exactly one expression; trailing input raises ParseError.
Sexpr parse_sexpr(std::string_view text);

}  // namespace ordcalc

#endif  // ORDCALC_SEXPR_HPP_
