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

#ifndef ORDCALC_FORMULA_JSON_HPP_
#define ORDCALC_FORMULA_JSON_HPP_

#include <string>

#include "json.hpp"

#include "ordcalc/formula.hpp"

namespace ordcalc {

using Json = nlohmann::ordered_json;

// Terms: a number is a numeral, a string a variable, otherwise
// {"kind": "succ"|"p0"|"p1"|"exp2", "arg": T} or
// {"kind": "add"|"mul", "left": T, "right": T}.
Json term_to_json(const Term& t);
Term term_from_json(const Json& j, const std::string& path = "$");

// Formulas: {"kind": K, ...} with K one of eq neq lt nlt (left, right),
// fix nfix (op, stage, arg; stage omitted for Omega), mem nmem (set, arg),
// and or (left, right), exists forall (var, body), bexists bforall
// (var, bound, body), bigand bigor (items). Input also accepts
// {"kind": "implies", "left", "right"} and {"kind": "not", "body"}.
Json formula_to_json(const Formula& f);
Formula formula_from_json(const Json& j, const std::string& path = "$");

Json sequent_to_json(const Sequent& s);
Sequent sequent_from_json(const Json& j, const std::string& path = "$");

// {"var": "u", "body": F}
Json abstraction_to_json(const Abstraction& a);
Abstraction abstraction_from_json(const Json& j, const std::string& path = "$");

// {"operators": [{"name", "var", "setvar", "body"}, ...]}
Json registry_to_json(const OperatorRegistry& reg);
OperatorRegistry registry_from_json(const Json& j, const std::string& path = "$");
Json operator_to_json(const OperatorEntry& e);
OperatorEntry operator_from_json(const Json& j, const std::string& path = "$");

// Psi terms travel as wire strings.
Json psi_to_json(const PsiTerm& t);
PsiTerm psi_from_json(const Json& j, const std::string& path = "$");

// JSON helpers raising ParseError with the given path.
const Json& json_field(const Json& j, const char* key, const std::string& path);
std::string json_string(const Json& j, const std::string& path);
std::uint64_t json_uint(const Json& j, const std::string& path);
bool is_identifier(const std::string& s);

}  // namespace ordcalc

#endif  // ORDCALC_FORMULA_JSON_HPP_
