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

#include "ordcalc/formula_json.hpp"

#include <cctype>
#include <utility>

namespace ordcalc {

const Json& json_field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + ": missing field \"" + key + "\"");
  return *it;
}

std::string json_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected a string");
  return j.get<std::string>();
}

std::uint64_t json_uint(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw ParseError(path + ": expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

namespace {

std::string ident(const Json& j, const std::string& path) {
  std::string s = json_string(j, path);
  if (!is_identifier(s)) throw ParseError(path + ": invalid identifier \"" + s + "\"");
  return s;
}

std::string kind_of(const Json& j, const std::string& path) {
  return json_string(json_field(j, "kind", path), path + ".kind");
}

}  // namespace

Json term_to_json(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kVar: return t.name();
    case Term::Kind::kNum: return t.value();
    case Term::Kind::kSucc: return {{"kind", "succ"}, {"arg", term_to_json(t.args()[0])}};
    case Term::Kind::kP0: return {{"kind", "p0"}, {"arg", term_to_json(t.args()[0])}};
    case Term::Kind::kP1: return {{"kind", "p1"}, {"arg", term_to_json(t.args()[0])}};
    case Term::Kind::kExp2: return {{"kind", "exp2"}, {"arg", term_to_json(t.args()[0])}};
    case Term::Kind::kAdd:
      return {{"kind", "add"},
              {"left", term_to_json(t.args()[0])},
              {"right", term_to_json(t.args()[1])}};
    case Term::Kind::kMul:
      return {{"kind", "mul"},
              {"left", term_to_json(t.args()[0])},
              {"right", term_to_json(t.args()[1])}};
  }
  return nullptr;
}

Term term_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return Term::num(json_uint(j, path));
  if (j.is_string()) return Term::var(ident(j, path));
  std::string k = kind_of(j, path);
  auto arg = [&] { return term_from_json(json_field(j, "arg", path), path + ".arg"); };
  auto left = [&] { return term_from_json(json_field(j, "left", path), path + ".left"); };
  auto right = [&] { return term_from_json(json_field(j, "right", path), path + ".right"); };
  if (k == "succ") return Term::succ(arg());
  if (k == "p0") return Term::p0(arg());
  if (k == "p1") return Term::p1(arg());
  if (k == "exp2") return Term::exp2(arg());
  if (k == "add") return Term::add(left(), right());
  if (k == "mul") return Term::mul(left(), right());
  throw ParseError(path + ": unknown term kind \"" + k + "\"");
}

Json psi_to_json(const PsiTerm& t) { return psi_to_wire(t); }

PsiTerm psi_from_json(const Json& j, const std::string& path) {
  std::string s = json_string(j, path);
  try {
    return parse_psi(s);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const DomainError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Json formula_to_json(const Formula& f) {
  using K = Formula::Kind;
  auto lit = [&](const char* k) {
    return Json{{"kind", k}, {"left", term_to_json(f.lhs())}, {"right", term_to_json(f.rhs())}};
  };
  switch (f.kind()) {
    case K::kEq: return lit("eq");
    case K::kNeq: return lit("neq");
    case K::kLt: return lit("lt");
    case K::kNlt: return lit("nlt");
    case K::kFix:
    case K::kNFix: {
      Json j{{"kind", f.kind() == K::kFix ? "fix" : "nfix"}, {"op", f.name()}};
      if (!f.omega_stage()) j["stage"] = psi_to_json(f.stage());
      j["arg"] = term_to_json(f.lhs());
      return j;
    }
    case K::kMem:
    case K::kNMem:
      return {{"kind", f.kind() == K::kMem ? "mem" : "nmem"},
              {"set", f.name()},
              {"arg", term_to_json(f.lhs())}};
    case K::kAnd:
    case K::kOr:
      return {{"kind", f.kind() == K::kAnd ? "and" : "or"},
              {"left", formula_to_json(f.kids()[0])},
              {"right", formula_to_json(f.kids()[1])}};
    case K::kExists:
    case K::kForall:
      return {{"kind", f.kind() == K::kExists ? "exists" : "forall"},
              {"var", f.name()},
              {"body", formula_to_json(f.body())}};
    case K::kBExists:
    case K::kBForall:
      return {{"kind", f.kind() == K::kBExists ? "bexists" : "bforall"},
              {"var", f.name()},
              {"bound", term_to_json(f.bound())},
              {"body", formula_to_json(f.body())}};
    case K::kBigAnd:
    case K::kBigOr: {
      Json items = Json::array();
      for (const Formula& k : f.kids()) items.push_back(formula_to_json(k));
      return {{"kind", f.kind() == K::kBigAnd ? "bigand" : "bigor"}, {"items", items}};
    }
  }
  return nullptr;
}

Formula formula_from_json(const Json& j, const std::string& path) {
  std::string k = kind_of(j, path);
  auto term = [&](const char* key) {
    return term_from_json(json_field(j, key, path), path + "." + key);
  };
  auto sub = [&](const char* key) {
    return formula_from_json(json_field(j, key, path), path + "." + key);
  };
  auto name = [&](const char* key) { return ident(json_field(j, key, path), path + "." + key); };
  try {
    if (k == "eq") return Formula::eq(term("left"), term("right"));
    if (k == "neq") return Formula::neq(term("left"), term("right"));
    if (k == "lt") return Formula::lt(term("left"), term("right"));
    if (k == "nlt") return Formula::nlt(term("left"), term("right"));
    if (k == "fix" || k == "nfix") {
      PsiTerm stage = PsiTerm::omega_const();
      if (j.contains("stage")) {
        const Json& s = j["stage"];
        if (!(s.is_string() && (s == "Om" || s == "Omega"))) stage = psi_from_json(s, path + ".stage");
      }
      return k == "fix" ? Formula::fix(name("op"), stage, term("arg"))
                        : Formula::nfix(name("op"), stage, term("arg"));
    }
    if (k == "mem") return Formula::mem(name("set"), term("arg"));
    if (k == "nmem") return Formula::nmem(name("set"), term("arg"));
    if (k == "and") return Formula::conj(sub("left"), sub("right"));
    if (k == "or") return Formula::disj(sub("left"), sub("right"));
    if (k == "implies") return Formula::implies(sub("left"), sub("right"));
    if (k == "not") return negate(sub("body"));
    if (k == "exists") return Formula::exists(name("var"), sub("body"));
    if (k == "forall") return Formula::forall(name("var"), sub("body"));
    if (k == "bexists") return Formula::bexists(name("var"), term("bound"), sub("body"));
    if (k == "bforall") return Formula::bforall(name("var"), term("bound"), sub("body"));
    if (k == "bigand" || k == "bigor") {
      const Json& items = json_field(j, "items", path);
      if (!items.is_array()) throw ParseError(path + ".items: expected an array");
      std::vector<Formula> v;
      for (std::size_t i = 0; i < items.size(); ++i) {
        v.push_back(formula_from_json(items[i], path + ".items[" + std::to_string(i) + "]"));
      }
      return k == "bigand" ? Formula::big_and(std::move(v)) : Formula::big_or(std::move(v));
    }
  } catch (const DomainError& e) {
    throw ParseError(path + ": " + e.what());
  }
  throw ParseError(path + ": unknown formula kind \"" + k + "\"");
}

Json sequent_to_json(const Sequent& s) {
  Json a = Json::array();
  for (const Formula& f : s) a.push_back(formula_to_json(f));
  return a;
}

Sequent sequent_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array of formulas");
  Sequent s;
  for (std::size_t i = 0; i < j.size(); ++i) {
    s.insert(formula_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return s;
}

Json abstraction_to_json(const Abstraction& a) {
  return {{"var", a.var}, {"body", formula_to_json(a.body)}};
}

Abstraction abstraction_from_json(const Json& j, const std::string& path) {
  Abstraction a;
  a.var = ident(json_field(j, "var", path), path + ".var");
  a.body = formula_from_json(json_field(j, "body", path), path + ".body");
  return a;
}

Json operator_to_json(const OperatorEntry& e) {
  return {{"name", e.name}, {"var", e.var}, {"setvar", e.setvar}, {"body", formula_to_json(e.body)}};
}

OperatorEntry operator_from_json(const Json& j, const std::string& path) {
  OperatorEntry e;
  e.name = ident(json_field(j, "name", path), path + ".name");
  if (j.contains("var")) e.var = ident(j["var"], path + ".var");
  if (j.contains("setvar")) e.setvar = ident(j["setvar"], path + ".setvar");
  e.body = formula_from_json(json_field(j, "body", path), path + ".body");
  return e;
}

Json registry_to_json(const OperatorRegistry& reg) {
  Json ops = Json::array();
  for (const OperatorEntry& e : reg.entries()) ops.push_back(operator_to_json(e));
  return {{"operators", ops}};
}

OperatorRegistry registry_from_json(const Json& j, const std::string& path) {
  const Json& ops = json_field(j, "operators", path);
  if (!ops.is_array()) throw ParseError(path + ".operators: expected an array");
  OperatorRegistry reg;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    std::string p = path + ".operators[" + std::to_string(i) + "]";
    try {
      reg.add(operator_from_json(ops[i], p));
    } catch (const DomainError& e) {
      throw ParseError(p + ": " + e.what());
    }
  }
  return reg;
}

}  // namespace ordcalc
