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

#include "ordcalc/sequent.hpp"

#include <algorithm>
#include <utility>

namespace ordcalc {

namespace {

struct RuleInfo {
  Rule rule;
  const char* name;
};

constexpr RuleInfo kRules[] = {
    {Rule::kLogicalInitial, "logical-initial"},
    {Rule::kEqualityInitial, "equality-initial"},
    {Rule::kArithInitial, "arith-initial"},
    {Rule::kCut, "cut"},
    {Rule::kExists, "exists"},
    {Rule::kForall, "forall"},
    {Rule::kBExists, "bexists"},
    {Rule::kBForall, "bforall"},
    {Rule::kOr, "or"},
    {Rule::kAnd, "and"},
    {Rule::kR, "R"},
    {Rule::kRbar, "Rbar"},
    {Rule::kInd, "ind"},
};

}  // namespace

const char* rule_name(Rule r) {
  for (const RuleInfo& i : kRules) {
    if (i.rule == r) return i.name;
  }
  return "?";
}

Rule rule_from_name(const std::string& s) {
  for (const RuleInfo& i : kRules) {
    if (s == i.name) return i.rule;
  }
  throw ParseError("unknown rule tag \"" + s + "\"");
}

const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> v = [] {
    std::vector<Rule> out;
    for (const RuleInfo& i : kRules) out.push_back(i.rule);
    return out;
  }();
  return v;
}

TheoryId parse_theory(const std::string& s) {
  auto colon = s.find(':');
  std::string head = s.substr(0, colon);
  TheoryId t;
  if (head == "pi01p-acc") {
    if (colon != std::string::npos) throw ParseError("pi01p-acc takes no rank");
    t.kind = TheoryKind::kPi01pAcc;
    t.k = 1;
    return t;
  }
  if (head == "pn-id") {
    t.kind = TheoryKind::kPnId;
  } else if (head == "pandn-acc") {
    t.kind = TheoryKind::kPandnAcc;
  } else {
    throw ParseError("unknown theory \"" + s + "\"");
  }
  if (colon == std::string::npos) throw ParseError("theory \"" + s + "\" needs a rank :k");
  std::string num = s.substr(colon + 1);
  if (num.empty() || num.size() > 6 ||
      !std::all_of(num.begin(), num.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError("invalid rank in theory \"" + s + "\"");
  }
  t.k = static_cast<unsigned>(std::stoul(num));
  return t;
}

std::string to_string(const TheoryId& t) {
  switch (t.kind) {
    case TheoryKind::kPnId: return "pn-id:" + std::to_string(t.k);
    case TheoryKind::kPandnAcc: return "pandn-acc:" + std::to_string(t.k);
    default: return "pi01p-acc";
  }
}

// ---------------------------------------------------------------------------
// Checker

namespace {

using K = Formula::Kind;

class Checker {
 public:
  Checker(const TheoryId& th, const OperatorRegistry& reg, const std::vector<Formula>& trusted)
      : th_(th), reg_(reg), trusted_(trusted) {}

  void node(const ProofNode& p, const std::string& path) {
    wellformed(p, path);
    rule(p, path);
    for (std::size_t i = 0; i < p.premises.size(); ++i) {
      node(p.premises[i], path + ".premises[" + std::to_string(i) + "]");
    }
  }

  ProofReport report;

 private:
  void err(const std::string& path, const std::string& msg) {
    report.errors.push_back({path, msg});
  }

  bool check_formula(const Formula& f, const std::string& path, const char* what) {
    bool ok = true;
    for (const std::string& op : unknown_operators(f, reg_)) {
      err(path, std::string(what) + " uses unknown operator " + op);
      ok = false;
    }
    if (has_set_var(f)) {
      err(path, std::string(what) + " contains a set variable: " + to_string(f));
      ok = false;
    }
    if (!stage_set(f).empty()) {
      err(path, std::string(what) + " contains a stage-tagged atom: " + to_string(f));
      ok = false;
    }
    return ok;
  }

  void wellformed(const ProofNode& p, const std::string& path) {
    std::set<std::string> non_acc;
    for (const Formula& f : p.conclusion) {
      check_formula(f, path, "conclusion");
      if (!th_.acc_only()) continue;
      std::vector<const Formula*> stack{&f};
      while (!stack.empty()) {
        const Formula* g = stack.back();
        stack.pop_back();
        if (g->is_fix_atom()) {
          const OperatorEntry* e = reg_.find(g->name());
          if (e && !e->is_acc()) non_acc.insert(e->name);
        }
        for (const Formula& k : g->kids()) stack.push_back(&k);
      }
    }
    for (const std::string& op : non_acc) {
      err(path, "operator " + op + " is not an Acc operator, as " + to_string(th_) + " requires");
    }
  }

  bool arity(const ProofNode& p, const std::string& path, std::size_t n) {
    if (p.premises.size() == n) return true;
    err(path, std::string(rule_name(p.rule)) + " expects " + std::to_string(n) +
                  " premise(s), got " + std::to_string(p.premises.size()));
    return false;
  }

  // Premise sequent may only use conclusion formulas plus `added`.
  void covered(const ProofNode& p, std::size_t i, const std::vector<Formula>& added,
               const std::string& path) {
    const Sequent& prem = p.premises[i].conclusion;
    for (const Formula& f : prem) {
      if (p.conclusion.count(f)) continue;
      if (std::find(added.begin(), added.end(), f) != added.end()) continue;
      std::string expect;
      for (const Formula& a : added) expect += (expect.empty() ? "" : ", ") + to_string(a);
      err(path + ".premises[" + std::to_string(i) + "]",
          "premise formula " + to_string(f) + " is neither in the conclusion nor among the added {" +
              expect + "}");
    }
  }

  const Formula* principal(const ProofNode& p, const std::string& path,
                           std::initializer_list<K> kinds) {
    if (!p.principal) {
      err(path, std::string(rule_name(p.rule)) + " needs a principal formula");
      return nullptr;
    }
    const Formula& f = *p.principal;
    if (std::find(kinds.begin(), kinds.end(), f.kind()) == kinds.end()) {
      err(path, "principal formula " + to_string(f) + " has the wrong shape for " +
                    rule_name(p.rule));
      return nullptr;
    }
    if (!p.conclusion.count(f)) {
      err(path, "principal formula " + to_string(f) + " is not in the conclusion");
      return nullptr;
    }
    return &f;
  }

  bool eigen(const ProofNode& p, const std::string& path,
             const std::set<std::string>& extra) {
    const std::string& a = p.eigenvar;
    if (!is_identifier(a)) {
      err(path, std::string(rule_name(p.rule)) + " needs an eigenvariable");
      return false;
    }
    for (const Formula& f : p.conclusion) {
      if (free_vars(f).count(a)) {
        err(path, "eigenvariable " + a + " occurs free in the conclusion formula " + to_string(f));
        return false;
      }
    }
    if (extra.count(a)) {
      err(path, "eigenvariable " + a + " occurs free in the rule payload");
      return false;
    }
    return true;
  }

  const OperatorEntry* op_of(const Formula& atom, const std::string& path) {
    const OperatorEntry* e = reg_.find(atom.name());
    if (!e) err(path, "unknown operator " + atom.name());
    return e;
  }

  void rule(const ProofNode& p, const std::string& path) {
    const Sequent& G = p.conclusion;
    switch (p.rule) {
      case Rule::kLogicalInitial: {
        if (!arity(p, path, 0)) return;
        if (p.principal) {
          if (!p.principal->is_literal() || !G.count(*p.principal) ||
              !G.count(negate(*p.principal))) {
            err(path, "named literal and its complement are not both in the conclusion");
          }
          return;
        }
        for (const Formula& f : G) {
          if (f.is_literal() && G.count(negate(f))) return;
        }
        err(path, "no complementary pair of literals in the conclusion");
        return;
      }
      case Rule::kEqualityInitial: {
        if (!arity(p, path, 0)) return;
        if (!p.theta || !p.term || !p.term2) {
          err(path, "equality-initial needs a literal L(x) and terms t, s");
          return;
        }
        if (!p.theta->body.is_literal()) {
          err(path, "equality-initial L(x) is not a literal: " + to_string(p.theta->body));
          return;
        }
        Formula ne = Formula::neq(*p.term, *p.term2);
        Formula lt = negate(apply(*p.theta, *p.term));
        Formula ls = apply(*p.theta, *p.term2);
        for (const Formula& f : {ne, lt, ls}) {
          if (!G.count(f)) err(path, "equality-initial formula " + to_string(f) + " missing");
        }
        return;
      }
      case Rule::kArithInitial: {
        if (!arity(p, path, 0)) return;
        auto closes = [&](const Formula& f, bool log) {
          if (f.kind() == K::kEq && f.lhs() == f.rhs()) return true;
          if (is_closed(f)) {
            std::optional<bool> v = eval_arith(f);
            if (v && *v) return true;
          }
          if (std::find(trusted_.begin(), trusted_.end(), f) != trusted_.end()) {
            if (log) report.trusted_uses.push_back({path, to_string(f)});
            return true;
          }
          return false;
        };
        if (p.principal) {
          if (!G.count(*p.principal)) {
            err(path, "principal formula " + to_string(*p.principal) + " is not in the conclusion");
          } else if (!closes(*p.principal, true)) {
            err(path, "principal formula " + to_string(*p.principal) +
                          " is not t=t, a true closed bounded sentence, or a trusted axiom");
          }
          return;
        }
        for (const Formula& f : G) {
          if (closes(f, false)) {
            closes(f, true);
            return;
          }
        }
        err(path, "no formula of the conclusion is t=t, a true closed bounded sentence, or a "
                  "trusted axiom");
        return;
      }
      case Rule::kCut: {
        if (!arity(p, path, 2)) return;
        if (!p.cut) {
          err(path, "cut needs a cut formula");
          return;
        }
        if (!check_formula(*p.cut, path, "cut formula")) return;
        covered(p, 0, {negate(*p.cut)}, path);
        covered(p, 1, {*p.cut}, path);
        return;
      }
      case Rule::kExists: {
        if (!arity(p, path, 1)) return;
        const Formula* f = principal(p, path, {K::kExists});
        if (!f) return;
        if (!p.witness) {
          err(path, "exists needs a witness term");
          return;
        }
        covered(p, 0, {subst(f->body(), f->name(), *p.witness)}, path);
        return;
      }
      case Rule::kForall: {
        if (!arity(p, path, 1)) return;
        const Formula* f = principal(p, path, {K::kForall});
        if (!f || !eigen(p, path, {})) return;
        covered(p, 0, {subst(f->body(), f->name(), Term::var(p.eigenvar))}, path);
        return;
      }
      case Rule::kBExists: {
        if (!arity(p, path, 2)) return;
        const Formula* f = principal(p, path, {K::kBExists});
        if (!f) return;
        if (!p.witness) {
          err(path, "bexists needs a witness term");
          return;
        }
        covered(p, 0, {subst(f->body(), f->name(), *p.witness)}, path);
        covered(p, 1, {Formula::lt(*p.witness, f->bound())}, path);
        return;
      }
      case Rule::kBForall: {
        if (!arity(p, path, 1)) return;
        const Formula* f = principal(p, path, {K::kBForall});
        if (!f || !eigen(p, path, free_vars(f->bound()))) return;
        Term a = Term::var(p.eigenvar);
        covered(p, 0, {Formula::nlt(a, f->bound()), subst(f->body(), f->name(), a)}, path);
        return;
      }
      case Rule::kOr: {
        if (!arity(p, path, 1)) return;
        const Formula* f = principal(p, path, {K::kOr, K::kBigOr});
        if (!f) return;
        if (!p.index || *p.index >= f->kids().size()) {
          err(path, "or needs a disjunct index below " + std::to_string(f->kids().size()));
          return;
        }
        covered(p, 0, {f->kids()[*p.index]}, path);
        return;
      }
      case Rule::kAnd: {
        const Formula* f = principal(p, path, {K::kAnd, K::kBigAnd});
        if (!f || !arity(p, path, f->kids().size())) return;
        for (std::size_t i = 0; i < f->kids().size(); ++i) covered(p, i, {f->kids()[i]}, path);
        return;
      }
      case Rule::kR: {
        if (!arity(p, path, 1)) return;
        const Formula* f = principal(p, path, {K::kFix});
        if (!f) return;
        const OperatorEntry* op = op_of(*f, path);
        if (!op) return;
        covered(p, 0, {instantiate_fix(*op, f->lhs())}, path);
        return;
      }
      case Rule::kRbar: rbar(p, path); return;
      case Rule::kInd: ind(p, path); return;
    }
  }

  void rbar(const ProofNode& p, const std::string& path) {
    if (!arity(p, path, 2)) return;
    const Formula* f = principal(p, path, {K::kNFix});
    if (!f) return;
    const OperatorEntry* op = op_of(*f, path);
    if (!op) return;
    if (!p.sigma) {
      err(path, "Rbar needs a formula sigma(u)");
      return;
    }
    const Abstraction& sigma = *p.sigma;
    if (!check_formula(sigma.body, path, "sigma")) return;
    if (!eigen(p, path, free_vars(sigma))) return;
    if (th_.acc_only() && !op->is_acc()) {
      err(path, "operator " + op->name + " is not an Acc operator");
      return;
    }
    Term a = Term::var(p.eigenvar);
    Formula sigma_a = apply(sigma, a);
    std::optional<Formula> side;
    switch (th_.kind) {
      case TheoryKind::kPnId:
        if (!is_positive(sigma.body) && !is_negative(sigma.body)) {
          err(path, "sigma is neither positive nor negative: " + to_string(sigma.body));
          return;
        }
        side = negate(instantiate(*op, sigma, a));
        break;
      case TheoryKind::kPandnAcc: {
        const Formula& b = sigma.body;
        if (b.kind() != K::kAnd) {
          err(path, "sigma is not a conjunction ~D & C: " + to_string(b));
          return;
        }
        const Formula* dbar = nullptr;
        const Formula* c = nullptr;
        for (int i = 0; i < 2; ++i) {
          const Formula& x = b.kids()[i];
          const Formula& y = b.kids()[1 - i];
          if (is_negative(x) && is_positive(y)) {
            dbar = &x;
            c = &y;
            break;
          }
        }
        if (!dbar) {
          err(path, "sigma does not split into a negative and a positive conjunct: " +
                        to_string(b));
          return;
        }
        Formula phi_d = instantiate(*op, Abstraction{sigma.var, *dbar}, a);
        Formula phi_c = instantiate(*op, Abstraction{sigma.var, *c}, a);
        side = Formula::disj(negate(phi_d), negate(phi_c));
        break;
      }
      case TheoryKind::kPi01pAcc:
        try {
          side = negate(apply(phi_sigma(*op, sigma), a));
        } catch (const DomainError& e) {
          err(path, std::string("sigma does not fit phi_sigma: ") + e.what());
          return;
        }
        break;
    }
    covered(p, 0, {*side, sigma_a}, path);
    covered(p, 1, {negate(apply(sigma, f->lhs()))}, path);
  }

  void ind(const ProofNode& p, const std::string& path) {
    if (!arity(p, path, 3)) return;
    if (!p.theta || !p.term) {
      err(path, "ind needs an induction formula theta(x) and a term t");
      return;
    }
    const Abstraction& theta = *p.theta;
    if (!check_formula(theta.body, path, "induction formula")) return;
    ClassInfo c = classify(theta.body);
    unsigned bound = th_.ind_rank();
    if (!c.pi_rank_p || *c.pi_rank_p > bound) {
      err(path, "class violation: induction formula has Pi rank " +
                    (c.pi_rank_p ? std::to_string(*c.pi_rank_p) : std::string("undefined")) +
                    " above " + std::to_string(bound) + " allowed by " + to_string(th_));
      return;
    }
    std::set<std::string> payload = free_vars(theta);
    if (!eigen(p, path, payload)) return;
    Term a = Term::var(p.eigenvar);
    covered(p, 0, {apply(theta, Term::num(0))}, path);
    covered(p, 1,
            {negate(apply(theta, a)), apply(theta, Term::succ(a)),
             apply(theta, Term::add(a, Term::num(1)))},
            path);
    covered(p, 2, {negate(apply(theta, *p.term))}, path);
  }

  const TheoryId& th_;
  const OperatorRegistry& reg_;
  const std::vector<Formula>& trusted_;
};

}  // namespace

ProofReport check_proof(const ProofNode& p, const TheoryId& th, const OperatorRegistry& reg,
                        const std::vector<Formula>& trusted) {
  Checker c(th, reg, trusted);
  c.node(p, "$");
  return std::move(c.report);
}

// ---------------------------------------------------------------------------
// JSON

Json proof_to_json(const ProofNode& p) {
  Json j;
  j["rule"] = rule_name(p.rule);
  j["conclusion"] = sequent_to_json(p.conclusion);
  if (p.principal) j["principal"] = formula_to_json(*p.principal);
  if (p.cut) j["cut"] = formula_to_json(*p.cut);
  if (p.witness) j["witness"] = term_to_json(*p.witness);
  if (p.term) j["term"] = term_to_json(*p.term);
  if (p.term2) j["term2"] = term_to_json(*p.term2);
  if (!p.eigenvar.empty()) j["eigenvar"] = p.eigenvar;
  if (p.index) j["index"] = *p.index;
  if (p.sigma) j["sigma"] = abstraction_to_json(*p.sigma);
  if (p.theta) j["theta"] = abstraction_to_json(*p.theta);
  Json prem = Json::array();
  for (const ProofNode& q : p.premises) prem.push_back(proof_to_json(q));
  j["premises"] = prem;
  return j;
}

ProofNode proof_from_json(const Json& j, const std::string& path) {
  ProofNode p;
  p.rule = rule_from_name(json_string(json_field(j, "rule", path), path + ".rule"));
  p.conclusion = sequent_from_json(json_field(j, "conclusion", path), path + ".conclusion");
  if (j.contains("principal")) p.principal = formula_from_json(j["principal"], path + ".principal");
  if (j.contains("cut")) p.cut = formula_from_json(j["cut"], path + ".cut");
  if (j.contains("witness")) p.witness = term_from_json(j["witness"], path + ".witness");
  if (j.contains("term")) p.term = term_from_json(j["term"], path + ".term");
  if (j.contains("term2")) p.term2 = term_from_json(j["term2"], path + ".term2");
  if (j.contains("eigenvar")) p.eigenvar = json_string(j["eigenvar"], path + ".eigenvar");
  if (j.contains("index")) {
    p.index = static_cast<unsigned>(json_uint(j["index"], path + ".index"));
  }
  if (j.contains("sigma")) p.sigma = abstraction_from_json(j["sigma"], path + ".sigma");
  if (j.contains("theta")) p.theta = abstraction_from_json(j["theta"], path + ".theta");
  if (j.contains("premises")) {
    const Json& prem = j["premises"];
    if (!prem.is_array()) throw ParseError(path + ".premises: expected an array");
    for (std::size_t i = 0; i < prem.size(); ++i) {
      p.premises.push_back(proof_from_json(prem[i], path + ".premises[" + std::to_string(i) + "]"));
    }
  }
  return p;
}

Json document_to_json(const ProofDocument& d) {
  Json j;
  j["registry"] = registry_to_json(d.registry);
  if (!d.trusted.empty()) {
    Json t = Json::array();
    for (const Formula& f : d.trusted) t.push_back(formula_to_json(f));
    j["trusted_axioms"] = t;
  }
  if (d.theory) j["theory"] = *d.theory;
  j["proof"] = proof_to_json(d.proof);
  return j;
}

ProofDocument document_from_json(const Json& j) {
  ProofDocument d;
  if (j.contains("registry")) d.registry = registry_from_json(j["registry"], "$.registry");
  if (j.contains("trusted_axioms")) {
    const Json& t = j["trusted_axioms"];
    if (!t.is_array()) throw ParseError("$.trusted_axioms: expected an array");
    for (std::size_t i = 0; i < t.size(); ++i) {
      d.trusted.push_back(formula_from_json(t[i], "$.trusted_axioms[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("theory")) d.theory = json_string(j["theory"], "$.theory");
  d.proof = proof_from_json(json_field(j, "proof", "$"), "$.proof");
  return d;
}

Json report_to_json(const ProofReport& r, const TheoryId& th) {
  Json errors = Json::array();
  for (const Diagnostic& d : r.errors) errors.push_back({{"path", d.path}, {"message", d.message}});
  Json trusted = Json::array();
  for (const Diagnostic& d : r.trusted_uses) {
    trusted.push_back({{"path", d.path}, {"axiom", d.message}});
  }
  return {{"accepted", r.accepted()}, {"theory", to_string(th)}, {"errors", errors},
          {"trusted_axioms_used", trusted}};
}

// ---------------------------------------------------------------------------
// Renaming

namespace {

void collect_names(const ProofNode& p, std::set<std::string>& eigen, std::set<std::string>& all) {
  if (!p.eigenvar.empty()) eigen.insert(p.eigenvar);
  auto add = [&](const std::set<std::string>& s) { all.insert(s.begin(), s.end()); };
  for (const Formula& f : p.conclusion) add(free_vars(f));
  if (p.principal) add(free_vars(*p.principal));
  if (p.cut) add(free_vars(*p.cut));
  if (p.witness) add(free_vars(*p.witness));
  if (p.term) add(free_vars(*p.term));
  if (p.term2) add(free_vars(*p.term2));
  if (p.sigma) add(free_vars(*p.sigma));
  if (p.theta) add(free_vars(*p.theta));
  for (const ProofNode& q : p.premises) collect_names(q, eigen, all);
}

Term rename_term(const Term& t, const std::map<std::string, Term>& m) {
  Formula f = subst(Formula::eq(t, Term()), m);
  return f.lhs();
}

Abstraction rename_abs(const Abstraction& a, std::map<std::string, Term> m) {
  m.erase(a.var);
  return Abstraction{a.var, subst(a.body, m)};
}

ProofNode rename_rec(const ProofNode& p, const std::map<std::string, Term>& m) {
  ProofNode q;
  q.rule = p.rule;
  for (const Formula& f : p.conclusion) q.conclusion.insert(subst(f, m));
  if (p.principal) q.principal = subst(*p.principal, m);
  if (p.cut) q.cut = subst(*p.cut, m);
  if (p.witness) q.witness = rename_term(*p.witness, m);
  if (p.term) q.term = rename_term(*p.term, m);
  if (p.term2) q.term2 = rename_term(*p.term2, m);
  if (!p.eigenvar.empty()) {
    auto it = m.find(p.eigenvar);
    q.eigenvar = it == m.end() ? p.eigenvar : it->second.name();
  }
  q.index = p.index;
  if (p.sigma) q.sigma = rename_abs(*p.sigma, m);
  if (p.theta) q.theta = rename_abs(*p.theta, m);
  for (const ProofNode& c : p.premises) q.premises.push_back(rename_rec(c, m));
  return q;
}

}  // namespace

ProofNode rename_eigenvariables(const ProofNode& p, const std::string& suffix) {
  std::set<std::string> eigen, all;
  collect_names(p, eigen, all);
  std::map<std::string, Term> m;
  for (const std::string& a : eigen) {
    std::string b = a + suffix;
    if (!is_identifier(b) || (all.count(b) && !eigen.count(b))) {
      throw DomainError("renamed eigenvariable " + b + " is not fresh");
    }
    m.emplace(a, Term::var(b));
  }
  return rename_rec(p, m);
}

}  // namespace ordcalc
