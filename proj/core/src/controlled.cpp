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

#include "ordcalc/controlled.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace ordcalc {

namespace {

struct CRuleInfo {
  CRule rule;
  const char* name;
};

constexpr CRuleInfo kCRules[] = {
    {CRule::kInitial, "initial"},   {CRule::kOr, "or"},       {CRule::kAnd, "and"},
    {CRule::kExists, "exists"},     {CRule::kForallOmega, "forall-omega"},
    {CRule::kILess, "I<"},          {CRule::kIbarLess, "Ibar<"}, {CRule::kCl, "Cl"},
    {CRule::kCut, "cut"},           {CRule::kHyp, "hyp"},
};

using K = Formula::Kind;

bool contains(const std::vector<PsiTerm>& v, const PsiTerm& t) {
  return std::find(v.begin(), v.end(), t) != v.end();
}

// Components of a finite disjunction or conjunction, bounded quantifiers
// with closed bounds included.
std::optional<std::vector<Formula>> components(const Formula& f, bool disjunctive) {
  K bin = disjunctive ? K::kOr : K::kAnd;
  K list = disjunctive ? K::kBigOr : K::kBigAnd;
  K bq = disjunctive ? K::kBExists : K::kBForall;
  if (f.kind() == bin || f.kind() == list) return f.kids();
  if (f.kind() == bq && is_closed(f.bound())) {
    std::uint64_t n = eval_term(f.bound());
    if (n > (1u << 16)) return std::nullopt;
    std::vector<Formula> out;
    for (std::uint64_t i = 0; i < n; ++i) {
      out.push_back(eval_closed_terms(subst(f.body(), f.name(), Term::num(i))));
    }
    return out;
  }
  return std::nullopt;
}

std::string wire(const PsiTerm& t) { return psi_to_wire(t); }

class CertChecker {
 public:
  explicit CertChecker(const OperatorRegistry& reg) : reg_(reg) {}

  void node(const Certificate& c, const std::string& path) {
    if (!judgment(c, path)) return;
    rule(c, path);
    for (std::size_t i = 0; i < c.premises.size(); ++i) {
      node(c.premises[i], pp(path, i));
    }
  }

  CertificateReport report;

 private:
  static std::string pp(const std::string& path, std::size_t i) {
    return path + ".premises[" + std::to_string(i) + "]";
  }

  void err(const std::string& path, const std::string& msg) {
    report.errors.push_back({path, msg});
  }

  bool ordinal_ok(const PsiTerm& t, const std::string& path, const std::string& what) {
    if (!validate_psi(t).empty() || !is_nf(t)) {
      err(path, what + " is not a normal-form term: " + wire(t));
      return false;
    }
    return true;
  }

  bool judgment(const Certificate& c, const std::string& path) {
    bool ok = ordinal_ok(c.gamma, path, "gamma") && ordinal_ok(c.a, path, "bound a");
    for (const PsiTerm& t : c.theta) ok = ordinal_ok(t, path, "theta element") && ok;
    if (c.d > 3) {
      err(path, "degree bound d=" + std::to_string(c.d) + " exceeds 3");
      ok = false;
    }
    for (const Formula& f : c.sequent) {
      if (!is_closed(f)) {
        err(path, "sequent formula is not closed: " + to_string(f));
        ok = false;
      }
      if (has_set_var(f)) {
        err(path, "sequent formula contains a set variable: " + to_string(f));
        ok = false;
      }
      for (const std::string& op : unknown_operators(f, reg_)) {
        err(path, "unknown operator " + op);
        ok = false;
      }
    }
    if (!ok) return false;
    for (const PsiTerm& s : stage_set(c.sequent)) {
      if (!ordinal_ok(s, path, "stage tag")) return false;
    }
    if (!h_member(c.gamma, c.theta, c.a)) {
      err(path, "control condition fails: bound " + wire(c.a) + " is not in H_" + wire(c.gamma) +
                    "[theta]");
      ok = false;
    }
    for (const PsiTerm& s : stage_set(c.sequent)) {
      if (!h_member(c.gamma, c.theta, s)) {
        err(path, "control condition fails: stage " + wire(s) + " in k(Gamma) is not in H_" +
                      wire(c.gamma) + "[theta]");
        ok = false;
      }
    }
    return ok;
  }

  // Premise relation shared by every rule. `extra` is the stage the
  // premise operator may add to theta.
  void premise(const Certificate& c, std::size_t i, const std::vector<Formula>& added,
               const std::optional<PsiTerm>& extra, const std::string& path) {
    const Certificate& p = c.premises[i];
    std::string ppath = pp(path, i);
    if (!psi_lt(p.a, c.a)) {
      err(ppath, "premise bound " + wire(p.a) + " is not below " + wire(c.a));
    }
    if (cmp_psi_unchecked(p.gamma, c.gamma) == Ord::GT) {
      err(ppath, "premise operator H_" + wire(p.gamma) + " is not contained in H_" + wire(c.gamma));
    }
    for (const PsiTerm& t : p.theta) {
      if (contains(c.theta, t) || (extra && *extra == t)) continue;
      if (h_member(c.gamma, c.theta, t)) continue;
      err(ppath, "premise theta element " + wire(t) + " is not available at the conclusion");
    }
    if (p.d > c.d) {
      err(ppath, "premise degree bound " + std::to_string(p.d) + " exceeds " + std::to_string(c.d));
    }
    std::vector<Formula> canon_added;
    for (const Formula& f : added) canon_added.push_back(eval_closed_terms(f));
    for (const Formula& f : p.sequent) {
      Formula g = eval_closed_terms(f);
      bool in_concl = std::any_of(c.sequent.begin(), c.sequent.end(), [&](const Formula& h) {
        return h == f || eval_closed_terms(h) == g;
      });
      if (in_concl) continue;
      if (std::find(canon_added.begin(), canon_added.end(), g) != canon_added.end()) continue;
      std::string expect;
      for (const Formula& a : canon_added) expect += (expect.empty() ? "" : ", ") + to_string(a);
      err(ppath, "premise formula " + to_string(f) +
                     " is neither in the conclusion nor among the added {" + expect + "}");
    }
  }

  bool arity(const Certificate& c, const std::string& path, std::size_t n) {
    if (c.premises.size() == n) return true;
    err(path, std::string(crule_name(c.rule)) + " expects " + std::to_string(n) +
                  " premise(s), got " + std::to_string(c.premises.size()));
    return false;
  }

  const Formula* principal(const Certificate& c, const std::string& path) {
    if (!c.principal) {
      err(path, std::string(crule_name(c.rule)) + " needs a principal formula");
      return nullptr;
    }
    if (!c.sequent.count(*c.principal)) {
      err(path, "principal formula " + to_string(*c.principal) + " is not in the sequent");
      return nullptr;
    }
    return &*c.principal;
  }

  void rule(const Certificate& c, const std::string& path) {
    switch (c.rule) {
      case CRule::kInitial: {
        if (!arity(c, path, 0)) return;
        for (const Formula& f : c.sequent) {
          std::optional<bool> v = eval_arith(f);
          if (v && *v) return;
        }
        err(path, "no true arithmetic formula decided by evaluation in the sequent");
        return;
      }
      case CRule::kHyp:
        if (!arity(c, path, 0)) return;
        report.hypotheses.push_back({path, c.note.empty() ? to_string(c.sequent) : c.note});
        return;
      case CRule::kOr: {
        const Formula* f = principal(c, path);
        if (!f || !arity(c, path, 1)) return;
        auto parts = components(*f, true);
        if (!parts || parts->empty()) {
          err(path, "principal formula is not a non-empty finite disjunction: " + to_string(*f));
          return;
        }
        if (!c.index || *c.index >= parts->size()) {
          err(path, "or needs a disjunct index below " + std::to_string(parts->size()));
          return;
        }
        premise(c, 0, {(*parts)[*c.index]}, std::nullopt, path);
        return;
      }
      case CRule::kAnd: {
        const Formula* f = principal(c, path);
        if (!f) return;
        auto parts = components(*f, false);
        if (!parts) {
          err(path, "principal formula is not a finite conjunction: " + to_string(*f));
          return;
        }
        if (!arity(c, path, parts->size())) return;
        for (std::size_t i = 0; i < parts->size(); ++i) {
          premise(c, i, {(*parts)[i]}, std::nullopt, path);
        }
        return;
      }
      case CRule::kExists: {
        const Formula* f = principal(c, path);
        if (!f || !arity(c, path, 1)) return;
        if (f->kind() != K::kExists) {
          err(path, "principal formula is not existential: " + to_string(*f));
          return;
        }
        if (!c.witness) {
          err(path, "exists needs a numeral witness");
          return;
        }
        premise(c, 0, {subst(f->body(), f->name(), Term::num(*c.witness))}, std::nullopt, path);
        return;
      }
      case CRule::kForallOmega: {
        const Formula* f = principal(c, path);
        if (!f) return;
        if (f->kind() != K::kForall) {
          err(path, "principal formula is not universal: " + to_string(*f));
          return;
        }
        if (c.premises.empty() || c.instances.size() != c.premises.size()) {
          err(path, "forall-omega needs one instance number per expanded premise");
          return;
        }
        if (!c.schematic_bound) {
          err(path, "forall-omega needs a declared schematic bound");
          return;
        }
        const PsiTerm& sb = *c.schematic_bound;
        if (!ordinal_ok(sb, path, "schematic bound")) return;
        if (!psi_lt(sb, c.a)) {
          err(path, "schematic bound " + wire(sb) + " is not below " + wire(c.a));
        }
        std::set<std::uint64_t> seen;
        for (std::size_t i = 0; i < c.premises.size(); ++i) {
          if (!seen.insert(c.instances[i]).second) {
            err(pp(path, i), "instance " + std::to_string(c.instances[i]) + " repeats");
          }
          if (psi_lt(sb, c.premises[i].a)) {
            err(pp(path, i), "premise bound exceeds the schematic bound " + wire(sb));
          }
          premise(c, i, {subst(f->body(), f->name(), Term::num(c.instances[i]))}, std::nullopt,
                  path);
        }
        return;
      }
      case CRule::kCl: {
        const Formula* f = principal(c, path);
        if (!f || !arity(c, path, 1)) return;
        if (f->kind() != K::kFix || !f->omega_stage()) {
          err(path, "Cl needs a principal atom I^{<Omega}(n): " + to_string(*f));
          return;
        }
        const OperatorEntry& op = reg_.at(f->name());
        premise(c, 0, {instantiate_fix(op, f->lhs())}, std::nullopt, path);
        return;
      }
      case CRule::kILess: {
        const Formula* f = principal(c, path);
        if (!f || !arity(c, path, 1)) return;
        if (f->kind() != K::kFix) {
          err(path, "I< needs a principal atom I^{<alpha}(n): " + to_string(*f));
          return;
        }
        if (!c.beta) {
          err(path, "I< needs a stage beta");
          return;
        }
        const PsiTerm& beta = *c.beta;
        if (!ordinal_ok(beta, path, "stage beta")) return;
        if (!psi_lt(beta, f->stage())) {
          err(path, "stage beta " + wire(beta) + " is not below alpha " + wire(f->stage()));
          return;
        }
        const OperatorEntry& op = reg_.at(f->name());
        std::optional<PsiTerm> extra;
        if (op.mentions_set()) {
          if (!psi_lt(beta, c.a)) {
            err(path, "stage beta " + wire(beta) + " is not below the bound " + wire(c.a));
          }
          extra = beta;
        } else if (!c.premises[0].theta.empty() &&
                   c.premises[0].theta != c.theta) {
          // H' = H when X does not occur; theta must not grow.
          for (const PsiTerm& t : c.premises[0].theta) {
            if (!contains(c.theta, t) && !h_member(c.gamma, c.theta, t)) {
              err(pp(path, 0), "theta may not grow when X does not occur in the operator");
            }
          }
        }
        premise(c, 0, {instantiate_stage(op, beta, f->lhs())}, extra, path);
        return;
      }
      case CRule::kIbarLess: {
        const Formula* f = principal(c, path);
        if (!f) return;
        if (f->kind() != K::kNFix) {
          err(path, "Ibar< needs a principal atom ~I^{<alpha}(n): " + to_string(*f));
          return;
        }
        if (c.stages.size() != c.premises.size()) {
          err(path, "Ibar< needs one stage per expanded premise");
          return;
        }
        const PsiTerm& alpha = f->stage();
        std::vector<PsiTerm> sample;
        if (!alpha.is_zero()) sample.push_back(PsiTerm());
        for (const PsiTerm& s : stage_set(c.sequent)) {
          if (psi_lt(s, alpha)) sample.push_back(s);
        }
        for (const PsiTerm& s : c.declared_stages) {
          if (!ordinal_ok(s, path, "declared stage")) return;
          if (!psi_lt(s, alpha)) {
            err(path, "declared stage " + wire(s) + " is not below alpha " + wire(alpha));
            return;
          }
          sample.push_back(s);
        }
        for (const PsiTerm& s : sample) {
          if (!contains(c.stages, s)) {
            err(path, "Ibar< sample stage " + wire(s) + " has no expanded premise");
          }
        }
        if (c.schematic_bound) {
          if (!ordinal_ok(*c.schematic_bound, path, "schematic bound")) return;
          if (!psi_lt(*c.schematic_bound, c.a)) {
            err(path, "schematic bound " + wire(*c.schematic_bound) + " is not below " + wire(c.a));
          }
        }
        const OperatorEntry& op = reg_.at(f->name());
        for (std::size_t i = 0; i < c.premises.size(); ++i) {
          const PsiTerm& beta = c.stages[i];
          if (!ordinal_ok(beta, pp(path, i), "stage")) continue;
          if (!psi_lt(beta, alpha)) {
            err(pp(path, i), "stage " + wire(beta) + " is not below alpha " + wire(alpha));
            continue;
          }
          if (c.schematic_bound && psi_lt(*c.schematic_bound, c.premises[i].a)) {
            err(pp(path, i), "premise bound exceeds the schematic bound");
          }
          premise(c, i, {negate(instantiate_stage(op, beta, f->lhs()))}, beta, path);
        }
        return;
      }
      case CRule::kCut: {
        if (!arity(c, path, 2)) return;
        if (!c.cut) {
          err(path, "cut needs a cut formula");
          return;
        }
        const Formula& cf = *c.cut;
        if (!is_closed(cf) || has_set_var(cf) || !unknown_operators(cf, reg_).empty()) {
          err(path, "cut formula is not a closed sentence: " + to_string(cf));
          return;
        }
        unsigned g = dg(cf);
        if (g >= c.d) {
          err(path, "cut formula degree " + std::to_string(g) + " is not below d=" +
                        std::to_string(c.d));
        }
        premise(c, 0, {negate(cf)}, std::nullopt, path);
        premise(c, 1, {cf}, std::nullopt, path);
        return;
      }
    }
  }

  const OperatorRegistry& reg_;
};

}  // namespace

const char* crule_name(CRule r) {
  for (const CRuleInfo& i : kCRules) {
    if (i.rule == r) return i.name;
  }
  return "?";
}

CRule crule_from_name(const std::string& s) {
  for (const CRuleInfo& i : kCRules) {
    if (s == i.name) return i.rule;
  }
  throw ParseError("unknown certificate rule \"" + s + "\"");
}

CertificateReport check_certificate(const Certificate& c, const OperatorRegistry& reg) {
  CertChecker k(reg);
  k.node(c, "$");
  return std::move(k.report);
}

std::size_t certificate_size(const Certificate& c) {
  std::size_t n = 1;
  for (const Certificate& p : c.premises) n += certificate_size(p);
  return n;
}

PsiTerm cut_elimination_bound(const PsiTerm& a) {
  if (is_countable_psi(a)) return countable_omega_pow(a);
  return omega_pow_above(a);
}

// ---------------------------------------------------------------------------
// Bounding

namespace {

using StageMap = std::map<Formula, PsiTerm>;

class Bounder {
 public:
  explicit Bounder(const OperatorRegistry& reg) : reg_(reg) {}

  Certificate run(const Certificate& c, const StageMap& stages, const PsiTerm& gamma,
                  const std::vector<PsiTerm>& theta, const std::optional<PsiTerm>& extra,
                  const std::string& path) {
    Certificate out = c;
    if (extra && !contains(out.theta, *extra) && !h_member(c.gamma, c.theta, *extra)) {
      out.theta.push_back(*extra);
    }
    out.sequent.clear();
    for (const Formula& f : c.sequent) out.sequent.insert(apply(f, stages, path));
    if (c.principal) out.principal = apply(*c.principal, stages, path);
    // New stage tags may leave the node's own operator; fall back to the
    // conclusion's, which contains it by monotonicity.
    bool controlled = std::all_of(out.sequent.begin(), out.sequent.end(), [&](const Formula& f) {
      std::vector<PsiTerm> tags = stage_set(f);
      return std::all_of(tags.begin(), tags.end(),
                         [&](const PsiTerm& t) { return h_member(out.gamma, out.theta, t); });
    });
    if (!controlled) {
      out.gamma = psi_max(out.gamma, gamma);
      for (const PsiTerm& t : theta) {
        if (!contains(out.theta, t)) out.theta.push_back(t);
      }
    }
    out.premises.clear();

    std::optional<PsiTerm> principal_stage;
    if (c.principal) principal_stage = stage_of(*c.principal, stages, path);

    PsiTerm fill = principal_stage ? *principal_stage : bound_;
    for (std::size_t i = 0; i < c.premises.size(); ++i) {
      const Certificate& p = c.premises[i];
      std::string ppath = path + ".premises[" + std::to_string(i) + "]";
      StageMap next = inherit(c, p, stages);
      std::optional<PsiTerm> extra;
      std::optional<std::pair<Formula, Formula>> rewrite;
      if (c.rule == CRule::kCl) {
        // Cl becomes I< at the premise bound a0.
        const Formula& atom = *c.principal;
        const OperatorEntry& op = reg_.at(atom.name());
        PsiTerm a0 = p.a;
        for (const Formula& f : p.sequent) {
          if (eval_closed_terms(f) == eval_closed_terms(instantiate_fix(op, atom.lhs()))) {
            next[f] = a0;
          }
        }
        out.rule = CRule::kILess;
        out.beta = a0;
        if (op.mentions_set()) extra = a0;
      } else if (c.rule == CRule::kILess) {
        const Formula& atom = *c.principal;
        const OperatorEntry& op = reg_.at(atom.name());
        PsiTerm beta = *c.beta;
        if (atom.omega_stage() && !op.mentions_set() && !psi_lt(beta, *principal_stage)) {
          beta = PsiTerm();
        }
        out.beta = beta;
        Formula old_body = instantiate_stage(op, *c.beta, atom.lhs());
        Formula new_body = instantiate_stage(op, beta, atom.lhs());
        if (!(old_body == new_body)) rewrite = std::make_pair(old_body, new_body);
        if (op.mentions_set()) extra = beta;
      } else if (c.rule == CRule::kIbarLess && i < c.stages.size()) {
        extra = c.stages[i];
      }
      for (const Formula& f : p.sequent) next.emplace(f, fill);
      Certificate q = run(p, next, out.gamma, out.theta, extra, ppath);
      if (rewrite) {
        Sequent seq;
        for (const Formula& f : q.sequent) seq.insert(f == rewrite->first ? rewrite->second : f);
        q.sequent = std::move(seq);
      }
      out.premises.push_back(std::move(q));
    }
    return out;
  }

  PsiTerm bound_;

 private:
  StageMap inherit(const Certificate& c, const Certificate& p, const StageMap& stages) {
    StageMap next;
    for (const Formula& f : p.sequent) {
      if (c.sequent.count(f)) next.emplace(f, stages.at(f));
    }
    return next;
  }

  PsiTerm stage_of(const Formula& f, const StageMap& m, const std::string& path) {
    auto it = m.find(f);
    if (it == m.end()) throw DomainError(path + ": no stage for " + to_string(f));
    return it->second;
  }

  Formula apply(const Formula& f, const StageMap& m, const std::string& path) {
    return bound_positive(f, stage_of(f, m, path));
  }

  const OperatorRegistry& reg_;
};

void collect_bounding_errors(const Certificate& c, const std::string& path, Diagnostics& out) {
  if (c.d != 1) out.push_back({path, "degree bound d=" + std::to_string(c.d) + " is not 1"});
  for (const Formula& f : c.sequent) {
    if (!is_positive(f)) out.push_back({path, "sequent formula is not positive: " + to_string(f)});
  }
  for (std::size_t i = 0; i < c.premises.size(); ++i) {
    collect_bounding_errors(c.premises[i], path + ".premises[" + std::to_string(i) + "]", out);
  }
}

}  // namespace

Certificate apply_bounding(const Certificate& c, const PsiTerm& b, const OperatorRegistry& reg) {
  CertificateReport pre = check_certificate(c, reg);
  if (!pre.accepted()) {
    throw DomainError("input certificate is rejected: " + pre.errors[0].path + ": " +
                      pre.errors[0].message);
  }
  Diagnostics errs;
  collect_bounding_errors(c, "$", errs);
  if (!errs.empty()) throw DomainError(errs[0].path + ": " + errs[0].message);
  const PsiTerm omega = PsiTerm::omega_const();
  if (!validate_psi(b).empty() || !is_nf(b)) {
    throw DomainError("stage b is not a normal-form term: " + wire(b));
  }
  if (!psi_lt(c.a, omega)) throw DomainError("bound a=" + wire(c.a) + " is not below Omega");
  if (psi_lt(b, c.a)) throw DomainError("stage b=" + wire(b) + " is below a=" + wire(c.a));
  if (!psi_lt(b, omega)) throw DomainError("stage b=" + wire(b) + " is not below Omega");
  if (!h_member(c.gamma, c.theta, b)) {
    throw DomainError("stage b=" + wire(b) + " is not in H_" + wire(c.gamma) + "[theta]");
  }
  StageMap root;
  for (const Formula& f : c.sequent) root.emplace(f, b);
  Bounder bd(reg);
  bd.bound_ = b;
  Certificate out = bd.run(c, root, c.gamma, c.theta, std::nullopt, "$");
  CertificateReport post = check_certificate(out, reg);
  if (!post.accepted()) {
    throw DomainError("bounded certificate is rejected: " + post.errors[0].path + ": " +
                      post.errors[0].message);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Json psi_list(const std::vector<PsiTerm>& v) {
  Json a = Json::array();
  for (const PsiTerm& t : v) a.push_back(psi_to_json(t));
  return a;
}

std::vector<PsiTerm> psi_list_from(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  std::vector<PsiTerm> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(psi_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["rule"] = crule_name(c.rule);
  j["gamma"] = psi_to_json(c.gamma);
  if (!c.theta.empty()) j["theta"] = psi_list(c.theta);
  j["a"] = psi_to_json(c.a);
  j["d"] = c.d;
  j["sequent"] = sequent_to_json(c.sequent);
  if (c.principal) j["principal"] = formula_to_json(*c.principal);
  if (c.index) j["index"] = *c.index;
  if (c.witness) j["witness"] = *c.witness;
  if (!c.instances.empty()) j["instances"] = c.instances;
  if (c.beta) j["beta"] = psi_to_json(*c.beta);
  if (!c.stages.empty()) j["stages"] = psi_list(c.stages);
  if (!c.declared_stages.empty()) j["declared_stages"] = psi_list(c.declared_stages);
  if (c.schematic_bound) j["schematic_bound"] = psi_to_json(*c.schematic_bound);
  if (c.cut) j["cut"] = formula_to_json(*c.cut);
  if (!c.note.empty()) j["note"] = c.note;
  Json prem = Json::array();
  for (const Certificate& p : c.premises) prem.push_back(certificate_to_json(p));
  j["premises"] = prem;
  return j;
}

Certificate certificate_from_json(const Json& j, const std::string& path) {
  Certificate c;
  c.rule = crule_from_name(json_string(json_field(j, "rule", path), path + ".rule"));
  c.gamma = psi_from_json(json_field(j, "gamma", path), path + ".gamma");
  if (j.contains("theta")) c.theta = psi_list_from(j["theta"], path + ".theta");
  c.a = psi_from_json(json_field(j, "a", path), path + ".a");
  c.d = static_cast<unsigned>(json_uint(json_field(j, "d", path), path + ".d"));
  c.sequent = sequent_from_json(json_field(j, "sequent", path), path + ".sequent");
  if (j.contains("principal")) c.principal = formula_from_json(j["principal"], path + ".principal");
  if (j.contains("index")) c.index = static_cast<unsigned>(json_uint(j["index"], path + ".index"));
  if (j.contains("witness")) c.witness = json_uint(j["witness"], path + ".witness");
  if (j.contains("instances")) {
    const Json& a = j["instances"];
    if (!a.is_array()) throw ParseError(path + ".instances: expected an array");
    for (std::size_t i = 0; i < a.size(); ++i) {
      c.instances.push_back(json_uint(a[i], path + ".instances[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("beta")) c.beta = psi_from_json(j["beta"], path + ".beta");
  if (j.contains("stages")) c.stages = psi_list_from(j["stages"], path + ".stages");
  if (j.contains("declared_stages")) {
    c.declared_stages = psi_list_from(j["declared_stages"], path + ".declared_stages");
  }
  if (j.contains("schematic_bound")) {
    c.schematic_bound = psi_from_json(j["schematic_bound"], path + ".schematic_bound");
  }
  if (j.contains("cut")) c.cut = formula_from_json(j["cut"], path + ".cut");
  if (j.contains("note")) c.note = json_string(j["note"], path + ".note");
  if (j.contains("premises")) {
    const Json& prem = j["premises"];
    if (!prem.is_array()) throw ParseError(path + ".premises: expected an array");
    for (std::size_t i = 0; i < prem.size(); ++i) {
      c.premises.push_back(
          certificate_from_json(prem[i], path + ".premises[" + std::to_string(i) + "]"));
    }
  }
  return c;
}

Json certificate_document_to_json(const CertificateDocument& d) {
  return {{"registry", registry_to_json(d.registry)},
          {"certificate", certificate_to_json(d.certificate)}};
}

CertificateDocument certificate_document_from_json(const Json& j) {
  CertificateDocument d;
  if (j.contains("registry")) d.registry = registry_from_json(j["registry"], "$.registry");
  d.certificate = certificate_from_json(json_field(j, "certificate", "$"), "$.certificate");
  return d;
}

Json certificate_report_to_json(const CertificateReport& r) {
  Json errors = Json::array();
  for (const Diagnostic& d : r.errors) errors.push_back({{"path", d.path}, {"message", d.message}});
  Json hyps = Json::array();
  for (const Diagnostic& d : r.hypotheses) hyps.push_back({{"path", d.path}, {"sequent", d.message}});
  return {{"accepted", r.accepted()}, {"errors", errors}, {"hypotheses", hyps}};
}

}  // namespace ordcalc
