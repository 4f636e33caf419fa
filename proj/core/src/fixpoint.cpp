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

#include "ordcalc/fixpoint.hpp"

#include <algorithm>

namespace ordcalc {

bool is_transitive(const FiniteRelation& r) {
  for (const auto& [a, b] : r.edges) {
    for (auto it = r.edges.lower_bound({b, 0}); it != r.edges.end() && it->first == b; ++it) {
      if (!r.edges.count({a, it->second})) return false;
    }
  }
  return true;
}

FiniteRelation transitive_closure(const FiniteRelation& r) {
  FiniteRelation out = r;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> add;
    for (const auto& [a, b] : out.edges) {
      for (auto it = out.edges.lower_bound({b, 0}); it != out.edges.end() && it->first == b;
           ++it) {
        if (!out.edges.count({a, it->second})) add.emplace_back(a, it->second);
      }
    }
    for (const auto& e : add) changed |= out.edges.insert(e).second;
  }
  out.transitive = true;
  return out;
}

Diagnostics validate_relation(const FiniteRelation& r) {
  Diagnostics out;
  std::size_t i = 0;
  for (const auto& [a, b] : r.edges) {
    if (a >= r.n || b >= r.n) {
      out.push_back({"$.edges[" + std::to_string(i) + "]",
                     "edge (" + std::to_string(a) + ", " + std::to_string(b) +
                         ") leaves the universe [0, " + std::to_string(r.n) + ")"});
    }
    ++i;
  }
  if (r.transitive && !is_transitive(r)) {
    out.push_back({"$.transitive", "relation is declared transitive but is not"});
  }
  return out;
}

OperatorEntry acc_operator(const FiniteRelation& r, const std::string& name) {
  std::vector<Formula> cases;
  for (const auto& [a, b] : r.edges) {
    cases.push_back(Formula::conj(Formula::eq(Term::var("y"), Term::num(a)),
                                  Formula::eq(Term::var("x"), Term::num(b))));
  }
  Formula theta0 = Formula::big_or(cases);
  OperatorEntry e;
  e.name = name;
  e.body = Formula::forall(
      "y", Formula::disj(negate(theta0), Formula::mem("X", Term::var("y"))));
  e.acc = match_acc(e.body, e.var, e.setvar);
  return e;
}

namespace {

bool eval_at(const OperatorEntry& op, const std::vector<bool>& set, std::uint64_t m,
             std::uint64_t n, bool* truncated) {
  EvalContext ctx;
  ctx.universe = n;
  ctx.truncated = truncated;
  ctx.atom = [&](const Formula& atom, std::uint64_t v) -> bool {
    if ((atom.kind() == Formula::Kind::kMem || atom.kind() == Formula::Kind::kNMem) &&
        atom.name() == op.setvar) {
      return v < set.size() && set[v];
    }
    throw DomainError("operator " + op.name + " mentions atom " + atom.key());
  };
  return eval_formula(op.body, Env{{op.var, m}}, ctx);
}

std::vector<bool> apply_op(const OperatorEntry& op, const std::vector<bool>& set,
                           std::uint64_t n, bool* truncated) {
  std::vector<bool> out(n, false);
  for (std::uint64_t m = 0; m < n; ++m) out[m] = eval_at(op, set, m, n, truncated);
  return out;
}

std::vector<std::uint64_t> members(const std::vector<bool>& s) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < s.size(); ++i) {
    if (s[i]) out.push_back(i);
  }
  return out;
}

std::vector<bool> indicator(const std::vector<std::uint64_t>& m, std::uint64_t n) {
  std::vector<bool> out(n, false);
  for (std::uint64_t v : m) {
    if (v < n) out[v] = true;
  }
  return out;
}

}  // namespace

StageTrace lfp_stages(const OperatorEntry& op, std::uint64_t n) {
  StageTrace t;
  t.op = op.name;
  t.n = n;
  bool truncated = false;
  std::vector<bool> cur(n, false);
  t.stages.push_back({});
  // A positive operator is monotone, so the chain grows at most n times.
  for (std::uint64_t k = 0; k <= n; ++k) {
    std::vector<bool> next = apply_op(op, cur, n, &truncated);
    if (next == cur) {
      t.closure = k;
      t.truncated = truncated && !op.is_acc();
      return t;
    }
    for (std::uint64_t i = 0; i < n; ++i) {
      if (cur[i] && !next[i]) {
        throw DomainError("operator " + op.name + " is not monotone at " + std::to_string(i));
      }
    }
    cur = std::move(next);
    t.stages.push_back(members(cur));
  }
  throw DomainError("operator " + op.name + " did not stabilise within " + std::to_string(n + 1) +
                    " stages");
}

Norm norm(const StageTrace& t, std::uint64_t elem) {
  for (std::size_t k = 1; k < t.stages.size(); ++k) {
    if (std::binary_search(t.stages[k].begin(), t.stages[k].end(), elem)) return k - 1;
  }
  return std::nullopt;
}

Norm norm(const OperatorEntry& op, std::uint64_t elem, std::uint64_t n) {
  return norm(lfp_stages(op, n), elem);
}

std::string norm_to_string(const Norm& v) { return v ? std::to_string(*v) : "inf"; }

AccPart acc_part(const FiniteRelation& r) {
  std::vector<std::vector<std::uint64_t>> preds(r.n);
  for (const auto& [a, b] : r.edges) {
    if (a < r.n && b < r.n) preds[b].push_back(a);
  }
  AccPart out;
  std::vector<bool> in(r.n, false);
  for (std::uint64_t level = 0;; ++level) {
    std::vector<std::uint64_t> fresh;
    for (std::uint64_t v = 0; v < r.n; ++v) {
      if (in[v]) continue;
      bool ok = std::all_of(preds[v].begin(), preds[v].end(),
                            [&](std::uint64_t p) { return static_cast<bool>(in[p]); });
      if (ok) fresh.push_back(v);
    }
    if (fresh.empty()) break;
    for (std::uint64_t v : fresh) {
      in[v] = true;
      out.rank[v] = level;
    }
  }
  out.w = members(in);
  return out;
}

namespace {

FixpointReport check_set(const OperatorEntry& op, const std::vector<bool>& set, std::uint64_t n) {
  FixpointReport rep;
  bool truncated = false;
  std::vector<bool> img = apply_op(op, set, n, &truncated);
  rep.truncated = truncated && !op.is_acc();
  for (std::uint64_t m = 0; m < n; ++m) {
    if (img[m] && !set[m]) {
      rep.closed = false;
      rep.counterexamples.push_back(
          {"closure", std::to_string(m) + " satisfies phi(I) but is not in I"});
    }
    if (set[m] && !img[m]) {
      rep.supported = false;
      rep.counterexamples.push_back(
          {"support", std::to_string(m) + " is in I but does not satisfy phi(I)"});
    }
  }
  if (op.is_acc()) {
    // Prog(I) for the order given by theta0: every m whose predecessors
    // all lie in I lies in I.
    const AccShape& acc = *op.acc;
    bool prog = true;
    for (std::uint64_t m = 0; m < n; ++m) {
      bool below = true;
      for (std::uint64_t y = 0; y < n && below; ++y) {
        Env env{{op.var, m}, {acc.y, y}};
        if (!*eval_arith(acc.theta0, env)) continue;
        std::uint64_t t = eval_term(acc.t0, env);
        below = t < n && set[t];
      }
      if (below && !set[m]) {
        prog = false;
        rep.counterexamples.push_back(
            {"prog", "every predecessor of " + std::to_string(m) + " is in I but " +
                         std::to_string(m) + " is not"});
      }
    }
    rep.prog = prog;
  }
  return rep;
}

}  // namespace

FixpointReport check_fixpoint_axioms(const OperatorEntry& op, std::uint64_t n) {
  return check_fixpoint_axioms(op, lfp_stages(op, n));
}

FixpointReport check_fixpoint_axioms(const OperatorEntry& op, const StageTrace& t) {
  FixpointReport rep = check_set(op, indicator(t.stages.empty() ? std::vector<std::uint64_t>{}
                                                                : t.fixpoint(),
                                               t.n),
                                 t.n);
  rep.truncated = rep.truncated || t.truncated;
  return rep;
}

Json relation_to_json(const FiniteRelation& r) {
  Json edges = Json::array();
  for (const auto& [a, b] : r.edges) edges.push_back({a, b});
  return {{"n", r.n}, {"edges", edges}, {"transitive", r.transitive}};
}

FiniteRelation relation_from_json(const Json& j, const std::string& path) {
  FiniteRelation r;
  r.n = json_uint(json_field(j, "n", path), path + ".n");
  const Json& edges = json_field(j, "edges", path);
  if (!edges.is_array()) throw ParseError(path + ".edges: expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string p = path + ".edges[" + std::to_string(i) + "]";
    if (!edges[i].is_array() || edges[i].size() != 2) throw ParseError(p + ": expected a pair");
    r.edges.emplace(json_uint(edges[i][0], p + "[0]"), json_uint(edges[i][1], p + "[1]"));
  }
  if (j.contains("transitive")) {
    if (!j["transitive"].is_boolean()) throw ParseError(path + ".transitive: expected a boolean");
    r.transitive = j["transitive"].get<bool>();
  }
  return r;
}

Json trace_to_json(const StageTrace& t) {
  return {{"operator", t.op},
          {"n", t.n},
          {"stages", t.stages},
          {"closure", t.closure},
          {"truncated", t.truncated}};
}

Json acc_part_to_json(const AccPart& a) {
  Json rank = Json::object();
  for (const auto& [k, v] : a.rank) rank[std::to_string(k)] = v;
  return {{"w", a.w}, {"rank", rank}};
}

Json fixpoint_report_to_json(const FixpointReport& r) {
  Json ce = Json::array();
  for (const Diagnostic& d : r.counterexamples) ce.push_back({{"check", d.path}, {"message", d.message}});
  Json j = {{"passed", r.passed()},
            {"closed", r.closed},
            {"supported", r.supported},
            {"truncated", r.truncated}};
  j["prog"] = r.prog ? Json(*r.prog) : Json(nullptr);
  j["counterexamples"] = ce;
  return j;
}

}  // namespace ordcalc
