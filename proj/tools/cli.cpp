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

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "ordcalc/controlled.hpp"
#include "ordcalc/fixpoint.hpp"
#include "ordcalc/formula.hpp"
#include "ordcalc/formula_json.hpp"
#include "ordcalc/psi.hpp"
#include "ordcalc/resolution.hpp"
#include "ordcalc/sequent.hpp"
#include "ordcalc/theta.hpp"

namespace ordcalc::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;

  void emit(const Json& j, const std::string& text) const {
    if (json) {
      out << j.dump(2) << "\n";
    } else {
      out << text;
      if (!text.empty() && text.back() != '\n') out << "\n";
    }
  }
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// ORDCALC_SEED unless --seed is given; 1 otherwise.
std::uint64_t resolve_seed(const Ctx& c) {
  if (c.seed) return *c.seed;
  if (const char* s = std::getenv("ORDCALC_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw UsageError(std::string("ORDCALC_SEED is not an unsigned integer: ") + s);
    }
  }
  return 1;
}

ThetaTerm theta_arg(const std::string& s) {
  ThetaTerm t = parse_theta(s);
  Diagnostics d = validate_theta(t);
  if (!d.empty()) throw ParseError("invalid term " + s + ": " + d[0].path + ": " + d[0].message);
  return t;
}

PsiTerm psi_arg(const std::string& s) {
  PsiTerm t = parse_psi(s);
  Diagnostics d = validate_psi(t);
  if (!d.empty()) throw ParseError("invalid term " + s + ": " + d[0].path + ": " + d[0].message);
  return t;
}

PsiTerm psi_nf_arg(const std::string& s) {
  PsiTerm t = psi_arg(s);
  if (!is_nf(t)) throw ParseError("term not in normal form: " + s);
  return t;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string diag_text(const Diagnostics& ds) {
  std::string s;
  for (const Diagnostic& d : ds) s += d.path + ": " + d.message + "\n";
  return s;
}

Json diag_json(const Diagnostics& ds) {
  Json a = Json::array();
  for (const Diagnostic& d : ds) a.push_back({{"path", d.path}, {"message", d.message}});
  return a;
}

// ---------------------------------------------------------------------------
// theta

void register_theta(CLI::App& app, Ctx& c, std::function<int()>& action) {
  auto* theta = app.add_subcommand("theta", "theta notation system");
  theta->require_subcommand(1);

  static std::string a, b;
  static std::size_t size = 1;
  static bool count_only = false;

  auto* cmp = theta->add_subcommand("cmp", "compare two terms");
  cmp->add_option("A", a)->required();
  cmp->add_option("B", b)->required();
  cmp->callback([&] {
    action = [&] {
      Ord o = cmp_theta(theta_arg(a), theta_arg(b));
      c.emit({{"result", to_string(o)}}, to_string(o));
      return kOk;
    };
  });

  auto* k = theta->add_subcommand("k", "coefficient set K");
  k->add_option("A", a)->required();
  k->callback([&] {
    action = [&] {
      Json j = Json::array();
      std::string text;
      for (const ThetaTerm& t : k_set(theta_arg(a))) {
        j.push_back(theta_to_wire(t));
        text += theta_to_wire(t) + "\n";
      }
      c.emit({{"k", j}}, text.empty() ? "{}" : text);
      return kOk;
    };
  });

  auto* val = theta->add_subcommand("validate", "check the term grammar");
  val->add_option("A", a)->required();
  val->callback([&] {
    action = [&] {
      Diagnostics d = validate_theta(parse_theta(a));
      c.emit({{"valid", d.empty()}, {"errors", diag_json(d)}}, d.empty() ? "valid" : diag_text(d));
      return d.empty() ? kOk : kReject;
    };
  });

  auto* add = theta->add_subcommand("add", "normalised sum");
  add->add_option("A", a)->required();
  add->add_option("B", b)->required();
  add->callback([&] {
    action = [&] {
      ThetaTerm r = add_theta(theta_arg(a), theta_arg(b));
      c.emit({{"result", theta_to_wire(r)}, {"pretty", pretty_theta(r)}}, theta_to_wire(r));
      return kOk;
    };
  });

  auto* ev = theta->add_subcommand("eval", "Cantor normal form of a countable term");
  ev->add_option("A", a)->required();
  ev->callback([&] {
    action = [&] {
      Cnf v = eval_countable_theta(theta_arg(a));
      c.emit({{"cnf", v.str()}}, v.str());
      return kOk;
    };
  });

  auto* en = theta->add_subcommand("enum", "enumerate terms by size");
  en->add_option("--size", size, "node count bound")->required()->check(CLI::PositiveNumber);
  en->add_flag("--count", count_only, "print only the count");
  en->callback([&] {
    action = [&] {
      std::vector<ThetaTerm> ts = enumerate_theta(size);
      Json j = {{"size", size}, {"count", ts.size()}};
      std::string text = count_only ? std::to_string(ts.size()) : "";
      if (!count_only) {
        Json list = Json::array();
        for (const ThetaTerm& t : ts) {
          list.push_back(theta_to_wire(t));
          text += theta_to_wire(t) + "\n";
        }
        j["terms"] = list;
      }
      c.emit(j, text);
      return kOk;
    };
  });
}

// ---------------------------------------------------------------------------
// psi

void register_psi(CLI::App& app, Ctx& c, std::function<int()>& action) {
  auto* psi = app.add_subcommand("psi", "psi notation system");
  psi->require_subcommand(1);

  static std::string a, b, gamma, a0;
  static std::vector<std::string> hm;
  static unsigned m = 1;
  static std::size_t size = 1;
  static bool count_only = false;

  auto* cmp = psi->add_subcommand("cmp", "compare two normal-form terms");
  cmp->add_option("A", a)->required();
  cmp->add_option("B", b)->required();
  cmp->callback([&] {
    action = [&] {
      Ord o = cmp_psi(psi_arg(a), psi_arg(b));
      c.emit({{"result", to_string(o)}}, to_string(o));
      return kOk;
    };
  });

  auto* nf = psi->add_subcommand("nf", "normal-form test");
  nf->add_option("A", a)->required();
  nf->callback([&] {
    action = [&] {
      bool r = is_nf(psi_arg(a));
      c.emit({{"nf", r}}, bool_text(r));
      return r ? kOk : kReject;
    };
  });

  auto* g = psi->add_subcommand("g", "the set G");
  g->add_option("A", a)->required();
  g->callback([&] {
    action = [&] {
      Json j = Json::array();
      std::string text;
      for (const PsiTerm& t : g_set(psi_arg(a))) {
        j.push_back(psi_to_wire(t));
        text += psi_to_wire(t) + "\n";
      }
      c.emit({{"g", j}}, text.empty() ? "{}" : text);
      return kOk;
    };
  });

  auto* hmem = psi->add_subcommand("hmember", "decide T in H_GAMMA(X)");
  hmem->add_option("TERMS", hm, "GAMMA X... T")->required()->expected(2, -1);
  hmem->callback([&] {
    action = [&] {
      PsiTerm gm = psi_nf_arg(hm.front());
      PsiTerm t = psi_nf_arg(hm.back());
      std::vector<PsiTerm> xs;
      for (std::size_t i = 1; i + 1 < hm.size(); ++i) xs.push_back(psi_nf_arg(hm[i]));
      bool r = h_member(gm, xs, t);
      c.emit({{"member", r}}, bool_text(r));
      return r ? kOk : kReject;
    };
  });

  auto* hat_cmd = psi->add_subcommand("hat", "gamma + w^(Omega + a)");
  hat_cmd->add_option("GAMMA", gamma)->required();
  hat_cmd->add_option("A", a)->required();
  hat_cmd->callback([&] {
    action = [&] {
      PsiTerm r = hat(psi_nf_arg(gamma), psi_nf_arg(a));
      c.emit({{"result", psi_to_wire(r)}}, psi_to_wire(r));
      return kOk;
    };
  });

  auto* col = psi->add_subcommand("collapse", "b_m = gamma + w^(Omega + a0) * m and psi(b_m)");
  col->add_option("--gamma", gamma)->required();
  col->add_option("--a0", a0)->required();
  col->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  col->callback([&] {
    action = [&] {
      CollapseSteps s = collapse_steps(psi_nf_arg(gamma), psi_nf_arg(a0), m);
      c.emit({{"gamma", psi_to_wire(s.gamma)},
              {"a0", psi_to_wire(s.a0)},
              {"m", s.m},
              {"b_m", psi_to_wire(s.b_m)},
              {"beta_m", psi_to_wire(s.beta_m)}},
             "b_" + std::to_string(m) + " = " + psi_to_wire(s.b_m) + "\nbeta_" +
                 std::to_string(m) + " = " + psi_to_wire(s.beta_m));
      return kOk;
    };
  });

  auto* en = psi->add_subcommand("enum", "enumerate normal-form terms by size");
  en->add_option("--size", size)->required()->check(CLI::PositiveNumber);
  en->add_flag("--count", count_only);
  en->callback([&] {
    action = [&] {
      std::vector<PsiTerm> ts = enumerate_psi(size);
      Json j = {{"size", size}, {"count", ts.size()}};
      std::string text = count_only ? std::to_string(ts.size()) : "";
      if (!count_only) {
        Json list = Json::array();
        for (const PsiTerm& t : ts) {
          list.push_back(psi_to_wire(t));
          text += psi_to_wire(t) + "\n";
        }
        j["terms"] = list;
      }
      c.emit(j, text);
      return kOk;
    };
  });
}

// ---------------------------------------------------------------------------
// formula

Formula load_formula(const std::string& path) {
  Json j = read_json(path);
  if (j.is_object() && j.contains("formula")) return formula_from_json(j["formula"], "$.formula");
  return formula_from_json(j);
}

std::string opt_text(const std::optional<unsigned>& v) { return v ? std::to_string(*v) : "none"; }
Json opt_json(const std::optional<unsigned>& v) { return v ? Json(*v) : Json(nullptr); }

void register_formula(CLI::App& app, Ctx& c, std::function<int()>& action) {
  auto* fm = app.add_subcommand("formula", "formula classes and transforms");
  fm->require_subcommand(1);

  static std::string file, mode = "finitary", stage;

  auto* cl = fm->add_subcommand("classify", "polarity classes and hierarchy ranks");
  cl->add_option("FILE", file)->required();
  cl->add_option("--mode", mode)->check(CLI::IsMember({"finitary", "infinitary"}));
  cl->callback([&] {
    action = [&] {
      Formula f = load_formula(file);
      ClassInfo k = classify(f, mode == "finitary" ? ClassMode::kFinitary : ClassMode::kInfinitary);
      Json j = {{"formula", to_string(f)},
                {"is_pos", k.is_pos},
                {"is_neg", k.is_neg},
                {"is_p_and_n", k.is_p_and_n},
                {"is_n_or_p", k.is_n_or_p},
                {"is_acc_formula", k.is_acc_formula},
                {"pi_rank_p", opt_json(k.pi_rank_p)},
                {"sigma_rank_p", opt_json(k.sigma_rank_p)},
                {"pi_rank_omega", opt_json(k.pi_rank_omega)},
                {"sigma_rank_omega", opt_json(k.sigma_rank_omega)}};
      std::ostringstream t;
      t << "formula: " << to_string(f) << "\n"
        << "is_pos: " << bool_text(k.is_pos) << "\nis_neg: " << bool_text(k.is_neg)
        << "\nis_p_and_n: " << bool_text(k.is_p_and_n) << "\nis_n_or_p: " << bool_text(k.is_n_or_p)
        << "\nis_acc_formula: " << bool_text(k.is_acc_formula)
        << "\npi_rank_p: " << opt_text(k.pi_rank_p) << "\nsigma_rank_p: " << opt_text(k.sigma_rank_p)
        << "\npi_rank_omega: " << opt_text(k.pi_rank_omega)
        << "\nsigma_rank_omega: " << opt_text(k.sigma_rank_omega);
      c.emit(j, t.str());
      return kOk;
    };
  });

  auto* d = fm->add_subcommand("dg", "cut degree");
  d->add_option("FILE", file)->required();
  d->callback([&] {
    action = [&] {
      unsigned v = dg(load_formula(file));
      c.emit({{"dg", v}}, std::to_string(v));
      return kOk;
    };
  });

  auto* bd = fm->add_subcommand("bound", "replace positive I^{<Omega} atoms by I^{<B}");
  bd->add_option("FILE", file)->required();
  bd->add_option("--stage", stage)->required();
  bd->callback([&] {
    action = [&] {
      Formula f = bound_positive(load_formula(file), psi_nf_arg(stage));
      c.emit({{"formula", formula_to_json(f)}, {"text", to_string(f)}}, to_string(f));
      return kOk;
    };
  });

  auto* gr = fm->add_subcommand("ground", "expand bounded quantifiers of a closed formula");
  gr->add_option("FILE", file)->required();
  gr->callback([&] {
    action = [&] {
      Formula f = ground_bounded(load_formula(file));
      c.emit({{"formula", formula_to_json(f)}, {"text", to_string(f)}}, to_string(f));
      return kOk;
    };
  });
}

// ---------------------------------------------------------------------------
// check

void register_check(CLI::App& app, Ctx& c, std::function<int()>& action) {
  static std::string file, theory;
  auto* ch = app.add_subcommand("check", "check a finite proof");
  ch->add_option("FILE", file)->required();
  ch->add_option("--theory", theory, "pn-id:K | pandn-acc:K | pi01p-acc");
  ch->callback([&] {
    action = [&] {
      ProofDocument doc = document_from_json(read_json(file));
      std::string name = !theory.empty() ? theory : doc.theory.value_or("");
      if (name.empty()) throw UsageError("no theory given; pass --theory");
      TheoryId th = parse_theory(name);
      ProofReport r = check_proof(doc.proof, th, doc.registry, doc.trusted);
      std::string text = r.accepted() ? "accepted under " + to_string(th)
                                      : "rejected under " + to_string(th) + "\n" + diag_text(r.errors);
      for (const Diagnostic& d : r.trusted_uses) text += "\ntrusted axiom at " + d.path + ": " + d.message;
      c.emit(report_to_json(r, th), text);
      return r.accepted() ? kOk : kReject;
    };
  });
}

// ---------------------------------------------------------------------------
// controlled

void register_controlled(CLI::App& app, Ctx& c, std::function<int()>& action) {
  auto* ct = app.add_subcommand("controlled", "operator-controlled certificates");
  ct->require_subcommand(1);
  static std::string file, b;

  auto* chk = ct->add_subcommand("check", "check a certificate");
  chk->add_option("FILE", file)->required();
  chk->callback([&] {
    action = [&] {
      CertificateDocument doc = certificate_document_from_json(read_json(file));
      CertificateReport r = check_certificate(doc.certificate, doc.registry);
      std::string text = r.accepted() ? "accepted" : "rejected\n" + diag_text(r.errors);
      for (const Diagnostic& d : r.hypotheses) text += "\nhypothesis at " + d.path + ": " + d.message;
      c.emit(certificate_report_to_json(r), text);
      return r.accepted() ? kOk : kReject;
    };
  });

  auto* bnd = ct->add_subcommand("bound", "apply the bounding transform at stage B");
  bnd->add_option("FILE", file)->required();
  bnd->add_option("--b", b)->required();
  bnd->callback([&] {
    action = [&] {
      CertificateDocument doc = certificate_document_from_json(read_json(file));
      PsiTerm stage = psi_nf_arg(b);
      try {
        doc.certificate = apply_bounding(doc.certificate, stage, doc.registry);
      } catch (const DomainError& e) {
        c.err << "bounding failed: " << e.what() << "\n";
        return kReject;
      }
      c.out << certificate_document_to_json(doc).dump(2) << "\n";
      return kOk;
    };
  });
}

// ---------------------------------------------------------------------------
// lfp and acc

OperatorEntry load_operator(const std::string& path, const std::string& name) {
  Json j = read_json(path);
  if (j.is_object() && j.contains("edges")) {
    FiniteRelation r = relation_from_json(j);
    Diagnostics d = validate_relation(r);
    if (!d.empty()) throw ParseError(path + ": " + d[0].path + ": " + d[0].message);
    return acc_operator(r, name.empty() ? "acc" : name);
  }
  OperatorRegistry reg;
  if (j.is_object() && j.contains("operators")) {
    reg = registry_from_json(j);
  } else {
    reg.add(operator_from_json(j));
  }
  if (reg.empty()) throw ParseError(path + ": no operators");
  return name.empty() ? reg.entries().front() : reg.at(name);
}

std::string stage_text(const std::vector<std::uint64_t>& s) {
  std::string t = "{";
  for (std::size_t i = 0; i < s.size(); ++i) t += (i ? ", " : "") + std::to_string(s[i]);
  return t + "}";
}

void register_lfp(CLI::App& app, Ctx& c, std::function<int()>& action) {
  auto* lfp = app.add_subcommand("lfp", "finite least-fixpoint semantics");
  lfp->require_subcommand(1);
  static std::string file, op;
  static std::uint64_t n = 0, elem = 0;

  auto* tr = lfp->add_subcommand("trace", "stages of the inductive definition on [0, N)");
  tr->add_option("OP", file)->required();
  tr->add_option("--n", n)->required();
  tr->add_option("--op", op, "operator name in a registry file");
  tr->callback([&] {
    action = [&] {
      StageTrace t = lfp_stages(load_operator(file, op), n);
      std::string text;
      for (std::size_t k = 0; k < t.stages.size(); ++k) {
        text += "I^" + std::to_string(k) + " = " + stage_text(t.stages[k]) + "\n";
      }
      text += "closure at " + std::to_string(t.closure);
      if (t.truncated) text += "\nwarning: unbounded quantifiers truncated to [0, " + std::to_string(n) + ")";
      c.emit(trace_to_json(t), text);
      return kOk;
    };
  });

  auto* nm = lfp->add_subcommand("norm", "inductive norm of an element");
  nm->add_option("OP", file)->required();
  nm->add_option("--elem", elem)->required();
  nm->add_option("--n", n)->required();
  nm->add_option("--op", op);
  nm->callback([&] {
    action = [&] {
      StageTrace t = lfp_stages(load_operator(file, op), n);
      Norm v = norm(t, elem);
      Json j = {{"elem", elem}, {"n", n}, {"truncated", t.truncated}};
      j["norm"] = v ? Json(*v) : Json("inf");
      c.emit(j, norm_to_string(v));
      return kOk;
    };
  });

  auto* ax = lfp->add_subcommand("check", "closure, support and Prog on the computed fixpoint");
  ax->add_option("OP", file)->required();
  ax->add_option("--n", n)->required();
  ax->add_option("--op", op);
  ax->callback([&] {
    action = [&] {
      FixpointReport r = check_fixpoint_axioms(load_operator(file, op), n);
      std::string text = r.passed() ? "passed" : "failed";
      for (const Diagnostic& d : r.counterexamples) text += "\n" + d.path + ": " + d.message;
      c.emit(fixpoint_report_to_json(r), text);
      return r.passed() ? kOk : kReject;
    };
  });

  auto* acc = app.add_subcommand("acc", "accessible part and ranks of a finite relation");
  acc->add_option("REL", file)->required();
  acc->callback([&] {
    action = [&] {
      FiniteRelation r = relation_from_json(read_json(file));
      Diagnostics d = validate_relation(r);
      if (!d.empty()) throw ParseError(file + ": " + d[0].path + ": " + d[0].message);
      AccPart p = acc_part(r);
      std::string text = "W = " + stage_text(p.w);
      for (const auto& [k, v] : p.rank) text += "\n|" + std::to_string(k) + "| = " + std::to_string(v);
      c.emit(acc_part_to_json(p), text);
      return kOk;
    };
  });
}

// ---------------------------------------------------------------------------
// resolve

Construction parse_construction(const std::string& s) {
  if (s == "pivot") return Construction::kPivot;
  if (s == "recursive") return Construction::kRecursive;
  throw UsageError("unknown construction " + s);
}

void register_resolve(CLI::App& app, Ctx& c, std::function<int()>& action) {
  auto* rs = app.add_subcommand("resolve", "decorated ground-resolution refutations");
  rs->require_subcommand(1);
  static unsigned n = 1, max_dec = 1, upto = 1;
  static std::string construction = "pivot", file, gamma = "0", a0 = "(p (p 0))", op = "acc";

  auto* bl = rs->add_subcommand("build", "build a decorated refutation");
  bl->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  bl->add_option("--construction", construction)->check(CLI::IsMember({"pivot", "recursive"}));
  bl->callback([&] {
    action = [&] {
      DNode d = build_refutation(n, parse_construction(construction));
      c.out << derivation_to_json(d, n).dump(c.json ? 2 : -1) << "\n";
      return kOk;
    };
  });

  auto* ch = rs->add_subcommand("check", "check a decorated derivation file");
  ch->add_option("FILE", file)->required();
  ch->callback([&] {
    action = [&] {
      auto [d, fam] = derivation_from_json(read_json(file));
      DecorationReport r = check_decoration(d, fam);
      DerivationStats s = derivation_stats(d);
      std::string text = r.ok() ? std::string("decorated") + (r.refutation ? " refutation" : " derivation") +
                                      ", max_label " + std::to_string(s.max_label) + ", max_level " +
                                      std::to_string(s.max_level)
                                : "violations\n" + diag_text(r.errors);
      Json j = decoration_report_to_json(r);
      j["max_label"] = s.max_label;
      j["max_level"] = s.max_level;
      c.emit(j, text);
      return r.ok() ? kOk : kReject;
    };
  });

  auto* br = rs->add_subcommand("brute", "exhaustive search with integers up to M");
  br->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  br->add_option("--max-dec", max_dec)->required();
  br->callback([&] {
    action = [&] {
      std::optional<DNode> d = brute_force(n, max_dec);
      Json j = {{"n", n}, {"max_dec", max_dec}, {"found", d.has_value()}};
      std::string text = d ? "found" : "none";
      if (d) {
        DerivationStats s = derivation_stats(*d);
        j["derivation"] = derivation_to_json(*d, n);
        text += ": " + std::to_string(s.leaves) + " leaves, max_label " + std::to_string(s.max_label) +
                ", max_level " + std::to_string(s.max_level);
      }
      c.emit(j, text);
      return kOk;
    };
  });

  auto* gr = rs->add_subcommand("growth", "leaves and largest integers for n = 1..N");
  gr->add_option("--upto", upto)->required()->check(CLI::PositiveNumber);
  gr->add_option("--construction", construction)->check(CLI::IsMember({"pivot", "recursive"}));
  gr->callback([&] {
    action = [&] {
      Json rows = Json::array();
      std::ostringstream t;
      t << std::setw(4) << "n" << std::setw(12) << "leaves" << std::setw(11) << "max_label"
        << std::setw(11) << "max_level" << "\n";
      for (const GrowthRow& r : growth(upto, parse_construction(construction))) {
        rows.push_back({{"n", r.n}, {"leaves", r.leaves}, {"max_label", r.max_label},
                        {"max_level", r.max_level}});
        t << std::setw(4) << r.n << std::setw(12) << r.leaves << std::setw(11) << r.max_label
          << std::setw(11) << r.max_level << "\n";
      }
      c.emit({{"construction", construction}, {"rows", rows}}, t.str());
      return kOk;
    };
  });

  auto* tc = rs->add_subcommand("controlled", "realise a refutation as a controlled certificate");
  tc->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  tc->add_option("--gamma", gamma);
  tc->add_option("--a0", a0);
  tc->add_option("--op", op, "operator name for the default bindings");
  tc->add_option("--construction", construction)->check(CLI::IsMember({"pivot", "recursive"}));
  tc->callback([&] {
    action = [&] {
      DNode d = build_refutation(n, parse_construction(construction));
      CertificateDocument doc;
      OperatorEntry e;
      e.name = op;
      e.body = Formula::forall(
          "y", Formula::disj(Formula::nlt(Term::var("y"), Term::var("x")),
                             Formula::mem("X", Term::var("y"))));
      doc.registry.add(e);
      doc.certificate = to_controlled(d, n, psi_nf_arg(gamma), psi_nf_arg(a0), default_bindings(n, op));
      CertificateReport r = check_certificate(doc.certificate, doc.registry);
      if (!r.accepted()) {
        c.err << "certificate rejected:\n" << diag_text(r.errors);
        return kReject;
      }
      c.out << certificate_document_to_json(doc).dump(c.json ? 2 : -1) << "\n";
      return kOk;
    };
  });
}

// ---------------------------------------------------------------------------
// sweep

template <class T>
struct System {
  std::function<std::vector<T>(std::size_t)> enumerate;
  std::function<Ord(const T&, const T&)> cmp;
  std::function<T(const T&, const T&)> add;
  std::function<T(const T&)> collapse;
};

template <class T>
Json order_sweep(const System<T>& sys, std::size_t size, unsigned jobs) {
  std::vector<T> ts = sys.enumerate(size);
  std::vector<T> sorted = ts;
  std::sort(sorted.begin(), sorted.end(),
            [&](const T& a, const T& b) { return sys.cmp(a, b) == Ord::LT; });
  std::atomic<std::uint64_t> bad{0};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < sorted.size(); i = next++) {
      if (sys.cmp(sorted[i], sorted[i]) != Ord::EQ) ++bad;
      for (std::size_t j = i + 1; j < sorted.size(); ++j) {
        if (sys.cmp(sorted[i], sorted[j]) != Ord::LT || sys.cmp(sorted[j], sorted[i]) != Ord::GT) ++bad;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < std::max(1u, jobs); ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return {{"terms", ts.size()}, {"violations", bad.load()}};
}

template <class T>
Json additive_sweep(const System<T>& sys, std::size_t size, std::uint64_t samples, std::uint64_t seed) {
  std::vector<T> sorted = sys.enumerate(size);
  std::sort(sorted.begin(), sorted.end(),
            [&](const T& a, const T& b) { return sys.cmp(a, b) == Ord::LT; });
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, sorted.size() - 1);
  std::uint64_t bad = 0, used = 0, tries = 0;
  while (used < samples && tries < samples * 20) {
    ++tries;
    T top = sys.collapse(sorted[pick(rng)]);
    std::size_t below = std::lower_bound(sorted.begin(), sorted.end(), top,
                                         [&](const T& a, const T& b) {
                                           return sys.cmp(a, b) == Ord::LT;
                                         }) -
                        sorted.begin();
    if (below == 0) continue;
    std::uniform_int_distribution<std::size_t> sub(0, below - 1);
    const T& a = sorted[sub(rng)];
    const T& b = sorted[sub(rng)];
    ++used;
    if (sys.cmp(sys.add(a, b), top) != Ord::LT) ++bad;
  }
  return {{"terms", sorted.size()}, {"samples", used}, {"seed", seed}, {"violations", bad}};
}

System<ThetaTerm> theta_system() {
  return {enumerate_theta, cmp_theta, add_theta, [](const ThetaTerm& t) { return ThetaTerm::app(t); }};
}

System<PsiTerm> psi_system() {
  return {enumerate_psi, cmp_psi_unchecked, add_psi, [](const PsiTerm& t) { return psi_app(t); }};
}

void register_sweep(CLI::App& app, Ctx& c, std::function<int()>& action) {
  auto* sw = app.add_subcommand("sweep", "property sweeps over enumerated terms");
  sw->require_subcommand(1);
  static std::string system = "theta";
  static std::size_t size = 8;
  static std::uint64_t samples = 10000;

  auto* ord = sw->add_subcommand("order", "trichotomy, irreflexivity and transitivity");
  ord->add_option("--system", system)->check(CLI::IsMember({"theta", "psi"}));
  ord->add_option("--size", size)->required()->check(CLI::PositiveNumber);
  ord->callback([&] {
    action = [&] {
      Json j = system == "theta" ? order_sweep(theta_system(), size, c.jobs)
                                 : order_sweep(psi_system(), size, c.jobs);
      j["system"] = system;
      bool ok = j["violations"].get<std::uint64_t>() == 0;
      c.emit(j, system + ": " + std::to_string(j["terms"].get<std::size_t>()) + " terms, " +
                    std::to_string(j["violations"].get<std::uint64_t>()) + " violations");
      return ok ? kOk : kReject;
    };
  });

  auto* add = sw->add_subcommand("additive", "a, b < collapse(c) implies a + b < collapse(c)");
  add->add_option("--system", system)->check(CLI::IsMember({"theta", "psi"}));
  add->add_option("--size", size)->required()->check(CLI::PositiveNumber);
  add->add_option("--samples", samples);
  add->callback([&] {
    action = [&] {
      std::uint64_t seed = resolve_seed(c);
      Json j = system == "theta" ? additive_sweep(theta_system(), size, samples, seed)
                                 : additive_sweep(psi_system(), size, samples, seed);
      j["system"] = system;
      bool ok = j["violations"].get<std::uint64_t>() == 0;
      c.emit(j, system + ": " + std::to_string(j["samples"].get<std::uint64_t>()) + " triples, " +
                    std::to_string(j["violations"].get<std::uint64_t>()) + " violations, seed " +
                    std::to_string(seed));
      return ok ? kOk : kReject;
    };
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ordcalc: ordinal notations, proof checking and decorated resolution"};
  app.name("ordcalc");
  app.require_subcommand(1);
  app.fallthrough();
  Ctx c{out, err, false, std::nullopt, 1};
  std::string format = "text";
  std::uint64_t seed = 0;
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomised sweeps; overrides ORDCALC_SEED");
  app.add_option("--jobs", c.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);

  std::function<int()> action;
  register_theta(app, c, action);
  register_psi(app, c, action);
  register_formula(app, c, action);
  register_check(app, c, action);
  register_controlled(app, c, action);
  register_lfp(app, c, action);
  register_resolve(app, c, action);
  register_sweep(app, c, action);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  c.json = format == "json";
  if (*seed_opt) c.seed = seed;
  if (!action) {
    err << "no command\n";
    return kUsage;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "malformed input: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "malformed input: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace ordcalc::cli
