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

#include "doctest.h"
#include "ordcalc/controlled.hpp"
#include "support.hpp"

using namespace ordcalc;

namespace {

struct CertFixture {
  std::string file;
  PsiTerm b;
  bool unchanged = false;
};

std::vector<CertFixture> cert_corpus() {
  std::vector<CertFixture> out;
  for (const auto& m : testdata::load("certs/manifest.json")) {
    out.push_back({m["file"], parse_psi(m["b"].get<std::string>()), m["unchanged"].get<bool>()});
  }
  return out;
}

CertificateDocument load(const std::string& file) {
  return certificate_document_from_json(testdata::load("certs/" + file));
}

const PsiTerm kOmega = psi_app(psi_app(PsiTerm()));
const PsiTerm kBigOmega = parse_psi("Om");

Certificate initial(const Sequent& s, const PsiTerm& gamma = psi_nat(2)) {
  Certificate c;
  c.gamma = gamma;
  c.a = PsiTerm();
  c.d = 1;
  c.sequent = s;
  c.rule = CRule::kInitial;
  return c;
}

void widen_gamma(Certificate& c, const PsiTerm& g) {
  c.gamma = g;
  for (Certificate& p : c.premises) widen_gamma(p, g);
}

bool same_bounds(const Certificate& x, const Certificate& y) {
  if (cmp_psi(x.a, y.a) != Ord::EQ || x.d != y.d || x.premises.size() != y.premises.size()) return false;
  for (std::size_t i = 0; i < x.premises.size(); ++i) {
    if (!same_bounds(x.premises[i], y.premises[i])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("initial node with a true equation") {
  Certificate c = initial({Formula::eq(Term::num(0), Term::num(0))});
  CHECK(check_certificate(c, OperatorRegistry()).accepted());
  Certificate bad = initial({Formula::eq(Term::num(0), Term::num(1))});
  CHECK(!check_certificate(bad, OperatorRegistry()).accepted());
}

TEST_CASE("Cl node over its operator instance") {
  CertificateDocument d = load("cl_top_tight.json");
  CHECK(d.certificate.rule == CRule::kCl);
  CHECK(check_certificate(d.certificate, d.registry).accepted());
  Certificate flat = d.certificate;
  flat.a = flat.premises[0].a;
  CHECK(!check_certificate(flat, d.registry).accepted());
}

TEST_CASE("cut formula degree must stay below d") {
  Formula c2 = Formula::forall("y", Formula::disj(Formula::fix("acc", Term::var("y")),
                                                  Formula::nfix("acc", Term::var("y"))));
  REQUIRE(dg(c2) == 2);
  OperatorRegistry reg = load("acc0.json").registry;
  Formula goal = Formula::eq(Term::num(0), Term::num(0));
  Certificate cut;
  cut.gamma = psi_nat(2);
  cut.a = psi_nat(1);
  cut.d = 2;
  cut.sequent = {goal};
  cut.rule = CRule::kCut;
  cut.cut = c2;
  Certificate left = initial({goal, negate(c2)});
  Certificate right = initial({goal, c2});
  left.d = right.d = 2;
  cut.premises = {left, right};
  CertificateReport r = check_certificate(cut, reg);
  CHECK(!r.accepted());
  bool degree = false;
  for (const Diagnostic& e : r.errors) degree |= e.message.find("degree") != std::string::npos;
  CHECK(degree);
  cut.d = 3;
  left.d = right.d = 3;
  cut.premises = {left, right};
  CHECK(check_certificate(cut, reg).accepted());
}

TEST_CASE("control condition rejects bounds outside H") {
  Certificate c = initial({Formula::eq(Term::num(0), Term::num(0))}, PsiTerm());
  c.a = kOmega;
  CHECK(!check_certificate(c, OperatorRegistry()).accepted());
  c.gamma = psi_nat(2);
  c.a = PsiTerm();
  c.sequent.insert(Formula::fix("top", kOmega, Term::num(0)));
  CHECK(check_certificate(c, load("acc0.json").registry).accepted());
}

TEST_CASE("corpus certificates are accepted and bounding keeps them accepted") {
  std::vector<CertFixture> fs = cert_corpus();
  REQUIRE(fs.size() >= 20);
  for (const CertFixture& f : fs) {
    CertificateDocument d = load(f.file);
    REQUIRE_MESSAGE(check_certificate(d.certificate, d.registry).accepted(), f.file);
    Certificate out = apply_bounding(d.certificate, f.b, d.registry);
    CHECK_MESSAGE(check_certificate(out, d.registry).accepted(), f.file);
    CHECK_MESSAGE(same_bounds(out, d.certificate), f.file);
    Sequent expect;
    for (const Formula& g : d.certificate.sequent) expect.insert(bound_positive(g, f.b));
    CHECK_MESSAGE(out.sequent == expect, f.file);
    for (const Formula& g : out.sequent) CHECK(count_positive_omega(g) == 0);
    bool same = certificate_to_json(out).dump() == certificate_to_json(d.certificate).dump();
    CHECK_MESSAGE(same == f.unchanged, f.file);
  }
}

TEST_CASE("a bounded Cl conclusion ends in I< below the bound") {
  CertificateDocument d = load("cl_top_tight.json");
  Certificate out = apply_bounding(d.certificate, psi_nat(2), d.registry);
  CHECK(out.rule == CRule::kILess);
  REQUIRE(out.beta.has_value());
  CHECK(psi_lt(*out.beta, out.a));
}

TEST_CASE("bounding preconditions") {
  CertificateDocument d = load("cl_top_slack.json");
  Certificate two = d.certificate;
  two.d = 2;
  CHECK_THROWS_AS(apply_bounding(two, psi_nat(4), d.registry), DomainError);
  CHECK_THROWS_AS(apply_bounding(d.certificate, PsiTerm(), d.registry), DomainError);
  CHECK_THROWS_AS(apply_bounding(d.certificate, kBigOmega, d.registry), DomainError);
  Certificate neg = initial({Formula::eq(Term::num(0), Term::num(0)), Formula::nfix("top", Term::num(1))});
  CHECK_THROWS_AS(apply_bounding(neg, psi_nat(1), d.registry), DomainError);
}

TEST_CASE("enlarging gamma keeps certificates accepted") {
  for (const CertFixture& f : cert_corpus()) {
    CertificateDocument d = load(f.file);
    for (const PsiTerm& g : {add_psi(d.certificate.gamma, psi_nat(1)), add_psi(d.certificate.gamma, kOmega)}) {
      Certificate w = d.certificate;
      widen_gamma(w, g);
      CHECK_MESSAGE(check_certificate(w, d.registry).accepted(), f.file);
    }
  }
}

TEST_CASE("collapse bound bookkeeping") {
  CHECK(cmp_psi(cut_elimination_bound(PsiTerm()), psi_nat(1)) == Ord::EQ);
  for (unsigned n = 0; n < 6; ++n) {
    PsiTerm a = psi_nat(n);
    CHECK(psi_lt(a, cut_elimination_bound(a)));
  }
}

TEST_CASE("certificate documents round trip") {
  for (const CertFixture& f : cert_corpus()) {
    Json j = testdata::load("certs/" + f.file);
    Json once = certificate_document_to_json(certificate_document_from_json(j));
    Json twice = certificate_document_to_json(certificate_document_from_json(Json::parse(once.dump())));
    CHECK_MESSAGE(once == twice, f.file);
    CHECK(certificate_size(certificate_document_from_json(once).certificate) >= 1);
  }
  CHECK_THROWS_AS(crule_from_name("omega"), ParseError);
  CHECK_THROWS_AS(certificate_from_json(Json::parse(R"({"rule":"initial"})")), ParseError);
}
