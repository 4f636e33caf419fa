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

#include <map>
#include <set>

#include "doctest.h"
#include "ordcalc/sequent.hpp"
#include "support.hpp"

using namespace ordcalc;

namespace {

struct Fixture {
  std::string file;
  std::string theory;
  bool accept = false;
  std::vector<std::string> tags;
  std::string error;
};

std::vector<Fixture> corpus() {
  std::vector<Fixture> out;
  for (const auto& m : testdata::load("proofs/manifest.json")) {
    Fixture f;
    f.file = m["file"];
    f.theory = m["theory"];
    f.accept = m["expect"] == "accept";
    for (const auto& t : m["tags"]) f.tags.push_back(t);
    if (m.contains("error")) f.error = m["error"];
    out.push_back(f);
  }
  return out;
}

ProofDocument load(const Fixture& f) { return document_from_json(testdata::load("proofs/" + f.file)); }

ProofNode weaken(const ProofNode& p, const Formula& side) {
  ProofNode q = p;
  q.conclusion.insert(side);
  for (ProofNode& c : q.premises) c = weaken(c, side);
  return q;
}

OperatorRegistry acc_registry() {
  OperatorRegistry reg;
  OperatorEntry e;
  e.name = "acc";
  e.body = Formula::forall("y", Formula::disj(Formula::nlt(Term::var("y"), Term::var("x")),
                                              Formula::mem("X", Term::var("y"))));
  reg.add(e);
  return reg;
}

}  // namespace

TEST_CASE("corpus verdicts and messages") {
  std::vector<Fixture> fs = corpus();
  REQUIRE(fs.size() >= 12);
  for (const Fixture& f : fs) {
    ProofDocument d = load(f);
    ProofReport r = check_proof(d.proof, parse_theory(f.theory), d.registry, d.trusted);
    CHECK_MESSAGE(r.accepted() == f.accept, f.file);
    if (!f.error.empty()) {
      bool found = false;
      for (const Diagnostic& e : r.errors) found |= e.message.find(f.error) != std::string::npos;
      CHECK_MESSAGE(found, f.file << " lacks \"" << f.error << "\"");
    }
  }
}

TEST_CASE("corpus covers every rule, theory and Rbar shape") {
  std::map<std::string, std::set<bool>> seen;
  std::set<TheoryKind> theories;
  std::set<TheoryKind> rbar_accept;
  for (const Fixture& f : corpus()) {
    seen[f.tags.front()].insert(f.accept);
    TheoryId th = parse_theory(f.theory);
    theories.insert(th.kind);
    if (f.tags.front() == "Rbar" && f.accept) rbar_accept.insert(th.kind);
  }
  for (Rule r : all_rules()) {
    CHECK_MESSAGE(seen[rule_name(r)].size() == 2, rule_name(r));
  }
  CHECK(theories.size() == 3);
  CHECK(rbar_accept.size() == 3);
}

TEST_CASE("trusted axioms are logged") {
  for (const Fixture& f : corpus()) {
    if (f.file != "arith_initial_trusted.json") continue;
    ProofDocument d = load(f);
    ProofReport r = check_proof(d.proof, parse_theory(f.theory), d.registry, d.trusted);
    CHECK(r.accepted());
    CHECK(r.trusted_uses.size() == 1);
    ProofReport none = check_proof(d.proof, parse_theory(f.theory), d.registry, {});
    CHECK(!none.accepted());
  }
}

TEST_CASE("accepted proofs survive eigenvariable renaming and weakening") {
  Formula side = Formula::lt(Term::num(7), Term::num(9));
  for (const Fixture& f : corpus()) {
    if (!f.accept) continue;
    ProofDocument d = load(f);
    TheoryId th = parse_theory(f.theory);
    ProofNode renamed = rename_eigenvariables(d.proof, "_r");
    CHECK_MESSAGE(check_proof(renamed, th, d.registry, d.trusted).accepted(), f.file);
    CHECK_MESSAGE(check_proof(weaken(d.proof, side), th, d.registry, d.trusted).accepted(), f.file);
  }
}

TEST_CASE("checking is deterministic") {
  for (const Fixture& f : corpus()) {
    ProofDocument d = load(f);
    TheoryId th = parse_theory(f.theory);
    Json a = report_to_json(check_proof(d.proof, th, d.registry, d.trusted), th);
    Json b = report_to_json(check_proof(d.proof, th, d.registry, d.trusted), th);
    CHECK(a == b);
  }
}

TEST_CASE("proof documents round trip") {
  for (const Fixture& f : corpus()) {
    Json j = testdata::load("proofs/" + f.file);
    Json once = document_to_json(document_from_json(j));
    Json twice = document_to_json(document_from_json(Json::parse(once.dump())));
    CHECK_MESSAGE(once == twice, f.file);
  }
}

TEST_CASE("one node logical initial sequent") {
  ProofNode p;
  p.rule = Rule::kLogicalInitial;
  p.conclusion = {Formula::nfix("acc", Term::num(3)), Formula::fix("acc", Term::num(3))};
  CHECK(check_proof(p, parse_theory("pi01p-acc"), acc_registry()).accepted());
  p.premises.push_back(p);
  CHECK(!check_proof(p, parse_theory("pi01p-acc"), acc_registry()).accepted());
}

TEST_CASE("R node with its operator instance") {
  OperatorRegistry reg = acc_registry();
  Formula goal = Formula::fix("acc", Term::num(3));
  Formula side = Formula::nfix("acc", Term::num(3));
  ProofNode leaf;
  leaf.rule = Rule::kLogicalInitial;
  leaf.conclusion = {instantiate_fix(reg.at("acc"), Term::num(3)), side, goal};
  ProofNode r;
  r.rule = Rule::kR;
  r.principal = goal;
  r.conclusion = {goal, side};
  r.premises = {leaf};
  CHECK(check_proof(r, parse_theory("pn-id:0"), reg).accepted());
  r.premises[0].conclusion.insert(instantiate_fix(reg.at("acc"), Term::num(4)));
  ProofReport rep = check_proof(r, parse_theory("pn-id:0"), reg);
  CHECK(!rep.accepted());
  REQUIRE(!rep.errors.empty());
  CHECK(rep.errors[0].path == "$.premises[0]");
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(rule_from_name("weakening"), ParseError);
  CHECK_THROWS_AS(parse_theory("pn-id"), ParseError);
  CHECK_THROWS_AS(parse_theory("pi01p-acc:2"), ParseError);
  CHECK_THROWS_AS(parse_theory("zf"), ParseError);
  CHECK(to_string(parse_theory("pandn-acc:3")) == "pandn-acc:3");
  CHECK_THROWS_AS(document_from_json(Json::parse(R"({"registry":{"operators":[]}})")), ParseError);
  CHECK_THROWS_AS(proof_from_json(Json::parse(R"({"rule":"cut","conclusion":[],"premises":{}})")), ParseError);
}

TEST_CASE("unknown operators and stage tags are rejected") {
  ProofNode p;
  p.rule = Rule::kLogicalInitial;
  p.conclusion = {Formula::nfix("nope", Term::num(3)), Formula::fix("nope", Term::num(3))};
  CHECK(!check_proof(p, parse_theory("pn-id:0"), acc_registry()).accepted());
  PsiTerm one = psi_app(PsiTerm());
  p.conclusion = {Formula::nfix("acc", one, Term::num(3)), Formula::fix("acc", one, Term::num(3))};
  CHECK(!check_proof(p, parse_theory("pn-id:0"), acc_registry()).accepted());
}
