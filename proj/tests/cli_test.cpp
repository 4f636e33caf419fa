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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "ordcalc/controlled.hpp"
#include "ordcalc/resolution.hpp"
#include "ordcalc/theta.hpp"
#include "support.hpp"

using namespace ordcalc;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string proof(const std::string& f) { return testdata::path("proofs/" + f); }
std::string cert(const std::string& f) { return testdata::path("certs/" + f); }

std::string temp_file(const std::string& name, const std::string& body) {
  std::string p = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/" + name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("theta comparison") {
  Run r = run({"theta", "cmp", "0", "(v 0)"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "LT\n");
  Run j = run({"--format", "json", "theta", "cmp", "(v 0)", "0"});
  CHECK(j.code == cli::kOk);
  CHECK(Json::parse(j.out)["result"] == "GT");
}

TEST_CASE("resolve build emits a derivation with level five at n=2") {
  Run r = run({"--format", "json", "resolve", "build", "--n", "2"});
  REQUIRE(r.code == cli::kOk);
  Json j = Json::parse(r.out);
  CHECK(j["max_level"] == 5);
  auto [d, n] = derivation_from_json(j);
  CHECK(n == 2);
  CHECK(check_decoration(d, n).ok());
  std::string file = temp_file("ordcalc_cli_n2.json", r.out);
  CHECK(run({"resolve", "check", file}).code == cli::kOk);
}

TEST_CASE("proof checking exit codes") {
  Run bad = run({"check", proof("ind_reject_pi2.json"), "--theory", "pi01p-acc"});
  CHECK(bad.code == cli::kReject);
  CHECK(bad.out.find("class violation") != std::string::npos);
  CHECK(run({"check", proof("ind_accept.json"), "--theory", "pandn-acc:1"}).code == cli::kOk);
  CHECK(run({"check", "/nonexistent/proof.json", "--theory", "pn-id:0"}).code == cli::kUsage);
  std::string broken = temp_file("ordcalc_cli_broken.json", "{bad");
  CHECK(run({"check", broken, "--theory", "pn-id:0"}).code == cli::kUsage);
  CHECK(run({"check", proof("ind_accept.json"), "--theory", "zf"}).code == cli::kUsage);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"theta"}).code == cli::kUsage);
  CHECK(run({"theta", "cmp", "0"}).code == cli::kUsage);
  CHECK(run({"theta", "cmp", "(v", "0"}).code == cli::kUsage);
  CHECK(run({"--format", "xml", "theta", "cmp", "0", "0"}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  Run help = run({"resolve", "check", "--help"});
  CHECK(help.code == cli::kOk);
  CHECK(help.out.find("FILE") != std::string::npos);
}

TEST_CASE("bounding through the command line") {
  Run ok = run({"--format", "json", "controlled", "bound", cert("cl_top_tight.json"), "--b", "(sum (p 0) (p 0))"});
  REQUIRE(ok.code == cli::kOk);
  CertificateDocument d = certificate_document_from_json(Json::parse(ok.out));
  CHECK(check_certificate(d.certificate, d.registry).accepted());
  CHECK(run({"controlled", "bound", cert("cl_top_tight.json"), "--b", "0"}).code == cli::kReject);
  CHECK(run({"controlled", "check", cert("cl_top_tight.json")}).code == cli::kOk);
}

TEST_CASE("json outputs parse back") {
  Run e = run({"--format", "json", "theta", "enum", "--size", "5"});
  REQUIRE(e.code == cli::kOk);
  Json j = Json::parse(e.out);
  CHECK(j["count"] == j["terms"].size());
  for (const auto& t : j["terms"]) {
    CHECK(theta_to_wire(parse_theta(t.get<std::string>())) == t.get<std::string>());
  }
  Run p = run({"--format", "json", "psi", "enum", "--size", "5"});
  REQUIRE(p.code == cli::kOk);
  for (const auto& t : Json::parse(p.out)["terms"]) {
    CHECK(psi_to_wire(parse_psi(t.get<std::string>())) == t.get<std::string>());
  }
}

TEST_CASE("sweeps are deterministic under a seed") {
  std::vector<std::string> args = {"--seed", "11", "--format", "json", "sweep", "additive",
                                   "--system", "psi", "--size", "6", "--samples", "200"};
  Run a = run(args);
  Run b = run(args);
  REQUIRE(a.code == cli::kOk);
  CHECK(a.out == b.out);
  Json j = Json::parse(a.out);
  CHECK(j["violations"] == 0);
  CHECK(j["seed"] == 11);
  std::vector<std::string> par = args;
  par.insert(par.begin(), {"--jobs", "3"});
  CHECK(run(par).out == a.out);
  Run order = run({"--format", "json", "sweep", "order", "--system", "theta", "--size", "6"});
  REQUIRE(order.code == cli::kOk);
  CHECK(Json::parse(order.out)["violations"] == 0);
}

TEST_CASE("fixpoint commands") {
  std::string rel = temp_file("ordcalc_cli_chain.json", R"({"n":3,"edges":[[0,1],[1,2],[0,2]],"transitive":true})");
  Run t = run({"--format", "json", "lfp", "trace", rel, "--n", "3"});
  REQUIRE(t.code == cli::kOk);
  Json j = Json::parse(t.out);
  CHECK(j["closure"] == 3);
  Run n = run({"lfp", "norm", rel, "--elem", "2", "--n", "3"});
  CHECK(n.code == cli::kOk);
  CHECK(n.out == "2\n");
  CHECK(run({"lfp", "check", rel, "--n", "3"}).code == cli::kOk);
  Run a = run({"--format", "json", "acc", rel});
  REQUIRE(a.code == cli::kOk);
  CHECK(Json::parse(a.out)["w"] == Json::array({0, 1, 2}));
}
