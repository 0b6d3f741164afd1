/*
 * Copyright 2026 The selfsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include "selfsim/cli.hpp"
#include "selfsim/errors.hpp"

using namespace selfsim;

TEST_CASE("cmd_nucleus on the built-ins") {
  nlohmann::json out;
  CHECK(cmd_nucleus(load_builtin("grigorchuk", 0), out) == kExitOk);
  CHECK(out["status"] == "verified");
  CHECK(out["elements"] == nlohmann::json({"e", "a", "b", "c", "d"}));
  CHECK(out["certificate"]["contraction_depth"].get<int>() <= 4);

  out.clear();
  CHECK(cmd_nucleus(load_builtin("odometer", 4), out) == kExitOk);
  CHECK(out["element_count"] == 3);

  out.clear();
  CHECK(cmd_nucleus(load_builtin("basilica", 0), out) == kExitOk);
  CHECK(out["element_count"] == 7);

  CHECK_THROWS_AS(load_builtin("nope", 0), std::invalid_argument);
}

TEST_CASE("cmd_nucleus reports inconclusive searches") {
  Caps caps;
  caps.max_elems = 3;
  nlohmann::json out;
  CHECK(cmd_nucleus(load_builtin("grigorchuk", 0, caps), out) == kExitInconclusive);
  CHECK(out["status"] == "inconclusive");
}

TEST_CASE("cmd_moore emits deterministic DOT") {
  std::string first, second;
  CHECK(cmd_moore(load_builtin("grigorchuk", 0), false, first) == kExitOk);
  CHECK(cmd_moore(load_builtin("grigorchuk", 0), false, second) == kExitOk);
  CHECK(first == second);
  CHECK(first.find("d -> e [label=\"(x,x)\"]") != std::string::npos);

  std::string highlighted;
  CHECK(cmd_moore(load_builtin("grigorchuk", 0), true, highlighted) == kExitOk);
  CHECK(highlighted.find("style=bold") != std::string::npos);
}

TEST_CASE("cmd_count with the oracle") {
  nlohmann::json out;
  CHECK(cmd_count(load_builtin("grigorchuk", 0), "d", 4, false, 1, out) == kExitOk);
  CHECK(out["F"] == "9");

  out.clear();
  CHECK(cmd_count(load_builtin("grigorchuk", 0), "e", 5, false, 1, out) == kExitOk);
  CHECK(out["G"] == "32");
  CHECK(out["F"] == "32");

  out.clear();
  CHECK(cmd_count(load_builtin("basilica", 0), "a b a", 4, true, 2, out) == kExitOk);
  CHECK(out["F"] == "4");
  CHECK(out["oracle"]["agrees"] == true);
}

TEST_CASE("cmd_cg with bounds") {
  nlohmann::json out;
  CHECK(cmd_cg(load_builtin("grigorchuk", 0), "c a d a c", std::nullopt, out) == kExitOk);
  CHECK(out["c"] == "4/7");
  CHECK(out["method"] == "LinearSolve");

  out.clear();
  CHECK(cmd_cg(load_builtin("basilica", 0), "b", 10ul, out) == kExitOk);
  CHECK(out["c"] == "1/2");
  CHECK(out["bounds"]["lower"] == "1/2");
  CHECK(out["bounds"]["upper"] == "1/2");

  out.clear();
  CHECK(cmd_cg(load_builtin("basilica", 0), "a b^-1", std::nullopt, out) == kExitOk);
  CHECK(out["c"] == "0");
}

TEST_CASE("cmd_kms modes") {
  nlohmann::json out;
  KmsOptions critical;
  critical.mode = KmsOptions::Mode::Critical;
  critical.term = "u[cadac]";
  CHECK(cmd_kms(load_builtin("grigorchuk", 0), critical, out) == kExitOk);
  CHECK(out["value"] == "4/7");

  out.clear();
  critical.term = "s[x] u[e] s*[x]";
  CHECK(cmd_kms(load_builtin("grigorchuk", 0), critical, out) == kExitOk);
  CHECK(out["value"] == "1/2");

  out.clear();
  KmsOptions gibbs;
  gibbs.mode = KmsOptions::Mode::Gibbs;
  gibbs.r = "1/3";
  gibbs.trace = "dirac";
  gibbs.term = "u[b]";
  gibbs.check_pairs = 100;
  CHECK(cmd_kms(load_builtin("basilica", 0), gibbs, out) == kExitOk);
  CHECK(out["value"] == "1/3");
  CHECK(out["checks"]["pairs"] == 100);
  CHECK(out["checks"]["failures"] == 0);

  out.clear();
  KmsOptions ground;
  ground.mode = KmsOptions::Mode::Ground;
  ground.trace = "trivial";
  ground.term = "u[b] u[b]";
  CHECK(cmd_kms(load_builtin("basilica", 0), ground, out) == kExitOk);
  CHECK(out["value"] == "1");

  KmsOptions bad = gibbs;
  bad.r = "1/2";
  CHECK_THROWS_AS(cmd_kms(load_builtin("basilica", 0), bad, out), NoKmsStateError);
}

TEST_CASE("cmd_relations") {
  nlohmann::json out;
  const std::vector<std::string> checks = {"a a = e", "b b = e", "c c = e", "d d = e",
                                           "c d = b", "d b = c", "b c = d"};
  CHECK(cmd_relations(load_builtin("grigorchuk", 0), checks, out) == kExitOk);
  for (const auto& item : out["checks"]) CHECK(item["equal"] == true);

  out.clear();
  CHECK(cmd_relations(load_builtin("basilica", 0), {"a b = b a"}, out) == kExitOk);
  CHECK(out["checks"][0]["equal"] == false);

  CHECK_THROWS_AS(cmd_relations(load_builtin("basilica", 0), {"a b"}, out), std::invalid_argument);
}

TEST_CASE("action documents load") {
  const std::string dir = SELFSIM_DATA_DIR;

  const LoadedAction grig = load_action_file(dir + "/grigorchuk.json");
  nlohmann::json out;
  CHECK(cmd_nucleus(grig, out) == kExitOk);
  CHECK(out["element_count"] == 5);

  const LoadedAction lattice = load_action_file(dir + "/dilation2d.json");
  CHECK(lattice.name == "dilation-2I");
  out.clear();
  CHECK(cmd_nucleus(lattice, out) == kExitOk);
  CHECK(out["element_count"] == 9);

  out.clear();
  CHECK(cmd_cg(lattice, "e1", std::nullopt, out) == kExitOk);
  CHECK(out["c"] == "0");
  out.clear();
  CHECK(cmd_cg(lattice, "0", std::nullopt, out) == kExitOk);
  CHECK(out["c"] == "1");

  // caps overrides travel with the document
  nlohmann::json doc = {{"type", "zd"},
                        {"matrix", {{2, 0}, {0, 2}}},
                        {"digits", "auto"},
                        {"caps", {{"max_elems", 5000}}}};
  CHECK(load_action_json(doc).caps.max_elems == 5000);

  CHECK_THROWS_AS(load_action_json({{"type", "zd"}, {"matrix", {{1}}}}), FormatError);
  CHECK_THROWS_AS(load_action_json({{"type", "spider"}}), FormatError);
  CHECK_THROWS_AS(load_action_file(dir + "/does-not-exist.json"), FormatError);
}

TEST_CASE("outputs are byte-deterministic") {
  nlohmann::json first, second;
  REQUIRE(cmd_nucleus(load_builtin("basilica", 0), first) == kExitOk);
  REQUIRE(cmd_nucleus(load_builtin("basilica", 0), second) == kExitOk);
  CHECK(first.dump(2) == second.dump(2));

  nlohmann::json kms1, kms2;
  KmsOptions options;
  options.mode = KmsOptions::Mode::Gibbs;
  options.r = "1/3";
  options.term = "u[b] + 2/3 * s[x] u[a] s*[y]";
  options.check_pairs = 25;
  REQUIRE(cmd_kms(load_builtin("basilica", 0), options, kms1) == kExitOk);
  REQUIRE(cmd_kms(load_builtin("basilica", 0), options, kms2) == kExitOk);
  CHECK(kms1.dump(2) == kms2.dump(2));
}

TEST_CASE("kms value over a lattice document") {
  const std::string dir = SELFSIM_DATA_DIR;
  const LoadedAction lattice = load_action_file(dir + "/dilation2d.json");
  nlohmann::json out;
  KmsOptions critical;
  critical.mode = KmsOptions::Mode::Critical;
  critical.term = "s[(0,0)(1,1)] u[0] s*[(0,0)(1,1)]";
  CHECK(cmd_kms(lattice, critical, out) == kExitOk);
  CHECK(out["value"] == "1/16");
}
