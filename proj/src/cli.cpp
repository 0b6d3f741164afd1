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

#include "selfsim/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>

#include "selfsim/counting.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/kms.hpp"
#include "selfsim/mealy.hpp"
#include "selfsim/moore.hpp"
#include "selfsim/numbers.hpp"
#include "selfsim/toeplitz.hpp"
#include "selfsim/zd.hpp"

namespace selfsim {

namespace {

Caps caps_from_json(const nlohmann::json& doc, Caps caps) {
  if (!doc.is_object()) throw FormatError("'caps' must be an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() == "max_elems") {
      caps.max_elems = it.value().get<std::size_t>();
    } else if (it.key() == "max_depth") {
      caps.max_depth = it.value().get<int>();
    } else if (it.key() == "max_rounds") {
      caps.max_rounds = it.value().get<int>();
    } else {
      throw FormatError("unknown key '" + it.key() + "' in caps");
    }
  }
  return caps;
}

LoadedAction load_zd_json(const nlohmann::json& doc, Caps caps) {
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    if (key != "type" && key != "matrix" && key != "digits" && key != "name" && key != "caps") {
      throw FormatError("unknown key '" + key + "' in action document");
    }
  }
  if (!doc.contains("matrix") || !doc["matrix"].is_array() || doc["matrix"].empty()) {
    throw FormatError("zd action needs a 'matrix' array of rows");
  }
  const std::size_t d = doc["matrix"].size();
  std::vector<BigInt> entries;
  for (const auto& row : doc["matrix"]) {
    if (!row.is_array() || row.size() != d) throw FormatError("'matrix' must be square");
    for (const auto& cell : row) {
      if (!cell.is_number_integer()) throw FormatError("'matrix' entries must be integers");
      entries.emplace_back(cell.get<long long>());
    }
  }
  IntMatrix a(d, std::move(entries));

  std::optional<DigitSet> digits;
  if (doc.contains("digits") && doc["digits"] != "auto") {
    if (!doc["digits"].is_array()) throw FormatError("'digits' must be an array or \"auto\"");
    std::vector<IntVec> vecs;
    for (const auto& item : doc["digits"]) {
      IntVec v;
      if (d == 1 && item.is_number_integer()) {
        v.emplace_back(item.get<long long>());
      } else {
        if (!item.is_array() || item.size() != d) throw FormatError("each digit must have d entries");
        for (const auto& cell : item) {
          if (!cell.is_number_integer()) throw FormatError("digit entries must be integers");
          v.emplace_back(cell.get<long long>());
        }
      }
      vecs.push_back(std::move(v));
    }
    try {
      digits.emplace(a.transpose(), std::move(vecs));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }

  LoadedAction action;
  action.caps = caps;
  try {
    auto backend = ZdBackend::create(ZdAction(std::move(a), std::move(digits)));
    action.generators = backend->generators();
    switch (backend->dilation_status()) {
      case DilationStatus::Dilation:
        action.dilation = "dilation";
        break;
      case DilationStatus::NotDilation:
        action.dilation = "not-a-dilation";
        break;
      case DilationStatus::Undetermined:
        action.dilation = "undetermined";
        break;
    }
    action.backend = std::move(backend);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  action.name = doc.contains("name") ? doc["name"].get<std::string>() : "zd";
  return action;
}

LoadedAction load_mealy_json(const nlohmann::json& doc, Caps caps, const std::string& fallback_name) {
  nlohmann::json machine_doc = doc;
  std::string name = fallback_name;
  if (machine_doc.contains("name")) {
    name = machine_doc["name"].get<std::string>();
    machine_doc.erase("name");
  }
  if (machine_doc.contains("caps")) machine_doc.erase("caps");

  LoadedAction action;
  action.caps = caps;
  auto backend = MealyBackend::create(load_machine(machine_doc));
  if (backend->alphabet().degenerate()) {
    std::cerr << "warning: one-letter alphabet; every action on it is degenerate\n";
  }
  action.generators = backend->generators();
  action.backend = std::move(backend);
  action.name = name;
  return action;
}

}  // namespace

LoadedAction load_builtin(const std::string& which, int odometer_n, const Caps& caps) {
  LoadedAction action;
  action.caps = caps;
  std::shared_ptr<MealyBackend> backend;
  if (which == "odometer") {
    backend = MealyBackend::create(builtin_odometer(odometer_n));
    action.name = "odometer(" + std::to_string(odometer_n) + ")";
  } else if (which == "basilica") {
    backend = MealyBackend::create(builtin_basilica());
    action.name = "basilica";
  } else if (which == "grigorchuk") {
    backend = MealyBackend::create(builtin_grigorchuk());
    action.name = "grigorchuk";
  } else {
    throw std::invalid_argument("unknown builtin '" + which + "' (odometer|basilica|grigorchuk)");
  }
  action.generators = backend->generators();
  action.backend = std::move(backend);
  return action;
}

LoadedAction load_action_json(const nlohmann::json& document, const Caps& caps) {
  if (!document.is_object()) throw FormatError("action document must be a JSON object");
  Caps effective = caps;
  if (document.contains("caps")) effective = caps_from_json(document["caps"], effective);
  if (document.contains("type")) {
    if (document["type"] != "zd") throw FormatError("unknown action type; only \"zd\" is recognised");
    return load_zd_json(document, effective);
  }
  return load_mealy_json(document, effective, "mealy");
}

LoadedAction load_action_file(const std::string& path, const Caps& caps) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("invalid JSON in '" + path + "': " + e.what());
  }
  LoadedAction action = load_action_json(doc, caps);
  if (!doc.contains("name")) action.name = path;
  return action;
}

namespace {

nlohmann::json caps_json(const Caps& caps) {
  return {{"max_elems", caps.max_elems}, {"max_depth", caps.max_depth}, {"max_rounds", caps.max_rounds}};
}

GroupElement parse_element_expr(const LoadedAction& action, const std::string& expr) {
  TermAlgebra algebra(action.backend, action.caps);
  return algebra.parse_element(expr);
}

void stamp_action(const LoadedAction& action, nlohmann::json& out) {
  out["action"] = action.name;
  if (!action.dilation.empty()) out["dilation"] = action.dilation;
}

}  // namespace

int cmd_nucleus(const LoadedAction& action, nlohmann::json& out) {
  const NucleusResult result = nucleus(action.backend, action.generators, action.caps);
  stamp_action(action, out);
  out["status"] = result.status == NucleusStatus::Verified ? "verified" : "inconclusive";
  out["elements"] = nlohmann::json::array();
  for (const GroupElement& g : result.elements) out["elements"].push_back(g.name());
  out["element_count"] = result.elements.size();
  nlohmann::json pairs = nlohmann::json::array();
  int max_depth = 0;
  for (const auto& [pair, depth] : result.certificate) {
    pairs.push_back({{"left", result.elements[static_cast<std::size_t>(pair.first)].name()},
                     {"right", result.elements[static_cast<std::size_t>(pair.second)].name()},
                     {"depth", depth}});
    max_depth = std::max(max_depth, depth);
  }
  out["certificate"] = {{"contraction_depth", max_depth}, {"pairs", std::move(pairs)}};
  out["caps"] = caps_json(result.caps_used);
  if (!result.note.empty()) out["note"] = result.note;
  return result.status == NucleusStatus::Verified ? kExitOk : kExitInconclusive;
}

int cmd_moore(const LoadedAction& action, bool highlight_stationary, std::string& dot_out) {
  const NucleusResult result = nucleus(action.backend, action.generators, action.caps);
  if (result.status != NucleusStatus::Verified) {
    std::cerr << "nucleus search inconclusive: " << result.note << "\n";
    return kExitInconclusive;
  }
  const MooreDiagram diagram = build_diagram(action.backend, result.elements, action.caps);
  DotOptions options;
  options.highlight_stationary = highlight_stationary;
  options.graph_name = action.name;
  dot_out = dot_export(diagram, options);
  return kExitOk;
}

int cmd_count(const LoadedAction& action, const std::string& element_expr, unsigned long k, bool oracle,
              int jobs, nlohmann::json& out) {
  const GroupElement g = parse_element_expr(action, element_expr);
  const TransferMatrix t = transfer_matrix(g, action.caps);
  stamp_action(action, out);
  out["element"] = g.name();
  out["k"] = k;
  out["G"] = format_bigint(count_G(t, k));
  out["F"] = format_bigint(count_F(t, k));
  if (oracle) {
    BruteForceOptions options;
    options.jobs = jobs;
    options.caps = action.caps;
    const auto [og, of] = brute_force_counts(g, k, options);
    out["oracle"] = {{"G", format_bigint(og)},
                     {"F", format_bigint(of)},
                     {"agrees", out["G"] == format_bigint(og) && out["F"] == format_bigint(of)}};
  }
  return kExitOk;
}

int cmd_cg(const LoadedAction& action, const std::string& element_expr,
           std::optional<unsigned long> bounds_k, nlohmann::json& out) {
  const GroupElement g = parse_element_expr(action, element_expr);
  stamp_action(action, out);
  out["element"] = g.name();
  out["c"] = format_rational(critical_value(g, action.caps));
  out["method"] = "LinearSolve";
  if (bounds_k) {
    const auto [lower, upper] = critical_limit_bounds(g, *bounds_k, action.caps);
    out["bounds"] = {{"k", *bounds_k}, {"lower", format_rational(lower)}, {"upper", format_rational(upper)}};
  }
  return kExitOk;
}

namespace {

// deterministic random spanning terms for --check
std::vector<std::pair<SpanningTerm, SpanningTerm>> random_term_pairs(const LoadedAction& action, int count,
                                                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int letters = action.backend->alphabet().size();
  auto random_word = [&]() {
    std::uniform_int_distribution<int> len(0, 3);
    std::uniform_int_distribution<int> letter(0, letters - 1);
    std::vector<Letter> w(static_cast<std::size_t>(len(rng)));
    for (Letter& x : w) x = letter(rng);
    return Word(std::move(w));
  };
  auto random_element = [&]() {
    GroupElement g = GroupElement::identity(action.backend);
    if (action.generators.empty()) return g;
    std::uniform_int_distribution<int> len(0, 3);
    std::uniform_int_distribution<std::size_t> pick(0, action.generators.size() - 1);
    std::uniform_int_distribution<int> flip(0, 1);
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
      GroupElement factor = action.generators[pick(rng)];
      if (flip(rng)) factor = invert(factor);
      g = compose(g, factor);
    }
    return g;
  };
  std::vector<std::pair<SpanningTerm, SpanningTerm>> pairs;
  pairs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    pairs.emplace_back(SpanningTerm(random_word(), random_element(), random_word()),
                       SpanningTerm(random_word(), random_element(), random_word()));
  }
  return pairs;
}

}  // namespace

int cmd_kms(const LoadedAction& action, const KmsOptions& options, nlohmann::json& out) {
  TermAlgebra algebra(action.backend, action.caps);
  const int letters = action.backend->alphabet().size();

  Trace trace = Trace::dirac();
  if (options.trace == "trivial") {
    trace = Trace::trivial();
  } else if (options.trace == "critical") {
    trace = Trace::critical(action.caps);
  } else if (options.trace != "dirac") {
    throw std::invalid_argument("unknown trace '" + options.trace + "' (dirac|trivial|critical)");
  }

  StateEvaluator evaluator = StateEvaluator::critical(action.caps);
  Rational r(1, letters);
  switch (options.mode) {
    case KmsOptions::Mode::Gibbs:
      r = parse_rational(options.r);
      evaluator = StateEvaluator::gibbs(r, trace, action.caps);
      out["state"] = {{"kind", "gibbs"}, {"r", format_rational(r)}, {"trace", trace.name()}};
      break;
    case KmsOptions::Mode::Critical:
      out["state"] = {{"kind", "critical"}, {"r", format_rational(r)}};
      break;
    case KmsOptions::Mode::Ground:
      evaluator = StateEvaluator::ground(trace);
      out["state"] = {{"kind", "ground"}, {"omega", trace.name()}};
      break;
  }

  stamp_action(action, out);
  if (!options.term.empty()) {
    const FormalCombination combo = algebra.parse(options.term);
    out["term"] = options.term;
    out["value"] = format_rational(evaluator.value(algebra, combo));
  }

  if (options.check_pairs > 0) {
    if (options.mode == KmsOptions::Mode::Ground) {
      throw std::invalid_argument("--check applies to KMS states; ground states are not KMS at finite r");
    }
    const auto pairs = random_term_pairs(action, options.check_pairs, 0x5e1f51a1u);
    const CheckReport report = kms_check(algebra, evaluator, r, pairs);
    out["checks"] = {{"pairs", report.total}, {"failures", report.failures.size()}};
  }
  return kExitOk;
}

int cmd_relations(const LoadedAction& action, const std::vector<std::string>& checks, nlohmann::json& out) {
  TermAlgebra algebra(action.backend, action.caps);
  stamp_action(action, out);
  out["checks"] = nlohmann::json::array();
  bool any_undecided = false;
  for (const std::string& check : checks) {
    const auto eq = check.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("a relation check must look like 'a b = c'; got '" + check + "'");
    }
    const GroupElement lhs = algebra.parse_element(check.substr(0, eq));
    const GroupElement rhs = algebra.parse_element(check.substr(eq + 1));
    nlohmann::json item = {{"lhs", lhs.name()}, {"rhs", rhs.name()}};
    switch (exact_equal(lhs, rhs, action.caps)) {
      case Trilean::True:
        item["equal"] = true;
        break;
      case Trilean::False:
        item["equal"] = false;
        break;
      case Trilean::Undecided:
        item["equal"] = "undecided";
        any_undecided = true;
        break;
    }
    out["checks"].push_back(std::move(item));
  }
  return any_undecided ? kExitInconclusive : kExitOk;
}

}  // namespace selfsim
