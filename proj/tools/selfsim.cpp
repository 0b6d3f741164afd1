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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "selfsim/cli.hpp"
#include "selfsim/errors.hpp"

namespace {

struct ActionFlags {
  std::string builtin;
  std::string file;
  int odometer_n = 2;
  std::size_t max_elems = 10000;
  int max_depth = 32;
  int max_rounds = 50;
  int jobs = 1;
};

void add_action_flags(CLI::App* cmd, ActionFlags& flags) {
  cmd->add_option("--builtin", flags.builtin, "one of odometer|basilica|grigorchuk");
  cmd->add_option("--action", flags.file, "action document (JSON file)");
  cmd->add_option("--n", flags.odometer_n, "odometer digit count")->check(CLI::Range(2, 1000000));
  cmd->add_option("--max-elems", flags.max_elems, "closure size cap");
  cmd->add_option("--max-depth", flags.max_depth, "restriction depth cap");
  cmd->add_option("--jobs", flags.jobs, "worker thread cap")->check(CLI::Range(1, 256));
}

selfsim::LoadedAction resolve_action(const ActionFlags& flags) {
  selfsim::Caps caps;
  caps.max_elems = flags.max_elems;
  caps.max_depth = flags.max_depth;
  caps.max_rounds = flags.max_rounds;
  if (!flags.builtin.empty() && !flags.file.empty()) {
    throw std::invalid_argument("--builtin and --action are mutually exclusive");
  }
  if (!flags.builtin.empty()) return selfsim::load_builtin(flags.builtin, flags.odometer_n, caps);
  if (!flags.file.empty()) return selfsim::load_action_file(flags.file, caps);
  throw std::invalid_argument("select an action with --builtin or --action");
}

void emit(const nlohmann::json& out) { std::cout << out.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for self-similar group actions: nuclei, Moore diagrams,\n"
               "fixed-word counts and KMS state values, all in rational arithmetic."};
  app.require_subcommand(1);

  ActionFlags flags;

  auto* nucleus_cmd = app.add_subcommand("nucleus", "compute and verify the nucleus");
  add_action_flags(nucleus_cmd, flags);

  auto* moore_cmd = app.add_subcommand("moore", "export the nucleus Moore diagram as DOT");
  add_action_flags(moore_cmd, flags);
  std::string dot_file;
  bool highlight_stationary = false;
  moore_cmd->add_option("--dot", dot_file, "write DOT here instead of stdout");
  moore_cmd->add_flag("--highlight-stationary", highlight_stationary, "render (x,x) edges bold");

  auto* count_cmd = app.add_subcommand("count", "count fixed words G_g^k and F_g^k");
  add_action_flags(count_cmd, flags);
  std::string element_expr = "e";
  unsigned long k = 0;
  bool with_oracle = false;
  count_cmd->add_option("--element", element_expr, "element expression, e.g. 'a b^-1'")->required();
  count_cmd->add_option("--k", k, "word length")->required();
  count_cmd->add_flag("--oracle", with_oracle, "cross-check against brute-force enumeration");

  auto* cg_cmd = app.add_subcommand("cg", "critical value c_g of an element");
  add_action_flags(cg_cmd, flags);
  std::string cg_element = "e";
  std::optional<unsigned long> bounds_k;
  cg_cmd->add_option("--element", cg_element, "element expression")->required();
  cg_cmd->add_option("--bounds", bounds_k, "also report the k-step sandwich bounds");

  auto* kms_cmd = app.add_subcommand("kms", "evaluate KMS/ground states on spanning terms");
  add_action_flags(kms_cmd, flags);
  selfsim::KmsOptions kms_options;
  bool critical_flag = false, ground_flag = false;
  kms_cmd->add_option("--r", kms_options.r, "Gibbs parameter r = e^-beta as p/q in (0, 1/|X|)");
  kms_cmd->add_flag("--critical", critical_flag, "the unique critical state");
  kms_cmd->add_flag("--ground", ground_flag, "ground state for the chosen omega");
  kms_cmd->add_option("--trace", kms_options.trace, "dirac|trivial|critical");
  kms_cmd->add_option("--term", kms_options.term, "term to evaluate, e.g. 's[x] u[aba] s*[x]'");
  kms_cmd->add_option("--check", kms_options.check_pairs, "run N randomised KMS pair checks");

  auto* relations_cmd = app.add_subcommand("relations", "decide word-problem equalities");
  add_action_flags(relations_cmd, flags);
  std::vector<std::string> relation_checks;
  relations_cmd->add_option("--check", relation_checks, "relation such as 'c d = b' (repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    const selfsim::LoadedAction action = resolve_action(flags);
    nlohmann::json out;

    if (nucleus_cmd->parsed()) {
      const int code = selfsim::cmd_nucleus(action, out);
      emit(out);
      return code;
    }
    if (moore_cmd->parsed()) {
      std::string dot;
      const int code = selfsim::cmd_moore(action, highlight_stationary, dot);
      if (code == selfsim::kExitOk) {
        if (dot_file.empty()) {
          std::cout << dot;
        } else {
          std::ofstream file(dot_file);
          if (!file) throw std::runtime_error("cannot write '" + dot_file + "'");
          file << dot;
        }
      }
      return code;
    }
    if (count_cmd->parsed()) {
      const int code = selfsim::cmd_count(action, element_expr, k, with_oracle, flags.jobs, out);
      emit(out);
      return code;
    }
    if (cg_cmd->parsed()) {
      const int code = selfsim::cmd_cg(action, cg_element, bounds_k, out);
      emit(out);
      return code;
    }
    if (kms_cmd->parsed()) {
      const int modes = (kms_options.r.empty() ? 0 : 1) + (critical_flag ? 1 : 0) + (ground_flag ? 1 : 0);
      if (modes != 1) throw std::invalid_argument("choose exactly one of --r, --critical, --ground");
      kms_options.mode = critical_flag ? selfsim::KmsOptions::Mode::Critical
                         : ground_flag ? selfsim::KmsOptions::Mode::Ground
                                       : selfsim::KmsOptions::Mode::Gibbs;
      const int code = selfsim::cmd_kms(action, kms_options, out);
      emit(out);
      return code;
    }
    if (relations_cmd->parsed()) {
      const int code = selfsim::cmd_relations(action, relation_checks, out);
      emit(out);
      return code;
    }
    return selfsim::kExitUsage;
  } catch (const selfsim::OverflowError& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return selfsim::kExitInconclusive;
  } catch (const selfsim::UndecidedError& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return selfsim::kExitInconclusive;
  } catch (const selfsim::NoKmsStateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return selfsim::kExitUsage;
  } catch (const selfsim::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return selfsim::kExitUsage;
  } catch (const selfsim::FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return selfsim::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return selfsim::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return selfsim::kExitInternal;
  }
}
