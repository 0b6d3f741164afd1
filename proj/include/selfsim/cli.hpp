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

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "selfsim/action.hpp"

namespace selfsim {

// Process exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitInternal = 3;

struct LoadedAction {
  std::string name;
  std::shared_ptr<const ActionBackend> backend;
  std::vector<GroupElement> generators;
  Caps caps;
  std::string dilation;  // lattice actions only: advisory eigenvalue test
};

LoadedAction load_builtin(const std::string& which, int odometer_n, const Caps& caps = {});
LoadedAction load_action_json(const nlohmann::json& document, const Caps& caps = {});
LoadedAction load_action_file(const std::string& path, const Caps& caps = {});

int cmd_nucleus(const LoadedAction& action, nlohmann::json& out);
int cmd_moore(const LoadedAction& action, bool highlight_stationary, std::string& dot_out);
int cmd_count(const LoadedAction& action, const std::string& element_expr, unsigned long k, bool oracle,
              int jobs, nlohmann::json& out);
int cmd_cg(const LoadedAction& action, const std::string& element_expr,
           std::optional<unsigned long> bounds_k, nlohmann::json& out);

struct KmsOptions {
  enum class Mode { Gibbs, Critical, Ground };
  Mode mode = Mode::Critical;
  std::string r;              // "p/q", Gibbs only
  std::string trace = "dirac";  // dirac | trivial | critical
  std::string term;           // term-grammar text
  int check_pairs = 0;        // extra randomised KMS pair checks
};

int cmd_kms(const LoadedAction& action, const KmsOptions& options, nlohmann::json& out);
int cmd_relations(const LoadedAction& action, const std::vector<std::string>& checks, nlohmann::json& out);

}  // namespace selfsim
