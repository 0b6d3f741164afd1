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

#include <nlohmann/json_fwd.hpp>

#include "selfsim/action.hpp"

namespace selfsim {

/// Finite invertible letter transducer. State s carries an output row
/// (x -> s.x, a permutation of the alphabet) and a transition row
/// (x -> s|_x, another state).
class MealyMachine {
 public:
  struct State {
    std::string name;
    std::vector<Letter> out;  // output row, indexed by letter
    std::vector<int> to;      // transition row, indexed by letter
  };

  MealyMachine(Alphabet alphabet, std::vector<State> states, std::optional<int> identity);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return states_.size(); }
  const State& state(std::size_t i) const { return states_[i]; }
  const std::vector<State>& states() const { return states_; }
  std::optional<int> identity() const { return identity_; }
  std::optional<int> find_state(std::string_view name) const;

 private:
  Alphabet alphabet_;
  std::vector<State> states_;
  std::optional<int> identity_;
};

struct Violation {
  std::string state;
  std::string message;
};

/// Empty result means the machine is a valid invertible transducer.
std::vector<Violation> validate(const MealyMachine& machine);

struct MinimizeResult {
  MealyMachine machine;
  std::vector<int> state_map;  // original state -> minimized state
};

/// Quotient by action-equivalence: two states are merged iff they induce the
/// same tree automorphism. Refinement starts from the output-row partition
/// and splits by transition targets until stable.
MinimizeResult minimize(const MealyMachine& machine);

/// The machine of formal inverses: the output row of s^-1 is the inverse
/// permutation, and s^-1 restricts at y to (s|_{s^-1.y})^-1.
MealyMachine inverse_of(const MealyMachine& machine);

MealyMachine builtin_odometer(int n);
MealyMachine builtin_basilica();
MealyMachine builtin_grigorchuk();

/// Parses the JSON machine schema. Unknown keys are rejected; the loaded
/// machine is validated. Throws FormatError.
MealyMachine load_machine(const nlohmann::json& document);

nlohmann::json machine_to_json(const MealyMachine& machine);

/// Action backend whose base elements are the non-identity machine states.
/// Inverse factors are resolved through the machine of formal inverses.
/// An identity state is synthesized when the machine does not have one.
class MealyBackend : public ActionBackend, public std::enable_shared_from_this<MealyBackend> {
 public:
  static std::shared_ptr<MealyBackend> create(MealyMachine machine);

  const Alphabet& alphabet() const override { return machine_.alphabet(); }
  std::size_t base_count() const override { return machine_.state_count(); }
  const std::string& base_name(std::size_t id) const override { return machine_.state(id).name; }
  std::optional<std::size_t> find_base(std::string_view name) const override;
  Letter act_base(Factor f, Letter x) const override;
  void restrict_base(Factor f, Letter x, FactorWord& out) const override;
  std::string identity_name() const override;

  const MealyMachine& machine() const { return machine_; }
  const MealyMachine& inverse_machine() const { return inverse_; }
  int identity_state() const { return identity_state_; }

  GroupElement state_element(std::size_t id) const;
  /// All non-identity states, in machine order.
  std::vector<GroupElement> generators() const;

 private:
  explicit MealyBackend(MealyMachine machine);

  MealyMachine machine_;
  MealyMachine inverse_;
  int identity_state_;
  std::vector<std::vector<Letter>> inverse_out_;  // per state, inverse output row
};

}  // namespace selfsim
