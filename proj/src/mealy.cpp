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

#include "selfsim/mealy.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "selfsim/errors.hpp"

namespace selfsim {

MealyMachine::MealyMachine(Alphabet alphabet, std::vector<State> states, std::optional<int> identity)
    : alphabet_(std::move(alphabet)), states_(std::move(states)), identity_(identity) {
  std::set<std::string> names;
  for (const State& s : states_) {
    if (!names.insert(s.name).second) {
      throw FormatError("duplicate state name '" + s.name + "'");
    }
  }
  if (identity_ && (*identity_ < 0 || static_cast<std::size_t>(*identity_) >= states_.size())) {
    throw FormatError("identity state index out of range");
  }
}

std::optional<int> MealyMachine::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::vector<Violation> validate(const MealyMachine& machine) {
  std::vector<Violation> violations;
  const int letters = machine.alphabet().size();
  for (const auto& s : machine.states()) {
    if (s.out.size() != static_cast<std::size_t>(letters) || s.to.size() != static_cast<std::size_t>(letters)) {
      violations.push_back({s.name, "incomplete output or transition row"});
      continue;
    }
    std::vector<char> hit(static_cast<std::size_t>(letters), 0);
    for (Letter x = 0; x < letters; ++x) {
      const Letter y = s.out[static_cast<std::size_t>(x)];
      if (y < 0 || y >= letters) {
        violations.push_back({s.name, "output letter out of range at '" + machine.alphabet().symbol(x) + "'"});
      } else if (hit[static_cast<std::size_t>(y)]++) {
        violations.push_back({s.name, "output row is not a permutation: letter '" +
                                          machine.alphabet().symbol(y) + "' appears twice"});
      }
      const int t = s.to[static_cast<std::size_t>(x)];
      if (t < 0 || static_cast<std::size_t>(t) >= machine.state_count()) {
        violations.push_back({s.name, "transition target out of range at '" + machine.alphabet().symbol(x) + "'"});
      }
    }
  }
  if (machine.identity()) {
    const auto& s = machine.state(static_cast<std::size_t>(*machine.identity()));
    for (Letter x = 0; x < letters && s.out.size() == static_cast<std::size_t>(letters); ++x) {
      if (s.out[static_cast<std::size_t>(x)] != x || s.to[static_cast<std::size_t>(x)] != *machine.identity()) {
        violations.push_back({s.name, "designated identity state does not act trivially"});
        break;
      }
    }
  }
  return violations;
}

MinimizeResult minimize(const MealyMachine& machine) {
  const auto violations = validate(machine);
  if (!violations.empty()) {
    throw FormatError("cannot minimize an invalid machine: " + violations.front().state + ": " +
                      violations.front().message);
  }
  const std::size_t n = machine.state_count();
  const int letters = machine.alphabet().size();

  std::map<std::vector<Letter>, int> by_row;
  std::vector<int> cls(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, ignored] = by_row.emplace(machine.state(i).out, static_cast<int>(by_row.size()));
    cls[i] = it->second;
    (void)ignored;
  }
  for (;;) {
    std::map<std::vector<int>, int> by_sig;
    std::vector<int> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> sig{cls[i]};
      for (Letter x = 0; x < letters; ++x) {
        sig.push_back(cls[static_cast<std::size_t>(machine.state(i).to[static_cast<std::size_t>(x)])]);
      }
      auto [it, ignored] = by_sig.emplace(std::move(sig), static_cast<int>(by_sig.size()));
      next[i] = it->second;
      (void)ignored;
    }
    const bool stable =
        by_sig.size() == static_cast<std::size_t>(*std::max_element(cls.begin(), cls.end()) + 1);
    cls = std::move(next);
    if (stable) break;
  }

  // one state per class, named after its lexicographically smallest member
  const int count = *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<std::string> class_name(static_cast<std::size_t>(count));
  std::vector<int> class_member(static_cast<std::size_t>(count), -1);
  for (std::size_t i = 0; i < n; ++i) {
    auto& name = class_name[static_cast<std::size_t>(cls[i])];
    if (name.empty() || machine.state(i).name < name) name = machine.state(i).name;
    if (class_member[static_cast<std::size_t>(cls[i])] < 0) class_member[static_cast<std::size_t>(cls[i])] = static_cast<int>(i);
  }
  // order classes lexicographically by their chosen name
  std::vector<int> order(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) order[static_cast<std::size_t>(c)] = c;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return class_name[static_cast<std::size_t>(a)] < class_name[static_cast<std::size_t>(b)]; });
  std::vector<int> position(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) position[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  std::vector<MealyMachine::State> states(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) {
    const auto& src = machine.state(static_cast<std::size_t>(class_member[static_cast<std::size_t>(c)]));
    MealyMachine::State s;
    s.name = class_name[static_cast<std::size_t>(c)];
    s.out = src.out;
    for (Letter x = 0; x < letters; ++x) {
      s.to.push_back(position[static_cast<std::size_t>(cls[static_cast<std::size_t>(src.to[static_cast<std::size_t>(x)])])]);
    }
    states[static_cast<std::size_t>(position[static_cast<std::size_t>(c)])] = std::move(s);
  }
  std::optional<int> identity;
  if (machine.identity()) {
    identity = position[static_cast<std::size_t>(cls[static_cast<std::size_t>(*machine.identity())])];
  }
  std::vector<int> state_map(n);
  for (std::size_t i = 0; i < n; ++i) state_map[i] = position[static_cast<std::size_t>(cls[i])];
  return MinimizeResult{MealyMachine(machine.alphabet(), std::move(states), identity), std::move(state_map)};
}

MealyMachine inverse_of(const MealyMachine& machine) {
  const auto violations = validate(machine);
  if (!violations.empty()) {
    throw FormatError("cannot invert an invalid machine: " + violations.front().state + ": " +
                      violations.front().message);
  }
  const int letters = machine.alphabet().size();
  std::vector<MealyMachine::State> states;
  states.reserve(machine.state_count());
  for (const auto& s : machine.states()) {
    MealyMachine::State inv;
    inv.name = s.name + "^-1";
    inv.out.assign(static_cast<std::size_t>(letters), -1);
    inv.to.assign(static_cast<std::size_t>(letters), -1);
    for (Letter x = 0; x < letters; ++x) {
      inv.out[static_cast<std::size_t>(s.out[static_cast<std::size_t>(x)])] = x;
    }
    for (Letter y = 0; y < letters; ++y) {
      const Letter x = inv.out[static_cast<std::size_t>(y)];  // s^-1 . y
      inv.to[static_cast<std::size_t>(y)] = s.to[static_cast<std::size_t>(x)];
    }
    states.push_back(std::move(inv));
  }
  return MealyMachine(machine.alphabet(), std::move(states), machine.identity());
}

MealyMachine builtin_odometer(int n) {
  if (n < 2) throw std::invalid_argument("odometer needs an alphabet of at least two digits");
  std::vector<std::string> symbols;
  for (int i = 0; i < n; ++i) symbols.push_back(std::to_string(i));
  Alphabet alphabet(std::move(symbols));
  MealyMachine::State e{"e", {}, {}};
  MealyMachine::State g{"g", {}, {}};
  for (Letter x = 0; x < n; ++x) {
    e.out.push_back(x);
    e.to.push_back(0);
    g.out.push_back((x + 1) % n);
    g.to.push_back(x == n - 1 ? 1 : 0);
  }
  return MealyMachine(std::move(alphabet), {std::move(e), std::move(g)}, 0);
}

MealyMachine builtin_basilica() {
  Alphabet alphabet({"x", "y"});
  // a.(xw) = y(b.w), a.(yw) = xw ; b.(xw) = x(a.w), b.(yw) = yw
  MealyMachine::State e{"e", {0, 1}, {0, 0}};
  MealyMachine::State a{"a", {1, 0}, {2, 0}};
  MealyMachine::State b{"b", {0, 1}, {1, 0}};
  return MealyMachine(std::move(alphabet), {e, a, b}, 0);
}

MealyMachine builtin_grigorchuk() {
  Alphabet alphabet({"x", "y"});
  // a swaps and forgets; b,c,d fix both letters with restrictions
  // b -> (a, c), c -> (a, d), d -> (e, b)
  MealyMachine::State e{"e", {0, 1}, {0, 0}};
  MealyMachine::State a{"a", {1, 0}, {0, 0}};
  MealyMachine::State b{"b", {0, 1}, {1, 3}};
  MealyMachine::State c{"c", {0, 1}, {1, 4}};
  MealyMachine::State d{"d", {0, 1}, {0, 2}};
  return MealyMachine(std::move(alphabet), {e, a, b, c, d}, 0);
}

namespace {

void reject_unknown_keys(const nlohmann::json& object, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw FormatError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

}  // namespace

MealyMachine load_machine(const nlohmann::json& document) {
  if (!document.is_object()) throw FormatError("machine document must be a JSON object");
  reject_unknown_keys(document, {"alphabet", "states", "identity"}, "machine document");
  if (!document.contains("alphabet") || !document["alphabet"].is_array()) {
    throw FormatError("machine document needs an 'alphabet' array");
  }
  std::vector<std::string> symbols;
  for (const auto& s : document["alphabet"]) {
    if (!s.is_string()) throw FormatError("alphabet letters must be strings");
    symbols.push_back(s.get<std::string>());
  }
  Alphabet alphabet(std::move(symbols));

  if (!document.contains("states") || !document["states"].is_array()) {
    throw FormatError("machine document needs a 'states' array");
  }
  std::vector<std::string> names;
  std::map<std::string, int> name_index;
  for (const auto& st : document["states"]) {
    if (!st.is_object() || !st.contains("name") || !st["name"].is_string()) {
      throw FormatError("each state needs a string 'name'");
    }
    const std::string name = st["name"].get<std::string>();
    if (name_index.count(name)) throw FormatError("duplicate state name '" + name + "'");
    name_index[name] = static_cast<int>(names.size());
    names.push_back(name);
  }

  std::set<std::string> letter_keys;
  for (Letter x = 0; x < alphabet.size(); ++x) letter_keys.insert(alphabet.symbol(x));

  std::vector<MealyMachine::State> states;
  for (const auto& st : document["states"]) {
    reject_unknown_keys(st, {"name", "out", "to"}, "state object");
    MealyMachine::State state;
    state.name = st["name"].get<std::string>();
    if (!st.contains("out") || !st["out"].is_object() || !st.contains("to") || !st["to"].is_object()) {
      throw FormatError("state '" + state.name + "' needs 'out' and 'to' objects");
    }
    reject_unknown_keys(st["out"], letter_keys, "state '" + state.name + "' output row");
    reject_unknown_keys(st["to"], letter_keys, "state '" + state.name + "' transition row");
    for (Letter x = 0; x < alphabet.size(); ++x) {
      const std::string& letter = alphabet.symbol(x);
      if (!st["out"].contains(letter) || !st["out"][letter].is_string()) {
        throw FormatError("state '" + state.name + "' is missing output at letter '" + letter + "'");
      }
      const auto out_letter = alphabet.find(st["out"][letter].get<std::string>());
      if (!out_letter) {
        throw FormatError("state '" + state.name + "' outputs unknown letter at '" + letter + "'");
      }
      state.out.push_back(*out_letter);
      if (!st["to"].contains(letter) || !st["to"][letter].is_string()) {
        throw FormatError("state '" + state.name + "' is missing transition at letter '" + letter + "'");
      }
      const std::string target = st["to"][letter].get<std::string>();
      auto it = name_index.find(target);
      if (it == name_index.end()) {
        throw FormatError("state '" + state.name + "' transitions to unknown state '" + target + "'");
      }
      state.to.push_back(it->second);
    }
    states.push_back(std::move(state));
  }

  std::optional<int> identity;
  if (document.contains("identity")) {
    if (!document["identity"].is_string()) throw FormatError("'identity' must be a state name");
    auto it = name_index.find(document["identity"].get<std::string>());
    if (it == name_index.end()) {
      throw FormatError("identity state '" + document["identity"].get<std::string>() + "' is not declared");
    }
    identity = it->second;
  }

  MealyMachine machine(std::move(alphabet), std::move(states), identity);
  const auto violations = validate(machine);
  if (!violations.empty()) {
    throw FormatError("invalid machine: state '" + violations.front().state + "': " +
                      violations.front().message);
  }
  return machine;
}

nlohmann::json machine_to_json(const MealyMachine& machine) {
  nlohmann::json doc;
  doc["alphabet"] = nlohmann::json::array();
  for (Letter x = 0; x < machine.alphabet().size(); ++x) doc["alphabet"].push_back(machine.alphabet().symbol(x));
  doc["states"] = nlohmann::json::array();
  for (const auto& s : machine.states()) {
    nlohmann::json st;
    st["name"] = s.name;
    for (Letter x = 0; x < machine.alphabet().size(); ++x) {
      st["out"][machine.alphabet().symbol(x)] = machine.alphabet().symbol(s.out[static_cast<std::size_t>(x)]);
      st["to"][machine.alphabet().symbol(x)] = machine.state(static_cast<std::size_t>(s.to[static_cast<std::size_t>(x)])).name;
    }
    doc["states"].push_back(std::move(st));
  }
  if (machine.identity()) doc["identity"] = machine.state(static_cast<std::size_t>(*machine.identity())).name;
  return doc;
}

namespace {

MealyMachine with_identity(MealyMachine machine) {
  if (machine.identity()) return machine;
  // synthesize a fresh identity state with identity output and self-loops
  std::string name = "e";
  while (machine.find_state(name)) name += "_";
  std::vector<MealyMachine::State> states(machine.states().begin(), machine.states().end());
  MealyMachine::State id_state;
  id_state.name = name;
  for (Letter x = 0; x < machine.alphabet().size(); ++x) {
    id_state.out.push_back(x);
    id_state.to.push_back(static_cast<int>(states.size()));
  }
  states.push_back(std::move(id_state));
  return MealyMachine(machine.alphabet(), std::move(states), static_cast<int>(states.size()) - 1);
}

}  // namespace

std::shared_ptr<MealyBackend> MealyBackend::create(MealyMachine machine) {
  const auto violations = validate(machine);
  if (!violations.empty()) {
    throw FormatError("invalid machine: state '" + violations.front().state + "': " +
                      violations.front().message);
  }
  return std::shared_ptr<MealyBackend>(new MealyBackend(with_identity(std::move(machine))));
}

MealyBackend::MealyBackend(MealyMachine machine)
    : machine_(std::move(machine)), inverse_(inverse_of(machine_)), identity_state_(*machine_.identity()) {
  const int letters = machine_.alphabet().size();
  inverse_out_.reserve(machine_.state_count());
  for (const auto& s : machine_.states()) {
    std::vector<Letter> row(static_cast<std::size_t>(letters), -1);
    for (Letter x = 0; x < letters; ++x) row[static_cast<std::size_t>(s.out[static_cast<std::size_t>(x)])] = x;
    inverse_out_.push_back(std::move(row));
  }
}

std::optional<std::size_t> MealyBackend::find_base(std::string_view name) const {
  auto id = machine_.find_state(name);
  if (!id) return std::nullopt;
  return static_cast<std::size_t>(*id);
}

Letter MealyBackend::act_base(Factor f, Letter x) const {
  const auto id = static_cast<std::size_t>(f.base);
  if (f.inverted) return inverse_out_[id][static_cast<std::size_t>(x)];
  return machine_.state(id).out[static_cast<std::size_t>(x)];
}

void MealyBackend::restrict_base(Factor f, Letter x, FactorWord& out) const {
  const auto id = static_cast<std::size_t>(f.base);
  int target;
  if (f.inverted) {
    // s^-1|_y = (s|_{s^-1.y})^-1
    const Letter seen = inverse_out_[id][static_cast<std::size_t>(x)];
    target = machine_.state(id).to[static_cast<std::size_t>(seen)];
  } else {
    target = machine_.state(id).to[static_cast<std::size_t>(x)];
  }
  if (target == identity_state_) return;
  const Factor g{target, f.inverted};
  if (!out.empty() && out.back().base == g.base && out.back().inverted != g.inverted) {
    out.pop_back();
  } else {
    out.push_back(g);
  }
}

std::string MealyBackend::identity_name() const {
  return machine_.state(static_cast<std::size_t>(identity_state_)).name;
}

GroupElement MealyBackend::state_element(std::size_t id) const {
  auto self = shared_from_this();
  if (static_cast<int>(id) == identity_state_) return GroupElement::identity(self);
  return GroupElement::from_factors(self, {Factor{static_cast<int>(id), false}});
}

std::vector<GroupElement> MealyBackend::generators() const {
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < machine_.state_count(); ++i) {
    if (static_cast<int>(i) == identity_state_) continue;
    gens.push_back(state_element(i));
  }
  return gens;
}

}  // namespace selfsim
