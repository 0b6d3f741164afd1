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
#include <unordered_map>
#include <vector>

#include "selfsim/action.hpp"

namespace selfsim {

/// The Mealy machine spanned by a restriction-closed set of reduced factor
/// words. States are words; state 0 is the empty word. Adding a word pulls in
/// its whole restriction closure (breadth-first, subject to caps). Partition
/// refinement then identifies states that induce the same tree automorphism,
/// which is what equality and deduplication are decided by.
class ClosureMachine {
 public:
  ClosureMachine(std::shared_ptr<const ActionBackend> backend, Caps caps);

  const std::shared_ptr<const ActionBackend>& backend() const { return backend_; }
  const Caps& caps() const { return caps_; }

  /// Returns the state of g's reduced word, or nullopt once caps are exceeded.
  std::optional<int> add(const GroupElement& g);
  std::optional<int> add_word(FactorWord word);

  bool overflowed() const { return overflowed_; }
  int depth_reached() const { return depth_reached_; }

  int state_count() const { return static_cast<int>(words_.size()); }
  const FactorWord& word_of(int state) const { return words_[static_cast<std::size_t>(state)]; }
  GroupElement element_of(int state) const;
  int step(int state, Letter x) const { return step_[static_cast<std::size_t>(state)][static_cast<std::size_t>(x)]; }
  Letter out(int state, Letter x) const { return out_[static_cast<std::size_t>(state)][static_cast<std::size_t>(x)]; }
  int depth_of(int state) const { return depth_[static_cast<std::size_t>(state)]; }

  /// All states reachable from `state` by restriction, in BFS order.
  std::vector<int> reachable_from(int state) const;

  // Bisimulation classes. Invalid after an overflow.
  int class_of(int state);
  int class_count();
  int identity_class();
  /// Earliest-created state of the class; the canonical representative.
  int rep_of_class(int cls);

 private:
  void ensure_classes();
  std::optional<int> intern(FactorWord word, int depth);

  std::shared_ptr<const ActionBackend> backend_;
  Caps caps_;
  bool overflowed_ = false;
  int depth_reached_ = 0;

  std::vector<FactorWord> words_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> step_;
  std::vector<std::vector<Letter>> out_;
  std::vector<int> depth_;

  bool classes_dirty_ = true;
  std::vector<int> class_of_;
  std::vector<int> class_rep_;
  int class_count_ = 0;
};

std::string factor_word_key(const FactorWord& word);

}  // namespace selfsim
