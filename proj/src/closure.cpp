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

#include "selfsim/closure.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "selfsim/errors.hpp"

namespace selfsim {

std::string factor_word_key(const FactorWord& word) {
  std::string key;
  key.reserve(word.size() * 5);
  for (const Factor& f : word) {
    key += std::to_string(f.base);
    key += f.inverted ? '-' : '+';
  }
  return key;
}

ClosureMachine::ClosureMachine(std::shared_ptr<const ActionBackend> backend, Caps caps)
    : backend_(std::move(backend)), caps_(caps) {
  if (!backend_) throw std::invalid_argument("null backend");
  intern({}, 0);  // state 0 is the identity word
}

GroupElement ClosureMachine::element_of(int state) const {
  return GroupElement::from_factors(backend_, words_[static_cast<std::size_t>(state)]);
}

std::optional<int> ClosureMachine::intern(FactorWord word, int depth) {
  const std::string key = factor_word_key(word);
  if (auto it = index_.find(key); it != index_.end()) {
    return it->second;
  }
  if (overflowed_) return std::nullopt;
  if (words_.size() >= caps_.max_elems) {
    overflowed_ = true;
    return std::nullopt;
  }
  if (depth > caps_.max_depth) {
    overflowed_ = true;
    return std::nullopt;
  }
  const int id = static_cast<int>(words_.size());
  const int letters = backend_->alphabet().size();
  words_.push_back(std::move(word));
  index_.emplace(key, id);
  step_.emplace_back(static_cast<std::size_t>(letters), -1);
  out_.emplace_back(static_cast<std::size_t>(letters), -1);
  depth_.push_back(depth);
  depth_reached_ = std::max(depth_reached_, depth);
  classes_dirty_ = true;

  // close under restriction, breadth-first
  std::deque<int> queue{id};
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (Letter x = 0; x < letters; ++x) {
      const FactorWord& w = words_[static_cast<std::size_t>(s)];
      out_[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)] = act_letter(*backend_, w, x);
      FactorWord next = restrict_letter(*backend_, w, x);
      const std::string next_key = factor_word_key(next);
      auto it = index_.find(next_key);
      int target;
      if (it != index_.end()) {
        target = it->second;
      } else {
        const int next_depth = depth_[static_cast<std::size_t>(s)] + 1;
        if (words_.size() >= caps_.max_elems || next_depth > caps_.max_depth) {
          overflowed_ = true;
          return std::nullopt;
        }
        target = static_cast<int>(words_.size());
        words_.push_back(std::move(next));
        index_.emplace(next_key, target);
        step_.emplace_back(static_cast<std::size_t>(letters), -1);
        out_.emplace_back(static_cast<std::size_t>(letters), -1);
        depth_.push_back(next_depth);
        depth_reached_ = std::max(depth_reached_, next_depth);
        queue.push_back(target);
      }
      step_[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)] = target;
    }
  }
  return id;
}

std::optional<int> ClosureMachine::add(const GroupElement& g) {
  if (g.backend() != backend_) throw std::invalid_argument("element belongs to a different action");
  return add_word(g.factors());
}

std::optional<int> ClosureMachine::add_word(FactorWord word) {
  reduce_factors(word);
  return intern(std::move(word), 0);
}

std::vector<int> ClosureMachine::reachable_from(int state) const {
  std::vector<int> order{state};
  std::vector<char> seen(words_.size(), 0);
  seen[static_cast<std::size_t>(state)] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Letter x = 0; x < backend_->alphabet().size(); ++x) {
      const int t = step(order[i], x);
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = 1;
        order.push_back(t);
      }
    }
  }
  return order;
}

void ClosureMachine::ensure_classes() {
  if (overflowed_) throw OverflowError("restriction closure exceeded caps");
  if (!classes_dirty_) return;

  const std::size_t n = words_.size();
  const int letters = backend_->alphabet().size();

  // initial partition: output rows
  std::map<std::vector<Letter>, int> by_row;
  std::vector<int> cls(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = by_row.emplace(out_[i], static_cast<int>(by_row.size()));
    cls[i] = it->second;
    (void)inserted;
  }

  // refine by transition-target classes until stable
  for (;;) {
    std::map<std::vector<int>, int> by_sig;
    std::vector<int> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> sig;
      sig.reserve(static_cast<std::size_t>(letters) + 1);
      sig.push_back(cls[i]);
      for (Letter x = 0; x < letters; ++x) {
        sig.push_back(cls[static_cast<std::size_t>(step_[i][static_cast<std::size_t>(x)])]);
      }
      auto [it, inserted] = by_sig.emplace(std::move(sig), static_cast<int>(by_sig.size()));
      next[i] = it->second;
      (void)inserted;
    }
    const bool stable = by_sig.size() == static_cast<std::size_t>(*std::max_element(cls.begin(), cls.end()) + 1);
    cls = std::move(next);
    if (stable) break;
  }

  // renumber classes by earliest-created member and record representatives
  const int raw_count = *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<int> first(static_cast<std::size_t>(raw_count), -1);
  std::vector<int> order;
  for (std::size_t i = 0; i < n; ++i) {
    if (first[static_cast<std::size_t>(cls[i])] < 0) {
      first[static_cast<std::size_t>(cls[i])] = static_cast<int>(order.size());
      order.push_back(static_cast<int>(i));
    }
  }
  class_of_.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) class_of_[i] = first[static_cast<std::size_t>(cls[i])];
  class_rep_ = std::move(order);
  class_count_ = raw_count;
  classes_dirty_ = false;
}

int ClosureMachine::class_of(int state) {
  ensure_classes();
  return class_of_[static_cast<std::size_t>(state)];
}

int ClosureMachine::class_count() {
  ensure_classes();
  return class_count_;
}

int ClosureMachine::identity_class() {
  ensure_classes();
  return class_of_[0];
}

int ClosureMachine::rep_of_class(int cls) {
  ensure_classes();
  return class_rep_[static_cast<std::size_t>(cls)];
}

ClosureResult restriction_closure(const GroupElement& g, std::size_t max_elems, int max_depth) {
  if (max_elems == 0 || max_depth < 0) throw std::invalid_argument("closure caps must be positive");
  Caps caps;
  caps.max_elems = max_elems;
  caps.max_depth = max_depth;
  ClosureMachine machine(g.backend(), caps);
  ClosureResult result;
  auto root = machine.add(g);
  if (!root) {
    result.overflow = true;
    result.depth_reached = machine.depth_reached();
    for (int s = 0; s < machine.state_count(); ++s) result.elements.push_back(machine.element_of(s));
    return result;
  }
  // deduplicate the reachable set by bisimulation class, keeping BFS order
  std::vector<int> reach = machine.reachable_from(*root);
  std::vector<char> taken(static_cast<std::size_t>(machine.class_count()), 0);
  for (int s : reach) {
    const int c = machine.class_of(s);
    if (!taken[static_cast<std::size_t>(c)]) {
      taken[static_cast<std::size_t>(c)] = 1;
      result.elements.push_back(machine.element_of(s));
    }
  }
  result.depth_reached = machine.depth_reached();
  return result;
}

Trilean exact_equal(const GroupElement& g, const GroupElement& h, const Caps& caps) {
  if (g.backend() != h.backend()) throw std::invalid_argument("elements belong to different actions");
  if (g.factors() == h.factors()) return Trilean::True;
  if (portrait_fingerprint(g, caps.fingerprint_depth) != portrait_fingerprint(h, caps.fingerprint_depth)) {
    return Trilean::False;
  }
  // exact decision: g h^-1 must act trivially
  FactorWord word = compose(g, invert(h)).factors();
  ClosureMachine machine(g.backend(), caps);
  auto state = machine.add_word(std::move(word));
  if (!state || machine.overflowed()) return Trilean::Undecided;
  return machine.class_of(*state) == machine.identity_class() ? Trilean::True : Trilean::False;
}

}  // namespace selfsim
