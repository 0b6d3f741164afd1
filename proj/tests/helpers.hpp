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
#include <random>
#include <string>
#include <vector>

#include "selfsim/action.hpp"
#include "selfsim/mealy.hpp"

namespace selfsim::testing {

inline std::shared_ptr<MealyBackend> basilica() { return MealyBackend::create(builtin_basilica()); }
inline std::shared_ptr<MealyBackend> grigorchuk() { return MealyBackend::create(builtin_grigorchuk()); }
inline std::shared_ptr<MealyBackend> odometer(int n) { return MealyBackend::create(builtin_odometer(n)); }

inline GroupElement gen(const std::shared_ptr<const ActionBackend>& backend, std::string_view name) {
  return GroupElement::generator(backend, name);
}

/// Product of named generators; a trailing '^-1' inverts, e.g. "a b^-1".
inline GroupElement word_elem(const std::shared_ptr<const ActionBackend>& backend, const std::string& text) {
  GroupElement g = GroupElement::identity(backend);
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ') ++end;
    if (end == pos) break;
    std::string token = text.substr(pos, end - pos);
    bool inverted = false;
    if (token.size() > 3 && token.substr(token.size() - 3) == "^-1") {
      inverted = true;
      token = token.substr(0, token.size() - 3);
    }
    GroupElement factor = gen(backend, token);
    if (inverted) factor = invert(factor);
    g = compose(g, factor);
    pos = end;
  }
  return g;
}

inline Word word(const std::shared_ptr<const ActionBackend>& backend, std::string_view text) {
  return Word::parse(backend->alphabet(), text);
}

/// Deterministic random products of up to `max_factors` generators/inverses.
inline std::vector<GroupElement> random_products(const std::shared_ptr<const ActionBackend>& backend,
                                                 const std::vector<GroupElement>& generators, int count,
                                                 int max_factors, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(0, max_factors);
  std::uniform_int_distribution<std::size_t> pick(0, generators.size() - 1);
  std::uniform_int_distribution<int> flip(0, 1);
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    GroupElement g = GroupElement::identity(backend);
    const int n = len(rng);
    for (int j = 0; j < n; ++j) {
      GroupElement factor = generators[pick(rng)];
      if (flip(rng)) factor = invert(factor);
      g = compose(g, factor);
    }
    out.push_back(g);
  }
  return out;
}

inline std::vector<Word> all_words(const std::shared_ptr<const ActionBackend>& backend, std::size_t length) {
  const int letters = backend->alphabet().size();
  std::vector<Word> out;
  std::vector<Letter> w(length, 0);
  for (;;) {
    out.emplace_back(std::vector<Letter>(w));
    std::size_t pos = length;
    bool done = length == 0;
    while (!done) {
      if (pos == 0) {
        done = true;
        break;
      }
      --pos;
      if (++w[pos] < letters) break;
      w[pos] = 0;
    }
    if (done) break;
  }
  return out;
}

inline std::vector<Word> random_words(const std::shared_ptr<const ActionBackend>& backend, int count,
                                      int max_length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int letters = backend->alphabet().size();
  std::uniform_int_distribution<int> len(0, max_length);
  std::uniform_int_distribution<int> letter(0, letters - 1);
  std::vector<Word> out;
  for (int i = 0; i < count; ++i) {
    std::vector<Letter> w(static_cast<std::size_t>(len(rng)));
    for (Letter& x : w) x = letter(rng);
    out.emplace_back(std::move(w));
  }
  return out;
}

/// Set equality under exact element equality.
inline bool same_element_set(const std::vector<GroupElement>& got, const std::vector<GroupElement>& expected) {
  if (got.size() != expected.size()) return false;
  for (const GroupElement& e : expected) {
    bool found = false;
    for (const GroupElement& g : got) {
      if (exact_equal_strict(g, e)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace selfsim::testing
