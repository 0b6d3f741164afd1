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

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace selfsim {

/// Letters are indices 0..|X|-1; symbolic names live at the I/O boundary.
using Letter = int;

class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  int size() const { return static_cast<int>(symbols_.size()); }
  const std::string& symbol(Letter x) const { return symbols_.at(static_cast<std::size_t>(x)); }
  std::optional<Letter> find(std::string_view symbol) const;
  /// A one-letter alphabet is accepted but degenerate; callers may warn.
  bool degenerate() const { return symbols_.size() < 2; }
  bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<std::string> symbols_;
};

/// A finite word over the alphabet, stored as letter indices.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  /// Greedy longest-match tokenisation of `text` into alphabet symbols.
  static Word parse(const Alphabet& alphabet, std::string_view text);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }
  void push_back(Letter x) { letters_.push_back(x); }
  Word concat(const Word& tail) const;
  /// True when `prefix` is an initial segment; remainder() gives the rest.
  bool has_prefix(const Word& prefix) const;
  Word remainder(std::size_t from) const;
  std::string render(const Alphabet& alphabet) const;

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

/// One factor of a group element: a backend base element, possibly inverted.
struct Factor {
  int base = 0;
  bool inverted = false;
  auto operator<=>(const Factor&) const = default;
};

using FactorWord = std::vector<Factor>;

/// Cancels adjacent (s,+)(s,-) pairs; no group relations are assumed.
void reduce_factors(FactorWord& word);

/// Per-letter primitives a backend must provide. Base elements act by
/// permutations of the alphabet; restriction returns a reduced factor word.
class ActionBackend {
 public:
  virtual ~ActionBackend() = default;

  virtual const Alphabet& alphabet() const = 0;
  virtual std::size_t base_count() const = 0;
  virtual const std::string& base_name(std::size_t id) const = 0;
  virtual std::optional<std::size_t> find_base(std::string_view name) const = 0;

  virtual Letter act_base(Factor f, Letter x) const = 0;
  /// Appends the factors of f|_x (reduced against the tail of `out`).
  virtual void restrict_base(Factor f, Letter x, FactorWord& out) const = 0;

  virtual std::string identity_name() const { return "e"; }
  /// Display name for a reduced word; the empty word renders as the identity.
  virtual std::string describe(const FactorWord& word) const;
};

/// An element of the acting group: a reduced word over backend base elements.
/// Immutable value; copies share representation and the portrait cache.
class GroupElement {
 public:
  GroupElement() = default;

  static GroupElement identity(std::shared_ptr<const ActionBackend> backend);
  static GroupElement from_factors(std::shared_ptr<const ActionBackend> backend, FactorWord factors);
  /// Looks the name up among base elements; the identity name is accepted.
  static GroupElement generator(std::shared_ptr<const ActionBackend> backend, std::string_view name);

  bool valid() const { return shared_ != nullptr; }
  const std::shared_ptr<const ActionBackend>& backend() const;
  const FactorWord& factors() const;
  bool is_identity_word() const { return factors().empty(); }
  std::size_t length() const { return factors().size(); }
  std::string name() const;

  /// Syntactic comparison of reduced words (not semantic equality).
  bool same_word(const GroupElement& other) const;

  std::optional<std::uint64_t> cached_portrait(int depth) const;
  void cache_portrait(int depth, std::uint64_t digest) const;

 private:
  struct Shared;
  explicit GroupElement(std::shared_ptr<const Shared> shared) : shared_(std::move(shared)) {}
  std::shared_ptr<const Shared> shared_;
};

struct Caps {
  std::size_t max_elems = 10000;  // closure size cap
  int max_depth = 32;             // restriction/contraction depth cap
  int max_rounds = 50;            // outer iterations in nucleus search
  int fingerprint_depth = 8;      // portrait filter depth for equality
};

enum class Trilean { False, True, Undecided };

// Raw factor-word primitives; act applies the rightmost factor first.
Letter act_letter(const ActionBackend& backend, const FactorWord& word, Letter x);
FactorWord restrict_letter(const ActionBackend& backend, const FactorWord& word, Letter x);

Word act_word(const GroupElement& g, const Word& v);
GroupElement restrict_word(const GroupElement& g, const Word& v);
GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement invert(const GroupElement& g);

/// Digest of the action of g on all words of length <= depth. Equal elements
/// get equal digests at every depth; digests are stable across runs.
std::uint64_t portrait_fingerprint(const GroupElement& g, int depth);

struct ClosureResult {
  bool overflow = false;
  std::vector<GroupElement> elements;  // {g|_v} with g first, deduplicated
  int depth_reached = 0;
};

ClosureResult restriction_closure(const GroupElement& g, std::size_t max_elems, int max_depth);

/// Decides whether g and h induce the same map on the word tree.
/// Fingerprint filter first, then the finite-machine decision on the
/// closure of g h^-1; Undecided when that closure exceeds caps.
Trilean exact_equal(const GroupElement& g, const GroupElement& h, const Caps& caps = {});

/// exact_equal that treats Undecided as an error.
bool exact_equal_strict(const GroupElement& g, const GroupElement& h, const Caps& caps = {});

}  // namespace selfsim
