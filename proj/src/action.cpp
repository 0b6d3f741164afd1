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

#include "selfsim/action.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "selfsim/errors.hpp"

namespace selfsim {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw std::invalid_argument("alphabet must have at least one letter");
  std::unordered_set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw std::invalid_argument("alphabet letters must be non-empty");
    if (!seen.insert(s).second) throw std::invalid_argument("duplicate alphabet letter '" + s + "'");
  }
}

std::optional<Letter> Alphabet::find(std::string_view symbol) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i] == symbol) return static_cast<Letter>(i);
  }
  return std::nullopt;
}

Word Word::parse(const Alphabet& alphabet, std::string_view text) {
  std::vector<Letter> letters;
  std::size_t pos = 0;
  while (pos < text.size()) {
    // greedy longest-match against the symbol table
    int best = -1;
    std::size_t best_len = 0;
    for (Letter x = 0; x < alphabet.size(); ++x) {
      const std::string& s = alphabet.symbol(x);
      if (s.size() > best_len && text.substr(pos, s.size()) == s) {
        best = x;
        best_len = s.size();
      }
    }
    if (best < 0) throw ParseError("unknown letter in word '" + std::string(text) + "'", pos);
    letters.push_back(best);
    pos += best_len;
  }
  return Word(std::move(letters));
}

Word Word::concat(const Word& tail) const {
  std::vector<Letter> letters = letters_;
  letters.insert(letters.end(), tail.letters_.begin(), tail.letters_.end());
  return Word(std::move(letters));
}

bool Word::has_prefix(const Word& prefix) const {
  if (prefix.size() > size()) return false;
  return std::equal(prefix.letters_.begin(), prefix.letters_.end(), letters_.begin());
}

Word Word::remainder(std::size_t from) const {
  return Word(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(from), letters_.end()));
}

std::string Word::render(const Alphabet& alphabet) const {
  std::string out;
  for (Letter x : letters_) out += alphabet.symbol(x);
  return out;
}

void reduce_factors(FactorWord& word) {
  FactorWord out;
  out.reserve(word.size());
  for (const Factor& f : word) {
    if (!out.empty() && out.back().base == f.base && out.back().inverted != f.inverted) {
      out.pop_back();
    } else {
      out.push_back(f);
    }
  }
  word = std::move(out);
}

std::string ActionBackend::describe(const FactorWord& word) const {
  if (word.empty()) return identity_name();
  std::string out;
  for (const Factor& f : word) {
    out += base_name(static_cast<std::size_t>(f.base));
    if (f.inverted) out += "^-1";
  }
  return out;
}

struct GroupElement::Shared {
  std::shared_ptr<const ActionBackend> backend;
  FactorWord factors;
  mutable std::mutex mutex;
  mutable std::map<int, std::uint64_t> portraits;
};

GroupElement GroupElement::identity(std::shared_ptr<const ActionBackend> backend) {
  return from_factors(std::move(backend), {});
}

GroupElement GroupElement::from_factors(std::shared_ptr<const ActionBackend> backend, FactorWord factors) {
  if (!backend) throw std::invalid_argument("null backend");
  reduce_factors(factors);
  auto shared = std::make_shared<Shared>();
  shared->backend = std::move(backend);
  shared->factors = std::move(factors);
  return GroupElement(std::move(shared));
}

GroupElement GroupElement::generator(std::shared_ptr<const ActionBackend> backend, std::string_view name) {
  if (!backend) throw std::invalid_argument("null backend");
  if (name == backend->identity_name()) return identity(std::move(backend));
  auto id = backend->find_base(name);
  if (!id) throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
  return from_factors(std::move(backend), {Factor{static_cast<int>(*id), false}});
}

const std::shared_ptr<const ActionBackend>& GroupElement::backend() const {
  if (!shared_) throw std::logic_error("use of default-constructed GroupElement");
  return shared_->backend;
}

const FactorWord& GroupElement::factors() const {
  if (!shared_) throw std::logic_error("use of default-constructed GroupElement");
  return shared_->factors;
}

std::string GroupElement::name() const { return backend()->describe(factors()); }

bool GroupElement::same_word(const GroupElement& other) const {
  return backend() == other.backend() && factors() == other.factors();
}

std::optional<std::uint64_t> GroupElement::cached_portrait(int depth) const {
  std::lock_guard<std::mutex> lock(shared_->mutex);
  auto it = shared_->portraits.find(depth);
  if (it == shared_->portraits.end()) return std::nullopt;
  return it->second;
}

void GroupElement::cache_portrait(int depth, std::uint64_t digest) const {
  std::lock_guard<std::mutex> lock(shared_->mutex);
  shared_->portraits.emplace(depth, digest);
}

Letter act_letter(const ActionBackend& backend, const FactorWord& word, Letter x) {
  Letter cur = x;
  for (std::size_t i = word.size(); i-- > 0;) cur = backend.act_base(word[i], cur);
  return cur;
}

FactorWord restrict_letter(const ActionBackend& backend, const FactorWord& word, Letter x) {
  // factor i sees the image of x under the suffix to its right
  std::vector<Letter> seen(word.size());
  Letter cur = x;
  for (std::size_t i = word.size(); i-- > 0;) {
    seen[i] = cur;
    cur = backend.act_base(word[i], cur);
  }
  FactorWord out;
  for (std::size_t i = 0; i < word.size(); ++i) backend.restrict_base(word[i], seen[i], out);
  reduce_factors(out);
  return out;
}

namespace {

void check_same_backend(const GroupElement& g, const GroupElement& h) {
  if (g.backend() != h.backend()) throw std::invalid_argument("elements belong to different actions");
}

void check_word_alphabet(const GroupElement& g, const Word& v) {
  const int n = g.backend()->alphabet().size();
  for (Letter x : v.letters()) {
    if (x < 0 || x >= n) throw std::invalid_argument("word uses letters outside the action's alphabet");
  }
}

}  // namespace

Word act_word(const GroupElement& g, const Word& v) {
  check_word_alphabet(g, v);
  const ActionBackend& backend = *g.backend();
  FactorWord cur = g.factors();
  std::vector<Letter> image;
  image.reserve(v.size());
  for (Letter x : v.letters()) {
    image.push_back(act_letter(backend, cur, x));
    cur = restrict_letter(backend, cur, x);
  }
  return Word(std::move(image));
}

GroupElement restrict_word(const GroupElement& g, const Word& v) {
  check_word_alphabet(g, v);
  const ActionBackend& backend = *g.backend();
  FactorWord cur = g.factors();
  for (Letter x : v.letters()) cur = restrict_letter(backend, cur, x);
  return GroupElement::from_factors(g.backend(), std::move(cur));
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  check_same_backend(g, h);
  FactorWord factors = g.factors();
  factors.insert(factors.end(), h.factors().begin(), h.factors().end());
  return GroupElement::from_factors(g.backend(), std::move(factors));
}

GroupElement invert(const GroupElement& g) {
  FactorWord factors;
  factors.reserve(g.factors().size());
  for (std::size_t i = g.factors().size(); i-- > 0;) {
    Factor f = g.factors()[i];
    f.inverted = !f.inverted;
    factors.push_back(f);
  }
  return GroupElement::from_factors(g.backend(), std::move(factors));
}

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void mix(std::uint64_t& h, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
}

std::string word_key(const FactorWord& w) {
  std::string key;
  key.reserve(w.size() * 5);
  for (const Factor& f : w) {
    key += std::to_string(f.base);
    key += f.inverted ? '-' : '+';
  }
  return key;
}

std::uint64_t portrait_digest(const ActionBackend& backend, const FactorWord& word, int depth,
                              std::unordered_map<std::string, std::uint64_t>& memo) {
  if (depth <= 0) return kFnvOffset;
  const std::string key = word_key(word) + "@" + std::to_string(depth);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::uint64_t h = kFnvOffset;
  for (Letter x = 0; x < backend.alphabet().size(); ++x) {
    mix(h, static_cast<std::uint64_t>(act_letter(backend, word, x)));
    mix(h, portrait_digest(backend, restrict_letter(backend, word, x), depth - 1, memo));
  }
  memo.emplace(key, h);
  return h;
}

}  // namespace

std::uint64_t portrait_fingerprint(const GroupElement& g, int depth) {
  if (depth < 0) throw std::invalid_argument("portrait depth must be non-negative");
  if (auto cached = g.cached_portrait(depth)) return *cached;
  std::unordered_map<std::string, std::uint64_t> memo;
  std::uint64_t digest = portrait_digest(*g.backend(), g.factors(), depth, memo);
  g.cache_portrait(depth, digest);
  return digest;
}

bool exact_equal_strict(const GroupElement& g, const GroupElement& h, const Caps& caps) {
  switch (exact_equal(g, h, caps)) {
    case Trilean::True:
      return true;
    case Trilean::False:
      return false;
    default:
      throw UndecidedError("equality of '" + g.name() + "' and '" + h.name() +
                           "' undecided within caps");
  }
}

}  // namespace selfsim
