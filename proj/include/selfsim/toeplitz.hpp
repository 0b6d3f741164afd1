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

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "selfsim/action.hpp"
#include "selfsim/numbers.hpp"

namespace selfsim {

/// One spanning term s_v u_g s_w* of the Toeplitz algebra.
class SpanningTerm {
 public:
  SpanningTerm(Word v, GroupElement g, Word w)
      : v_(std::move(v)), g_(std::move(g)), w_(std::move(w)) {}

  const Word& v() const { return v_; }
  const GroupElement& g() const { return g_; }
  const Word& w() const { return w_; }
  /// Degree under the gauge action: |v| - |w|.
  long gauge_degree() const { return static_cast<long>(v_.size()) - static_cast<long>(w_.size()); }

 private:
  Word v_;
  GroupElement g_;
  Word w_;
};

long gauge_degree(const SpanningTerm& term);

/// Key of a term inside one TermAlgebra: words plus the canonical id of the
/// group entry. Ordered, so combinations iterate deterministically.
struct TermKey {
  std::vector<Letter> v;
  int g = 0;
  std::vector<Letter> w;
  auto operator<=>(const TermKey&) const = default;
};

/// Finitely supported rational combination of spanning terms.
/// Zero coefficients are never stored.
class FormalCombination {
 public:
  using Map = std::map<TermKey, Rational>;

  bool empty() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }
  const Map& coefficients() const { return coeffs_; }
  bool operator==(const FormalCombination&) const = default;

  void add(const TermKey& key, const Rational& coeff);

 private:
  Map coeffs_;
};

/// The dense spanning *-subalgebra of one action: products, adjoints, gauge
/// scaling, Cuntz expansion and the term grammar. Group entries are
/// canonicalized against a per-algebra representative cache; an equality
/// that cannot be decided within caps aborts with UndecidedError.
class TermAlgebra {
 public:
  explicit TermAlgebra(std::shared_ptr<const ActionBackend> backend, Caps caps = {});

  const std::shared_ptr<const ActionBackend>& backend() const { return backend_; }

  int canon_id(const GroupElement& g);
  const GroupElement& canon_rep(int id) const { return reps_[static_cast<std::size_t>(id)]; }

  TermKey key_of(const SpanningTerm& term);
  SpanningTerm term_of(const TermKey& key) const;

  FormalCombination zero() const { return {}; }
  FormalCombination unit();
  FormalCombination combination(const SpanningTerm& term, const Rational& coeff = 1);

  FormalCombination sum(const FormalCombination& a, const FormalCombination& b) const;
  FormalCombination scale(const FormalCombination& a, const Rational& factor) const;

  /// Bilinear extension of the spanning-term product rule.
  FormalCombination multiply(const FormalCombination& a, const FormalCombination& b);
  /// Term-wise (v,g,w) -> (w, g^-1, v); rational coefficients are unchanged.
  FormalCombination adjoint(const FormalCombination& a);
  /// Analytic continuation of the gauge action: coefficient of each term is
  /// multiplied by r^{|v|-|w|}.
  FormalCombination gauge_scale(const FormalCombination& a, const Rational& r) const;
  /// Rewrites every term through the depth-n Cuntz relation; only valid in
  /// the Cuntz-Pimsner quotient.
  FormalCombination expand_to_depth(const FormalCombination& a, int n);

  /// Parses the term grammar:
  ///   combo  := ['-'] term (('+'|'-') term)*
  ///   term   := [rational '*'] factor+
  ///   factor := 's[' word ']' | 's*[' word ']' | 'u[' gword ']'
  FormalCombination parse(std::string_view text);
  /// Parses a bare gword such as "a b^-1 a".
  GroupElement parse_element(std::string_view text) const;

  std::string render(const FormalCombination& a);
  std::string render_term(const SpanningTerm& term) const;

 private:
  std::shared_ptr<const ActionBackend> backend_;
  Caps caps_;
  std::vector<GroupElement> reps_;
  std::unordered_map<std::uint64_t, std::vector<int>> reps_by_portrait_;
};

}  // namespace selfsim
