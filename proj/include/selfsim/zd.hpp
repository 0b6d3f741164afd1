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

#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "selfsim/action.hpp"
#include "selfsim/numbers.hpp"

namespace selfsim {

using IntVec = std::vector<BigInt>;

std::string render_int_vec(const IntVec& v);
std::optional<IntVec> parse_int_vec(std::string_view text, std::size_t dim);

/// d x d integer matrix with |det| >= 2, acting on Z^d through its transpose.
class IntMatrix {
 public:
  IntMatrix(std::size_t dim, std::vector<BigInt> entries);  // row-major

  std::size_t dim() const { return dim_; }
  const BigInt& at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  IntMatrix transpose() const;
  IntVec apply(const IntVec& v) const;
  BigInt determinant() const;
  /// Exact inverse over the rationals; throws if singular.
  RationalMatrix inverse() const;

 private:
  std::size_t dim_;
  std::vector<BigInt> entries_;
};

/// A transversal of Z^d / B Z^d containing 0; the action's alphabet.
class DigitSet {
 public:
  DigitSet(const IntMatrix& b, std::vector<IntVec> digits);  // validates

  std::size_t size() const { return digits_.size(); }
  const IntVec& digit(std::size_t i) const { return digits_[i]; }
  const std::vector<IntVec>& digits() const { return digits_; }

 private:
  std::vector<IntVec> digits_;
};

/// N coset representatives found by searching Z^d in sup-norm shells around
/// 0, each shell visited in a fixed order (0, 1, -1, 2, -2, ... per
/// coordinate, lexicographically). Always contains 0.
DigitSet default_digits(const IntMatrix& b);

enum class DilationStatus { Dilation, NotDilation, Undetermined };

/// Floating-point eigenvalue test: all |lambda| > 1 + tol. Advisory only;
/// it never gates the exact action path.
DilationStatus is_dilation(const IntMatrix& a, double tol = 1e-9);

/// The self-similar action of Z^d determined by A (through B = A^t) and a
/// digit set: n.x = c(n+x) and n|_x = B^-1(n + x - c(n+x)), all exact.
class ZdAction {
 public:
  ZdAction(IntMatrix a, std::optional<DigitSet> digits);

  std::size_t dim() const { return a_.dim(); }
  const IntMatrix& matrix() const { return a_; }
  const IntMatrix& transposed() const { return b_; }
  const DigitSet& digits() const { return digits_; }
  const BigInt& modulus() const { return n_; }  // N = |det A|

  /// The representative of n + B Z^d in the digit set.
  IntVec coset_rep(const IntVec& n) const;
  Letter act_letter_vec(const IntVec& n, Letter x) const;
  IntVec res_letter(const IntVec& n, Letter x) const;
  /// b(w) = w_1 + B w_2 + ... + B^{k-1} w_k; b(empty) = 0.
  IntVec digit_expansion(const Word& w) const;

  /// True when B^-1 v is integral, i.e. v lies in B Z^d.
  bool in_lattice(const IntVec& v) const;
  std::optional<std::size_t> digit_index(const IntVec& v) const;

 private:
  IntMatrix a_;
  IntMatrix b_;
  RationalMatrix b_inverse_;
  BigInt n_;
  DigitSet digits_;
};

/// Action backend for (Z^d, Sigma). Base elements are lattice vectors,
/// registered on demand; the unit vectors e1..ed are the generators.
class ZdBackend : public ActionBackend, public std::enable_shared_from_this<ZdBackend> {
 public:
  static std::shared_ptr<ZdBackend> create(ZdAction action);

  const Alphabet& alphabet() const override { return alphabet_; }
  std::size_t base_count() const override;
  const std::string& base_name(std::size_t id) const override;
  std::optional<std::size_t> find_base(std::string_view name) const override;
  Letter act_base(Factor f, Letter x) const override;
  void restrict_base(Factor f, Letter x, FactorWord& out) const override;
  std::string identity_name() const override { return "0"; }
  std::string describe(const FactorWord& word) const override;

  const ZdAction& action() const { return action_; }
  DilationStatus dilation_status() const { return dilation_; }

  GroupElement element_from_vector(const IntVec& v) const;
  /// Net vector of a factor word (the group is abelian).
  IntVec vector_of(const GroupElement& g) const;
  std::vector<GroupElement> generators() const;  // unit vectors

 private:
  explicit ZdBackend(ZdAction action);
  std::size_t ensure_base(const IntVec& v) const;

  ZdAction action_;
  Alphabet alphabet_;
  DilationStatus dilation_;
  // deques keep references stable while bases are registered lazily
  mutable std::mutex mutex_;
  mutable std::deque<IntVec> bases_;
  mutable std::deque<std::string> base_names_;
  mutable std::unordered_map<std::string, std::size_t> base_index_;
};

}  // namespace selfsim
