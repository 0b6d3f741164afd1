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

#include <utility>
#include <vector>

#include "selfsim/action.hpp"
#include "selfsim/numbers.hpp"

namespace selfsim {

/// Stationary-edge counts over the restriction closure of an element:
/// counts[i][j] is the number of letters x with h_i.x = x and h_i|_x = h_j.
/// Powers of this matrix count stationary paths, hence fixed words.
struct TransferMatrix {
  std::vector<GroupElement> index;  // closure representatives; identity included
  std::size_t start = 0;            // row of the element itself
  std::size_t identity = 0;         // row of the identity
  std::vector<std::vector<BigInt>> counts;
};

TransferMatrix transfer_matrix(const GroupElement& g, const Caps& caps = {});

/// |G_g^k|: words of length k fixed by g.
BigInt count_G(const TransferMatrix& t, unsigned long k);
BigInt count_G(const GroupElement& g, unsigned long k, const Caps& caps = {});

/// |F_g^k|: words of length k fixed by g with trivial restriction.
BigInt count_F(const TransferMatrix& t, unsigned long k);
BigInt count_F(const GroupElement& g, unsigned long k, const Caps& caps = {});

struct BruteForceOptions {
  BigInt budget = 1000000;  // maximal |X|^k
  int jobs = 1;
  Caps caps;
};

/// Independent oracle: enumerates X^k and applies act_word / restrict_word /
/// exact_equal directly. Returns (|G_g^k|, |F_g^k|).
std::pair<BigInt, BigInt> brute_force_counts(const GroupElement& g, unsigned long k,
                                             const BruteForceOptions& options = {});

/// c_g = lim |X|^{-k} |F_g^k|, computed exactly as the absorption
/// probability at the identity of the stationary walk on the closure.
/// States that cannot reach the identity through stationary edges
/// contribute 0 and are removed before the linear solve.
Rational critical_value(const GroupElement& g, const Caps& caps = {});

/// (|X|^{-k}|F_g^k|, |X|^{-k}|G_g^k|) at k = k_max; these sandwich c_g.
std::pair<Rational, Rational> critical_limit_bounds(const GroupElement& g, unsigned long k_max,
                                                    const Caps& caps = {});

}  // namespace selfsim
