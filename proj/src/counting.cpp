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

#include "selfsim/counting.hpp"

#include <algorithm>
#include <thread>

#include "selfsim/closure.hpp"
#include "selfsim/errors.hpp"

namespace selfsim {

TransferMatrix transfer_matrix(const GroupElement& g, const Caps& caps) {
  ClosureMachine machine(g.backend(), caps);
  auto root = machine.add(g);
  if (!root) throw OverflowError("restriction closure of '" + g.name() + "' exceeded caps");

  TransferMatrix t;
  std::vector<int> rep_state;
  std::vector<int> class_pos(static_cast<std::size_t>(machine.class_count()), -1);
  for (int s : machine.reachable_from(*root)) {
    const int c = machine.class_of(s);
    if (class_pos[static_cast<std::size_t>(c)] < 0) {
      class_pos[static_cast<std::size_t>(c)] = static_cast<int>(rep_state.size());
      rep_state.push_back(s);
    }
  }
  if (class_pos[static_cast<std::size_t>(machine.identity_class())] < 0) {
    class_pos[static_cast<std::size_t>(machine.identity_class())] = static_cast<int>(rep_state.size());
    rep_state.push_back(0);
  }

  const std::size_t n = rep_state.size();
  t.counts.assign(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const int s = rep_state[i];
    t.index.push_back(machine.element_of(s));
    for (Letter x = 0; x < g.backend()->alphabet().size(); ++x) {
      if (machine.out(s, x) != x) continue;  // stationary edges only
      const int target_pos = class_pos[static_cast<std::size_t>(machine.class_of(machine.step(s, x)))];
      t.counts[i][static_cast<std::size_t>(target_pos)] += 1;
    }
  }
  t.start = static_cast<std::size_t>(class_pos[static_cast<std::size_t>(machine.class_of(*root))]);
  t.identity = static_cast<std::size_t>(class_pos[static_cast<std::size_t>(machine.identity_class())]);
  return t;
}

namespace {

using BigMatrix = std::vector<std::vector<BigInt>>;

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b) {
  const std::size_t n = a.size();
  BigMatrix c(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

BigMatrix matrix_power(BigMatrix base, unsigned long k) {
  const std::size_t n = base.size();
  BigMatrix acc(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) acc[i][i] = 1;
  while (k) {
    if (k & 1) acc = multiply(acc, base);
    base = multiply(base, base);
    k >>= 1;
  }
  return acc;
}

}  // namespace

BigInt count_G(const TransferMatrix& t, unsigned long k) {
  const BigMatrix p = matrix_power(t.counts, k);
  BigInt total = 0;
  for (const BigInt& c : p[t.start]) total += c;
  return total;
}

BigInt count_G(const GroupElement& g, unsigned long k, const Caps& caps) {
  return count_G(transfer_matrix(g, caps), k);
}

BigInt count_F(const TransferMatrix& t, unsigned long k) {
  return matrix_power(t.counts, k)[t.start][t.identity];
}

BigInt count_F(const GroupElement& g, unsigned long k, const Caps& caps) {
  return count_F(transfer_matrix(g, caps), k);
}

namespace {

// enumerate X^k in lexicographic order, calling fn for words in [from, to)
template <typename Fn>
void enumerate_words(int letters, unsigned long k, const BigInt& from, const BigInt& to, Fn&& fn) {
  std::vector<Letter> word(k, 0);
  // seat the counter at `from` (mixed-radix, most significant first)
  BigInt rest = from;
  for (std::size_t pos = k; pos-- > 0;) {
    word[pos] = static_cast<Letter>((rest % letters).convert_to<long>());
    rest /= letters;
  }
  for (BigInt i = from; i < to; ++i) {
    fn(word);
    for (std::size_t pos = k; pos-- > 0;) {
      if (++word[pos] < letters) break;
      word[pos] = 0;
    }
  }
}

}  // namespace

std::pair<BigInt, BigInt> brute_force_counts(const GroupElement& g, unsigned long k,
                                             const BruteForceOptions& options) {
  const int letters = g.backend()->alphabet().size();
  const BigInt total = bigint_pow(letters, k);
  if (total > options.budget) {
    throw OverflowError("brute-force enumeration of |X|^k = " + total.str() + " words exceeds the budget");
  }
  const GroupElement id = GroupElement::identity(g.backend());

  const int jobs = std::max(1, options.jobs);
  std::vector<BigInt> g_counts(static_cast<std::size_t>(jobs), 0);
  std::vector<BigInt> f_counts(static_cast<std::size_t>(jobs), 0);

  auto work = [&](int shard) {
    const BigInt from = total * shard / jobs;
    const BigInt to = total * (shard + 1) / jobs;
    BigInt g_count = 0, f_count = 0;
    enumerate_words(letters, k, from, to, [&](const std::vector<Letter>& letters_vec) {
      const Word v{std::vector<Letter>(letters_vec)};
      if (act_word(g, v) != v) return;
      g_count += 1;
      if (exact_equal_strict(restrict_word(g, v), id, options.caps)) f_count += 1;
    });
    g_counts[static_cast<std::size_t>(shard)] = g_count;
    f_counts[static_cast<std::size_t>(shard)] = f_count;
  };

  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int s = 0; s < jobs; ++s) threads.emplace_back(work, s);
    for (auto& t : threads) t.join();
  }

  BigInt g_total = 0, f_total = 0;
  for (int s = 0; s < jobs; ++s) {
    g_total += g_counts[static_cast<std::size_t>(s)];
    f_total += f_counts[static_cast<std::size_t>(s)];
  }
  return {g_total, f_total};
}

Rational critical_value(const GroupElement& g, const Caps& caps) {
  const TransferMatrix t = transfer_matrix(g, caps);
  const std::size_t n = t.index.size();
  const int letters = g.backend()->alphabet().size();

  // which states reach the identity through stationary edges
  std::vector<char> reaches(n, 0);
  reaches[t.identity] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (reaches[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (t.counts[i][j] != 0 && reaches[j]) {
          reaches[i] = 1;
          changed = true;
          break;
        }
      }
    }
  }
  if (!reaches[t.start]) return Rational(0);
  if (t.start == t.identity) return Rational(1);

  // transient states: reach the identity but are not it
  std::vector<std::size_t> transient;
  std::vector<int> pos(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (reaches[i] && i != t.identity) {
      pos[i] = static_cast<int>(transient.size());
      transient.push_back(i);
    }
  }

  // (I - Q/|X|) c = r/|X|, where Q keeps transient-to-transient counts and
  // r counts edges into the identity
  const std::size_t m = transient.size();
  RationalMatrix lhs = RationalMatrix::identity(m);
  std::vector<Rational> rhs(m, Rational(0));
  const Rational inv_letters(1, letters);
  for (std::size_t a = 0; a < m; ++a) {
    const std::size_t i = transient[a];
    for (std::size_t j = 0; j < n; ++j) {
      if (t.counts[i][j] == 0) continue;
      if (j == t.identity) {
        rhs[a] += Rational(t.counts[i][j]) * inv_letters;
      } else if (pos[j] >= 0) {
        lhs.at(a, static_cast<std::size_t>(pos[j])) -= Rational(t.counts[i][j]) * inv_letters;
      }
    }
  }
  const std::vector<Rational> c = solve_linear(std::move(lhs), std::move(rhs));
  return c[static_cast<std::size_t>(pos[t.start])];
}

std::pair<Rational, Rational> critical_limit_bounds(const GroupElement& g, unsigned long k_max,
                                                    const Caps& caps) {
  const TransferMatrix t = transfer_matrix(g, caps);
  const Rational scale = rational_pow(Rational(1, g.backend()->alphabet().size()), static_cast<long>(k_max));
  return {Rational(count_F(t, k_max)) * scale, Rational(count_G(t, k_max)) * scale};
}

}  // namespace selfsim
