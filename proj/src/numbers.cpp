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

#include "selfsim/numbers.hpp"

#include <cstddef>

namespace selfsim {

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(BigInt(text));
    }
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
}

std::string format_rational(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string format_bigint(const BigInt& n) { return n.str(); }

Rational rational_pow(const Rational& q, long k) {
  if (k < 0) {
    if (q == 0) throw std::domain_error("0 has no negative powers");
    return 1 / rational_pow(q, -k);
  }
  Rational acc(1), base = q;
  unsigned long e = static_cast<unsigned long>(k);
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

BigInt bigint_pow(const BigInt& b, unsigned long k) {
  BigInt acc(1), base = b;
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::vector<Rational> solve_linear(RationalMatrix m, std::vector<Rational> rhs) {
  const std::size_t n = m.size();
  if (rhs.size() != n) throw std::invalid_argument("rhs size mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m.at(pivot, col) == 0) ++pivot;
    if (pivot == n) throw std::domain_error("singular matrix");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      std::swap(rhs[pivot], rhs[col]);
    }
    const Rational inv = 1 / m.at(col, col);
    for (std::size_t j = col; j < n; ++j) m.at(col, j) *= inv;
    rhs[col] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m.at(row, col) == 0) continue;
      const Rational f = m.at(row, col);
      for (std::size_t j = col; j < n; ++j) m.at(row, j) -= f * m.at(col, j);
      rhs[row] -= f * rhs[col];
    }
  }
  return rhs;
}

}  // namespace selfsim
