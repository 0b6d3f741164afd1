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

#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace selfsim {

// All counts and state values are exact; no floating point on these paths.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "-p" or "p/q" with q > 0 after normalisation.
Rational parse_rational(const std::string& text);

/// Formats as "p" for integers and "p/q" otherwise (canonical form).
std::string format_rational(const Rational& q);

std::string format_bigint(const BigInt& n);

/// q^k for integer k (k < 0 requires q != 0).
Rational rational_pow(const Rational& q, long k);

BigInt bigint_pow(const BigInt& b, unsigned long k);

/// Dense square matrix of rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n) : n_(n), a_(n * n) {}

  std::size_t size() const { return n_; }
  Rational& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  static RationalMatrix identity(std::size_t n);

 private:
  std::size_t n_ = 0;
  std::vector<Rational> a_;
};

/// Solves m x = rhs by exact Gaussian elimination with partial pivoting.
/// Throws std::domain_error if m is singular.
std::vector<Rational> solve_linear(RationalMatrix m, std::vector<Rational> rhs);

}  // namespace selfsim
