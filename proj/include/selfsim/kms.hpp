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

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "selfsim/action.hpp"
#include "selfsim/numbers.hpp"
#include "selfsim/toeplitz.hpp"

namespace selfsim {

/// Normalised rational-valued trace on the group algebra.
class Trace {
 public:
  enum class Kind { Dirac, Trivial, Critical, UserSupplied };

  /// 1 at the identity, 0 elsewhere.
  static Trace dirac();
  /// Constantly 1 (the trivial character).
  static Trace trivial();
  /// g -> c_g, the limit of |X|^{-k}|F_g^k| (1 at the identity).
  static Trace critical(Caps caps = {});
  static Trace user(std::string name, std::function<Rational(const GroupElement&)> evaluate);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  Rational operator()(const GroupElement& g) const { return evaluate_(g); }

 private:
  Trace(std::string name, Kind kind, std::function<Rational(const GroupElement&)> evaluate)
      : name_(std::move(name)), kind_(kind), evaluate_(std::move(evaluate)) {}

  std::string name_;
  Kind kind_;
  std::function<Rational(const GroupElement&)> evaluate_;
};

/// The trace property on a sample: tau(gh) = tau(hg) for given pairs.
bool spot_check_trace(const Trace& tau, const std::vector<std::pair<GroupElement, GroupElement>>& pairs);

/// Dense-series value of the Gibbs state at r = e^{-beta} on one spanning
/// term: 0 when v != w, else (1 - |X|r) r^{|v|} [(I - rA)^{-1} t]_g with A
/// the transfer matrix of g and t the trace vector on its closure.
/// Requires 0 < r < 1/|X|; otherwise throws NoKmsStateError.
Rational psi_value(const Rational& r, const Trace& tau, const SpanningTerm& term, const Caps& caps = {});

/// Value of the unique critical state: |X|^{-|v|} c_g when v = w, else 0.
Rational critical_value_state(const SpanningTerm& term, const Caps& caps = {});

/// Ground-state value: omega(g) when v = w = empty, else 0.
Rational ground_value(const Trace& omega, const SpanningTerm& term);

/// A state on the spanning algebra, evaluated exactly on terms and extended
/// linearly to combinations.
class StateEvaluator {
 public:
  static StateEvaluator gibbs(Rational r, Trace tau, Caps caps = {});
  static StateEvaluator critical(Caps caps = {});
  static StateEvaluator ground(Trace omega);

  Rational value(const SpanningTerm& term) const { return evaluate_(term); }
  Rational value(TermAlgebra& algebra, const FormalCombination& combo) const;

  /// Negative control: adds delta to the value of terms equal to `where`.
  StateEvaluator perturbed(const SpanningTerm& where, const Rational& delta, Caps caps = {}) const;

  const std::string& name() const { return name_; }

 private:
  StateEvaluator(std::string name, std::function<Rational(const SpanningTerm&)> evaluate)
      : name_(std::move(name)), evaluate_(std::move(evaluate)) {}

  std::string name_;
  std::function<Rational(const SpanningTerm&)> evaluate_;
};

struct CheckFailure {
  std::string what;
  std::string lhs;
  std::string rhs;
};

struct CheckReport {
  int total = 0;
  std::vector<CheckFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Asserts Phi(a b) = r^{|v|-|w|} Phi(b a) exactly for each pair (a, b),
/// (v, w) being the words of a.
CheckReport kms_check(TermAlgebra& algebra, const StateEvaluator& state, const Rational& r,
                      const std::vector<std::pair<SpanningTerm, SpanningTerm>>& pairs);

/// Asserts Phi(s_v u_g s_w*) = 0 for v != w and = r^{|v|} Phi(u_g) for v = w.
CheckReport characterization_check(TermAlgebra& algebra, const StateEvaluator& state, const Rational& r,
                                   const std::vector<SpanningTerm>& terms);

/// Asserts psi(u_g) = (1 - |X|r) tau(g) + r * sum over fixed letters x of
/// psi(u_{g|_x}), exactly, for each listed element.
CheckReport recursion_check(const Rational& r, const Trace& tau, const std::vector<GroupElement>& elements,
                            const Caps& caps = {});

}  // namespace selfsim
