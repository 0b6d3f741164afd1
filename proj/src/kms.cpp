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

#include "selfsim/kms.hpp"

#include "selfsim/counting.hpp"
#include "selfsim/errors.hpp"

namespace selfsim {

Trace Trace::dirac() {
  return Trace("dirac", Kind::Dirac, [](const GroupElement& g) -> Rational {
    return exact_equal_strict(g, GroupElement::identity(g.backend())) ? 1 : 0;
  });
}

Trace Trace::trivial() {
  return Trace("trivial", Kind::Trivial, [](const GroupElement&) -> Rational { return 1; });
}

Trace Trace::critical(Caps caps) {
  return Trace("critical", Kind::Critical,
               [caps](const GroupElement& g) -> Rational { return critical_value(g, caps); });
}

Trace Trace::user(std::string name, std::function<Rational(const GroupElement&)> evaluate) {
  return Trace(std::move(name), Kind::UserSupplied, std::move(evaluate));
}

bool spot_check_trace(const Trace& tau, const std::vector<std::pair<GroupElement, GroupElement>>& pairs) {
  for (const auto& [g, h] : pairs) {
    if (tau(compose(g, h)) != tau(compose(h, g))) return false;
  }
  return true;
}

Rational psi_value(const Rational& r, const Trace& tau, const SpanningTerm& term, const Caps& caps) {
  const int letters = term.g().backend()->alphabet().size();
  if (r <= 0 || r >= Rational(1, letters)) {
    throw NoKmsStateError("no Gibbs states exist at r = " + format_rational(r) +
                          "; the admissible range is 0 < r < 1/" + std::to_string(letters));
  }
  if (term.v() != term.w()) return 0;

  const TransferMatrix t = transfer_matrix(term.g(), caps);
  const std::size_t n = t.index.size();
  RationalMatrix lhs = RationalMatrix::identity(n);
  std::vector<Rational> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = tau(t.index[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (t.counts[i][j] != 0) lhs.at(i, j) -= r * Rational(t.counts[i][j]);
    }
  }
  // row sums of rA stay below 1, so I - rA is strictly diagonally dominant
  const std::vector<Rational> z = solve_linear(std::move(lhs), std::move(rhs));
  return (1 - letters * r) * rational_pow(r, static_cast<long>(term.v().size())) * z[t.start];
}

Rational critical_value_state(const SpanningTerm& term, const Caps& caps) {
  if (term.v() != term.w()) return 0;
  const int letters = term.g().backend()->alphabet().size();
  return rational_pow(Rational(1, letters), static_cast<long>(term.v().size())) *
         critical_value(term.g(), caps);
}

Rational ground_value(const Trace& omega, const SpanningTerm& term) {
  if (!term.v().empty() || !term.w().empty()) return 0;
  return omega(term.g());
}

StateEvaluator StateEvaluator::gibbs(Rational r, Trace tau, Caps caps) {
  std::string name = "gibbs(r=" + format_rational(r) + "," + tau.name() + ")";
  return StateEvaluator(std::move(name), [r, tau, caps](const SpanningTerm& term) {
    return psi_value(r, tau, term, caps);
  });
}

StateEvaluator StateEvaluator::critical(Caps caps) {
  return StateEvaluator("critical", [caps](const SpanningTerm& term) {
    return critical_value_state(term, caps);
  });
}

StateEvaluator StateEvaluator::ground(Trace omega) {
  return StateEvaluator("ground(" + omega.name() + ")", [omega](const SpanningTerm& term) {
    return ground_value(omega, term);
  });
}

Rational StateEvaluator::value(TermAlgebra& algebra, const FormalCombination& combo) const {
  Rational acc = 0;
  for (const auto& [key, coeff] : combo.coefficients()) acc += coeff * evaluate_(algebra.term_of(key));
  return acc;
}

StateEvaluator StateEvaluator::perturbed(const SpanningTerm& where, const Rational& delta, Caps caps) const {
  auto base = evaluate_;
  const Word v = where.v(), w = where.w();
  const GroupElement g = where.g();
  return StateEvaluator(name_ + "+perturbation",
                        [base, v, w, g, delta, caps](const SpanningTerm& term) -> Rational {
                          Rational value = base(term);
                          if (term.v() == v && term.w() == w &&
                              exact_equal_strict(term.g(), g, caps)) {
                            value += delta;
                          }
                          return value;
                        });
}

CheckReport kms_check(TermAlgebra& algebra, const StateEvaluator& state, const Rational& r,
                      const std::vector<std::pair<SpanningTerm, SpanningTerm>>& pairs) {
  CheckReport report;
  for (const auto& [a, b] : pairs) {
    ++report.total;
    const FormalCombination ab = algebra.multiply(algebra.combination(a), algebra.combination(b));
    const FormalCombination ba = algebra.multiply(algebra.combination(b), algebra.combination(a));
    const Rational lhs = state.value(algebra, ab);
    const Rational rhs = rational_pow(r, a.gauge_degree()) * state.value(algebra, ba);
    if (lhs != rhs) {
      report.failures.push_back({"(" + algebra.render_term(a) + ") . (" + algebra.render_term(b) + ")",
                                 format_rational(lhs), format_rational(rhs)});
    }
  }
  return report;
}

CheckReport characterization_check(TermAlgebra& algebra, const StateEvaluator& state, const Rational& r,
                                   const std::vector<SpanningTerm>& terms) {
  CheckReport report;
  for (const SpanningTerm& term : terms) {
    ++report.total;
    const Rational lhs = state.value(term);
    Rational rhs = 0;
    if (term.v() == term.w()) {
      rhs = rational_pow(r, static_cast<long>(term.v().size())) *
            state.value(SpanningTerm(Word(), term.g(), Word()));
    }
    if (lhs != rhs) {
      report.failures.push_back({algebra.render_term(term), format_rational(lhs), format_rational(rhs)});
    }
  }
  return report;
}

CheckReport recursion_check(const Rational& r, const Trace& tau, const std::vector<GroupElement>& elements,
                            const Caps& caps) {
  CheckReport report;
  for (const GroupElement& g : elements) {
    ++report.total;
    const int letters = g.backend()->alphabet().size();
    const Rational lhs = psi_value(r, tau, SpanningTerm(Word(), g, Word()), caps);
    Rational rhs = (1 - letters * r) * tau(g);
    for (Letter x = 0; x < letters; ++x) {
      const Word one{std::vector<Letter>{x}};
      if (act_word(g, one) == one) {
        rhs += r * psi_value(r, tau, SpanningTerm(Word(), restrict_word(g, one), Word()), caps);
      }
    }
    if (lhs != rhs) {
      report.failures.push_back({"u[" + g.name() + "]", format_rational(lhs), format_rational(rhs)});
    }
  }
  return report;
}

}  // namespace selfsim
