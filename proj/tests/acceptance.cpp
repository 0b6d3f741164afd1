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

// Acceptance suite: one criterion per section, one PASS/FAIL line each.
// Every comparison is exact rational equality unless stated otherwise.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "selfsim/counting.hpp"
#include "selfsim/kms.hpp"
#include "selfsim/mealy.hpp"
#include "selfsim/moore.hpp"
#include "selfsim/toeplitz.hpp"
#include "selfsim/zd.hpp"

using namespace selfsim;
using namespace selfsim::testing;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int g_checks = 0;

void expect(bool condition, const std::string& what) {
  ++g_checks;
  if (!condition) throw Failure(what);
}

template <typename T>
void expect_eq(const T& got, const T& want, const std::string& what) {
  ++g_checks;
  if (!(got == want)) {
    std::ostringstream msg;
    msg << what << ": got " << got << ", want " << want;
    throw Failure(msg.str());
  }
}

void expect_rat(const Rational& got, const Rational& want, const std::string& what) {
  ++g_checks;
  if (got != want) {
    throw Failure(what + ": got " + format_rational(got) + ", want " + format_rational(want));
  }
}

// Gibbs/critical state with per-element memoisation; the r^{|v|} prefactor
// is part of the defining series, so caching by group entry is faithful.
class CachedState {
 public:
  CachedState(std::shared_ptr<const ActionBackend> backend, std::optional<Rational> r, Trace tau)
      : algebra_(backend), r_(std::move(r)), tau_(std::move(tau)),
        letters_(backend->alphabet().size()) {}

  Rational operator()(const SpanningTerm& term) {
    if (term.v() != term.w()) return 0;
    const int id = algebra_.canon_id(term.g());
    auto it = memo_.find(id);
    if (it == memo_.end()) {
      const SpanningTerm bare(Word(), algebra_.canon_rep(id), Word());
      const Rational value = r_ ? psi_value(*r_, tau_, bare) : critical_value_state(bare);
      it = memo_.emplace(id, value).first;
    }
    return rational_pow(base_r(), static_cast<long>(term.v().size())) * it->second;
  }

  Rational value(TermAlgebra& algebra, const FormalCombination& combo) {
    Rational acc = 0;
    for (const auto& [key, coeff] : combo.coefficients()) acc += coeff * (*this)(algebra.term_of(key));
    return acc;
  }

  Rational base_r() const { return r_ ? *r_ : Rational(1, letters_); }

 private:
  TermAlgebra algebra_;
  std::optional<Rational> r_;
  Trace tau_;
  int letters_;
  std::map<int, Rational> memo_;
};

struct ActionFixture {
  std::string name;
  std::shared_ptr<const ActionBackend> backend;
  std::vector<GroupElement> generators;
};

std::vector<ActionFixture> builtin_actions() {
  auto bas = basilica();
  auto grig = grigorchuk();
  auto odo = odometer(4);
  return {{"basilica", bas, bas->generators()},
          {"grigorchuk", grig, grig->generators()},
          {"odometer(4)", odo, odo->generators()}};
}

std::vector<std::pair<SpanningTerm, SpanningTerm>> random_pairs(const ActionFixture& action, int count,
                                                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto elements = random_products(action.backend, action.generators, 24, 3, seed + 1);
  auto words = random_words(action.backend, 24, 3, seed + 2);
  std::uniform_int_distribution<std::size_t> pick_e(0, elements.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_w(0, words.size() - 1);
  std::vector<std::pair<SpanningTerm, SpanningTerm>> pairs;
  for (int i = 0; i < count; ++i) {
    pairs.emplace_back(SpanningTerm(words[pick_w(rng)], elements[pick_e(rng)], words[pick_w(rng)]),
                       SpanningTerm(words[pick_w(rng)], elements[pick_e(rng)], words[pick_w(rng)]));
  }
  return pairs;
}

bool contains_element(const std::vector<GroupElement>& set, const GroupElement& g) {
  for (const GroupElement& h : set) {
    if (exact_equal_strict(h, g)) return true;
  }
  return false;
}

void expect_same_set(const std::vector<GroupElement>& got, const std::vector<GroupElement>& want,
                     const std::string& what) {
  expect(got.size() == want.size(), what + ": set sizes differ");
  for (const GroupElement& g : want) expect(contains_element(got, g), what + ": missing " + g.name());
}

// ---------------------------------------------------------------- criterion 1

void criterion_nucleus_golden() {
  for (int n : {2, 3, 4, 5}) {
    auto odo = odometer(n);
    const NucleusResult result = nucleus(odo, odo->generators());
    expect(result.status == NucleusStatus::Verified, "odometer(" + std::to_string(n) + ") not verified");
    expect_same_set(result.elements,
                    {GroupElement::identity(odo), gen(odo, "g"), invert(gen(odo, "g"))},
                    "odometer(" + std::to_string(n) + ") nucleus");
    for (const auto& [pair, depth] : result.certificate) {
      (void)pair;
      expect(depth <= 4, "odometer contraction depth exceeds 4");
    }
  }

  auto bas = basilica();
  const NucleusResult bas_result = nucleus(bas, bas->generators());
  expect(bas_result.status == NucleusStatus::Verified, "basilica not verified");
  expect_same_set(bas_result.elements,
                  {GroupElement::identity(bas), gen(bas, "a"), gen(bas, "b"), invert(gen(bas, "a")),
                   invert(gen(bas, "b")), word_elem(bas, "a b^-1"), word_elem(bas, "b a^-1")},
                  "basilica nucleus");
  for (const auto& [pair, depth] : bas_result.certificate) {
    (void)pair;
    expect(depth <= 4, "basilica contraction depth exceeds 4");
  }

  auto grig = grigorchuk();
  const NucleusResult grig_result = nucleus(grig, grig->generators());
  expect(grig_result.status == NucleusStatus::Verified, "grigorchuk not verified");
  expect_same_set(grig_result.elements,
                  {GroupElement::identity(grig), gen(grig, "a"), gen(grig, "b"), gen(grig, "c"),
                   gen(grig, "d")},
                  "grigorchuk nucleus");
  for (const auto& [pair, depth] : grig_result.certificate) {
    (void)pair;
    expect(depth <= 4, "grigorchuk contraction depth exceeds 4");
  }
}

// ---------------------------------------------------------------- criterion 2

void criterion_group_relations() {
  auto grig = grigorchuk();
  const GroupElement e = GroupElement::identity(grig);
  for (const char* name : {"a", "b", "c", "d"}) {
    expect(exact_equal(word_elem(grig, std::string(name) + " " + name), e) == Trilean::True,
           std::string(name) + "^2 = e not decided true");
  }
  expect(exact_equal(word_elem(grig, "c d"), gen(grig, "b")) == Trilean::True, "cd = b");
  expect(exact_equal(word_elem(grig, "d b"), gen(grig, "c")) == Trilean::True, "db = c");
  expect(exact_equal(word_elem(grig, "b c"), gen(grig, "d")) == Trilean::True, "bc = d");

  auto bas = basilica();
  expect(exact_equal(word_elem(bas, "a b"), word_elem(bas, "b a")) == Trilean::False,
         "ab != ba not decided false");
}

// ---------------------------------------------------------------- criterion 3

void criterion_critical_values() {
  auto grig = grigorchuk();
  expect_rat(critical_value(gen(grig, "a")), Rational(0), "c_a (grigorchuk)");
  expect_rat(critical_value(gen(grig, "b")), Rational(1, 7), "c_b (grigorchuk)");
  expect_rat(critical_value(gen(grig, "c")), Rational(2, 7), "c_c (grigorchuk)");
  expect_rat(critical_value(gen(grig, "d")), Rational(4, 7), "c_d (grigorchuk)");
  expect_rat(critical_value(word_elem(grig, "c a d a c")), Rational(4, 7), "c_cadac");

  auto bas = basilica();
  expect_rat(critical_value(gen(bas, "a")), Rational(0), "c_a (basilica)");
  expect_rat(critical_value(gen(bas, "b")), Rational(1, 2), "c_b (basilica)");
  expect_rat(critical_value(invert(gen(bas, "b"))), Rational(1, 2), "c_{b^-1} (basilica)");
  expect_rat(critical_value(word_elem(bas, "a b^-1")), Rational(0), "c_{ab^-1} (basilica)");
  expect_rat(critical_value(word_elem(bas, "b a^-1")), Rational(0), "c_{ba^-1} (basilica)");
  expect_rat(critical_value(word_elem(bas, "a b a")), Rational(1, 4), "c_aba (basilica)");
}

// ---------------------------------------------------------------- criteria 4+5

std::vector<GroupElement> counting_sample(const ActionFixture& action, std::uint64_t seed) {
  const NucleusResult result = nucleus(action.backend, action.generators);
  expect(result.status == NucleusStatus::Verified, action.name + ": nucleus not verified");
  std::vector<GroupElement> sample = result.elements;
  const auto products = random_products(action.backend, action.generators, 20, 3, seed);
  sample.insert(sample.end(), products.begin(), products.end());
  return sample;
}

void criterion_counting_oracle() {
  for (const ActionFixture& action : builtin_actions()) {
    const unsigned long k_max = action.backend->alphabet().size() == 2 ? 10 : 6;
    for (const GroupElement& g : counting_sample(action, 1001)) {
      const TransferMatrix t = transfer_matrix(g, {});
      for (unsigned long k = 0; k <= k_max; ++k) {
        const auto [og, of] = brute_force_counts(g, k);
        expect(count_G(t, k) == og, action.name + ": |G| mismatch for " + g.name());
        expect(count_F(t, k) == of, action.name + ": |F| mismatch for " + g.name());
      }
    }
  }

  // closed forms: |F_d^k| = 2^{k-1} + 2^{k-4} + ... down the 3-cycle
  auto grig = grigorchuk();
  const TransferMatrix td = transfer_matrix(gen(grig, "d"), {});
  for (unsigned long k : {4ul, 7ul, 10ul}) {
    BigInt want = 0;
    for (long p = static_cast<long>(k) - 1; p >= 0; p -= 3) want += bigint_pow(2, static_cast<unsigned long>(p));
    expect(count_F(td, k) == want, "|F_d^" + std::to_string(k) + "|");
  }

  // |F_aba^k| = 2^{k-2} for k = 2..8
  auto bas = basilica();
  const TransferMatrix ta = transfer_matrix(word_elem(bas, "a b a"), {});
  for (unsigned long k = 2; k <= 8; ++k) {
    expect(count_F(ta, k) == bigint_pow(2, k - 2), "|F_aba^" + std::to_string(k) + "|");
  }
}

void criterion_monotone_sandwich() {
  for (const ActionFixture& action : builtin_actions()) {
    const int letters = action.backend->alphabet().size();
    for (const GroupElement& g : counting_sample(action, 1002)) {
      const TransferMatrix t = transfer_matrix(g, {});
      const Rational c = critical_value(g);
      for (unsigned long k = 0; k <= 12; ++k) {
        expect(letters * count_F(t, k) <= count_F(t, k + 1),
               action.name + ": F-counts not supermultiplicative for " + g.name());
        const Rational scale = rational_pow(Rational(1, letters), static_cast<long>(k));
        expect(Rational(count_F(t, k)) * scale <= c,
               action.name + ": lower sandwich fails for " + g.name());
        expect(c <= Rational(count_G(t, k)) * scale,
               action.name + ": upper sandwich fails for " + g.name());
      }
    }
  }
}

// ---------------------------------------------------------------- criterion 6

void criterion_kms_condition() {
  for (const ActionFixture& action : builtin_actions()) {
    const int letters = action.backend->alphabet().size();
    const std::vector<Rational> rs = {Rational(1, letters + 1), Rational(1, letters + 2),
                                      Rational(2, 5 * letters)};
    const std::vector<Trace> traces = {Trace::dirac(), Trace::trivial(), Trace::critical()};
    const auto pairs = random_pairs(action, 200, 2001);
    TermAlgebra algebra(action.backend);

    for (const Trace& tau : traces) {
      for (const Rational& r : rs) {
        expect(r > 0 && r < Rational(1, letters), "test parameter r outside (0, 1/|X|)");
        CachedState psi(action.backend, r, tau);
        for (const auto& [a, b] : pairs) {
          const Rational lhs = psi.value(algebra, algebra.multiply(algebra.combination(a), algebra.combination(b)));
          const Rational rhs = rational_pow(r, a.gauge_degree()) *
                               psi.value(algebra, algebra.multiply(algebra.combination(b), algebra.combination(a)));
          expect(lhs == rhs, action.name + ": KMS identity fails at r = " + format_rational(r) +
                                 ", trace " + tau.name());
        }
      }
    }

    // the critical state satisfies the identity at r = 1/|X|
    CachedState critical(action.backend, std::nullopt, Trace::dirac());
    const Rational rc(1, letters);
    for (const auto& [a, b] : pairs) {
      const Rational lhs = critical.value(algebra, algebra.multiply(algebra.combination(a), algebra.combination(b)));
      const Rational rhs = rational_pow(rc, a.gauge_degree()) *
                           critical.value(algebra, algebra.multiply(algebra.combination(b), algebra.combination(a)));
      expect(lhs == rhs, action.name + ": critical state fails the KMS identity");
    }
  }

  // negative control: perturbing one value breaks at least one pair
  auto bas = basilica();
  TermAlgebra algebra(bas);
  const Rational r(1, 3);
  const StateEvaluator psi = StateEvaluator::gibbs(r, Trace::dirac());
  const StateEvaluator corrupted =
      psi.perturbed(SpanningTerm(Word(), gen(bas, "b"), Word()), Rational(1, 1000));
  auto pairs = random_pairs({"basilica", bas, bas->generators()}, 200, 2002);
  pairs.emplace_back(SpanningTerm(Word(), GroupElement::identity(bas), word(bas, "x")),
                     SpanningTerm(word(bas, "x"), gen(bas, "b"), Word()));
  const CheckReport control = kms_check(algebra, corrupted, r, pairs);
  expect(!control.ok(), "perturbed evaluator passed the KMS check");
}

// ---------------------------------------------------------------- criterion 7

void criterion_recursion_identity() {
  const std::vector<Rational> rs2 = {Rational(1, 3), Rational(1, 4), Rational(1, 5)};
  for (const ActionFixture& action : builtin_actions()) {
    const int letters = action.backend->alphabet().size();
    std::vector<Rational> rs = {Rational(1, letters + 1), Rational(1, letters + 2),
                                Rational(2, 5 * letters)};
    std::vector<GroupElement> elements = {GroupElement::identity(action.backend)};
    const auto more = random_products(action.backend, action.generators, 29, 3, 3001);
    elements.insert(elements.end(), more.begin(), more.end());
    for (const Trace& tau : {Trace::dirac(), Trace::trivial(), Trace::critical()}) {
      for (const Rational& r : rs) {
        const CheckReport report = recursion_check(r, tau, elements);
        expect(report.ok(), action.name + ": recursion identity fails for trace " + tau.name() +
                                " at r = " + format_rational(r));
      }
    }
  }

  // closed forms on the basilica generator b
  auto bas = basilica();
  const SpanningTerm ub(Word(), gen(bas, "b"), Word());
  for (const Rational& r : rs2) {
    expect_rat(psi_value(r, Trace::dirac(), ub), r, "psi_dirac(u_b)");
    expect_rat(psi_value(r, Trace::trivial(), ub), 1 - 2 * r * r, "psi_trivial(u_b)");
  }

  // both families tend to c_b = 1/2 as r -> 1/2, monotonically, and 1/2
  // sits inside the criterion-5 sandwich for b
  Rational dirac_prev(-1), trivial_prev(2);
  for (int m = 8; m <= 64; m *= 2) {
    const Rational r = Rational(1, 2) - Rational(1, m);
    const Rational dirac_val = psi_value(r, Trace::dirac(), ub);
    const Rational trivial_val = psi_value(r, Trace::trivial(), ub);
    expect(dirac_val > dirac_prev && dirac_val < Rational(1, 2), "dirac family not increasing to 1/2");
    expect(trivial_val < trivial_prev && trivial_val > Rational(1, 2),
           "trivial family not decreasing to 1/2");
    dirac_prev = dirac_val;
    trivial_prev = trivial_val;
  }
  expect(Rational(1, 2) - dirac_prev <= Rational(1, 64), "dirac family too far from 1/2 at m = 64");
  expect(trivial_prev - Rational(1, 2) <= Rational(1, 16), "trivial family too far from 1/2 at m = 64");
  const auto [lower, upper] = critical_limit_bounds(gen(bas, "b"), 12);
  expect(lower <= Rational(1, 2) && Rational(1, 2) <= upper, "1/2 outside the sandwich for b");
}

// ---------------------------------------------------------------- criterion 8

void criterion_dilation_actions() {
  // d = 1: the lattice action of [N] with digits {0..N-1} is the odometer
  for (int n : {2, 4}) {
    std::vector<IntVec> digits;
    for (long i = 0; i < n; ++i) digits.push_back({BigInt(i)});
    auto lattice = ZdBackend::create(
        ZdAction(IntMatrix(1, {BigInt(n)}), DigitSet(IntMatrix(1, {BigInt(n)}), std::move(digits))));
    auto mealy = odometer(n);
    const GroupElement one = lattice->element_from_vector({BigInt(1)});
    const GroupElement g = gen(mealy, "g");
    for (std::size_t len = 0; len <= 8; ++len) {
      for (const Word& v : all_words(lattice, len)) {
        expect(act_word(one, v).letters() == act_word(g, Word(v.letters())).letters(),
               "lattice [" + std::to_string(n) + "] disagrees with the odometer");
      }
    }
  }

  // d = 2, A = 2I: no fixed words with trivial restriction away from 0
  auto plane = ZdBackend::create(
      ZdAction(IntMatrix(2, {BigInt(2), BigInt(0), BigInt(0), BigInt(2)}), std::nullopt));
  std::mt19937_64 rng(4001);
  std::uniform_int_distribution<long> coord(-20, 20);
  int sampled = 0;
  while (sampled < 10) {
    const IntVec n{BigInt(coord(rng)), BigInt(coord(rng))};
    if (n[0] == 0 && n[1] == 0) continue;
    ++sampled;
    const GroupElement element = plane->element_from_vector(n);
    const TransferMatrix t = transfer_matrix(element, {});
    for (unsigned long k = 0; k <= 8; ++k) {
      expect(count_F(t, k) == 0, "F_n^k nonzero for n = " + element.name());
    }
    expect_rat(critical_value(element), Rational(0), "c_n for n = " + element.name());
    // the critical state vanishes on every s_v u_n s_w* with n != 0
    expect_rat(critical_value_state(SpanningTerm(word(plane, "(0,0)"), element, word(plane, "(0,0)"))),
               Rational(0), "critical state at u_n");
  }
  const GroupElement zero = plane->element_from_vector({BigInt(0), BigInt(0)});
  expect_rat(critical_value(zero), Rational(1), "c_0");
  for (std::size_t len = 0; len <= 3; ++len) {
    const Word v(std::vector<Letter>(len, 0));
    expect_rat(critical_value_state(SpanningTerm(v, zero, v)),
               rational_pow(Rational(1, 4), static_cast<long>(len)),
               "critical state at s_v u_0 s_v*");
    if (len > 0) {
      const Word w(std::vector<Letter>(len, 1));
      expect_rat(critical_value_state(SpanningTerm(v, zero, w)), Rational(0),
                 "critical state off the diagonal");
    }
  }
}

// ---------------------------------------------------------------- criterion 9

void criterion_ground_states() {
  for (const ActionFixture& action : builtin_actions()) {
    std::mt19937_64 rng(5001);
    auto elements = random_products(action.backend, action.generators, 24, 3, 5002);
    auto words = random_words(action.backend, 24, 3, 5003);
    std::uniform_int_distribution<std::size_t> pick_e(0, elements.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_w(0, words.size() - 1);
    const Trace omega = Trace::dirac();
    for (int i = 0; i < 100; ++i) {
      const SpanningTerm term(words[pick_w(rng)], elements[pick_e(rng)], words[pick_w(rng)]);
      const Rational value = ground_value(omega, term);
      if (term.v().empty() && term.w().empty()) {
        expect_rat(value, omega(term.g()), action.name + ": ground value on u_g");
      } else {
        expect_rat(value, Rational(0), action.name + ": ground value off the unit corner");
      }
    }

    // tracial omega: the r -> 0 limit of the Gibbs values recovers omega,
    // checked at r = 1/1000 with tolerance 1/100 (the one inexact check)
    const Rational r(1, 1000);
    for (const Trace& tau : {Trace::dirac(), Trace::trivial(), Trace::critical()}) {
      for (int i = 0; i < 8; ++i) {
        const GroupElement& g = elements[pick_e(rng)];
        const Rational gap =
            psi_value(r, tau, SpanningTerm(Word(), g, Word())) - ground_value(tau, SpanningTerm(Word(), g, Word()));
        expect(abs(gap) <= Rational(1, 100),
               action.name + ": ground state is not the r -> 0 limit for " + g.name());
      }
    }
  }
}

// --------------------------------------------------------------- criterion 10

void criterion_structural_suites() {
  // action-core laws
  for (const ActionFixture& action : builtin_actions()) {
    const auto elements = random_products(action.backend, action.generators, 8, 3, 6001);
    const auto words = random_words(action.backend, 6, 5, 6002);
    for (std::size_t i = 0; i + 1 < elements.size(); i += 2) {
      const GroupElement &g = elements[i], &h = elements[i + 1];
      for (const Word& v : words) {
        for (const Word& w : random_words(action.backend, 2, 3, 6003)) {
          expect(restrict_word(g, v.concat(w)).same_word(restrict_word(restrict_word(g, v), w)),
                 "cocycle law fails");
        }
        expect(exact_equal_strict(restrict_word(compose(g, h), v),
                                  compose(restrict_word(g, act_word(h, v)), restrict_word(h, v))),
               "product rule fails");
        expect(exact_equal_strict(invert(restrict_word(g, v)),
                                  restrict_word(invert(g), act_word(g, v))),
               "inverse rule fails");
      }
    }
  }

  // spanning-algebra laws
  for (const ActionFixture& action : builtin_actions()) {
    TermAlgebra algebra(action.backend);
    std::mt19937_64 rng(6004);
    auto elements = random_products(action.backend, action.generators, 12, 3, 6005);
    auto words = random_words(action.backend, 12, 3, 6006);
    std::uniform_int_distribution<std::size_t> pick_e(0, elements.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_w(0, words.size() - 1);
    for (int i = 0; i < 40; ++i) {
      const FormalCombination a =
          algebra.combination(SpanningTerm(words[pick_w(rng)], elements[pick_e(rng)], words[pick_w(rng)]));
      const FormalCombination b =
          algebra.combination(SpanningTerm(words[pick_w(rng)], elements[pick_e(rng)], words[pick_w(rng)]));
      const FormalCombination c =
          algebra.combination(SpanningTerm(words[pick_w(rng)], elements[pick_e(rng)], words[pick_w(rng)]));
      expect(algebra.multiply(algebra.multiply(a, b), c) == algebra.multiply(a, algebra.multiply(b, c)),
             "associativity fails");
      expect(algebra.adjoint(algebra.multiply(a, b)) ==
                 algebra.multiply(algebra.adjoint(b), algebra.adjoint(a)),
             "involution is not anti-multiplicative");
    }
  }

  // minimize is idempotent
  for (const MealyMachine& machine : {builtin_basilica(), builtin_grigorchuk(), builtin_odometer(4)}) {
    const MinimizeResult once = minimize(machine);
    expect(minimize(once.machine).machine.state_count() == once.machine.state_count(),
           "minimize is not idempotent");
  }

  // deterministic DOT golden files
  const std::string dir = SELFSIM_GOLDEN_DIR;
  struct Golden {
    std::string file;
    std::shared_ptr<MealyBackend> backend;
    std::string name;
  };
  for (const auto& golden : {Golden{"odometer4.dot", odometer(4), "odometer"},
                             Golden{"basilica.dot", basilica(), "basilica"},
                             Golden{"grigorchuk.dot", grigorchuk(), "grigorchuk"}}) {
    const NucleusResult result = nucleus(golden.backend, golden.backend->generators());
    expect(result.status == NucleusStatus::Verified, "nucleus for golden export not verified");
    DotOptions options;
    options.graph_name = golden.name;
    const std::string dot = dot_export(build_diagram(golden.backend, result.elements), options);
    std::ifstream in(dir + "/" + golden.file);
    expect(in.good(), "missing golden file " + golden.file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    expect(dot == buffer.str(), golden.file + " drifted from the golden output");
  }
}

struct Criterion {
  int number;
  std::string title;
  std::function<void()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "nucleus golden results", criterion_nucleus_golden},
      {2, "group relations decided exactly", criterion_group_relations},
      {3, "critical values, exact", criterion_critical_values},
      {4, "counting oracle equivalence and closed forms", criterion_counting_oracle},
      {5, "monotone sandwich", criterion_monotone_sandwich},
      {6, "KMS condition, exact", criterion_kms_condition},
      {7, "recursion identity and closed forms", criterion_recursion_identity},
      {8, "dilation actions", criterion_dilation_actions},
      {9, "ground states", criterion_ground_states},
      {10, "structural property suites", criterion_structural_suites},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    g_checks = 0;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run();
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
      std::printf("PASS criterion %2d: %s (%d checks, %lld ms)\n", criterion.number,
                  criterion.title.c_str(), g_checks, static_cast<long long>(ms));
    } catch (const std::exception& e) {
      ++failures;
      std::printf("FAIL criterion %2d: %s — %s\n", criterion.number, criterion.title.c_str(), e.what());
    }
    std::fflush(stdout);
  }
  if (failures) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
