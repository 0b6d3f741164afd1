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

#include "selfsim/toeplitz.hpp"

#include <cctype>

#include "selfsim/errors.hpp"

namespace selfsim {

long gauge_degree(const SpanningTerm& term) { return term.gauge_degree(); }

void FormalCombination::add(const TermKey& key, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = coeffs_.emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) coeffs_.erase(it);
  }
}

TermAlgebra::TermAlgebra(std::shared_ptr<const ActionBackend> backend, Caps caps)
    : backend_(std::move(backend)), caps_(caps) {
  if (!backend_) throw std::invalid_argument("null backend");
  canon_id(GroupElement::identity(backend_));  // id 0 is the identity
}

int TermAlgebra::canon_id(const GroupElement& g) {
  if (g.backend() != backend_) throw std::invalid_argument("element belongs to a different action");
  const std::uint64_t digest = portrait_fingerprint(g, caps_.fingerprint_depth);
  auto& bucket = reps_by_portrait_[digest];
  for (int id : bucket) {
    switch (exact_equal(g, reps_[static_cast<std::size_t>(id)], caps_)) {
      case Trilean::True:
        return id;
      case Trilean::False:
        break;
      case Trilean::Undecided:
        throw UndecidedError("cannot canonicalize '" + g.name() + "': equality with '" +
                             reps_[static_cast<std::size_t>(id)].name() + "' is undecided");
    }
  }
  const int id = static_cast<int>(reps_.size());
  reps_.push_back(g);
  bucket.push_back(id);
  return id;
}

TermKey TermAlgebra::key_of(const SpanningTerm& term) {
  return TermKey{term.v().letters(), canon_id(term.g()), term.w().letters()};
}

SpanningTerm TermAlgebra::term_of(const TermKey& key) const {
  return SpanningTerm(Word(key.v), reps_[static_cast<std::size_t>(key.g)], Word(key.w));
}

FormalCombination TermAlgebra::unit() {
  FormalCombination one;
  one.add(TermKey{{}, 0, {}}, 1);
  return one;
}

FormalCombination TermAlgebra::combination(const SpanningTerm& term, const Rational& coeff) {
  FormalCombination out;
  out.add(key_of(term), coeff);
  return out;
}

FormalCombination TermAlgebra::sum(const FormalCombination& a, const FormalCombination& b) const {
  FormalCombination out = a;
  for (const auto& [key, coeff] : b.coefficients()) out.add(key, coeff);
  return out;
}

FormalCombination TermAlgebra::scale(const FormalCombination& a, const Rational& factor) const {
  FormalCombination out;
  if (factor == 0) return out;
  for (const auto& [key, coeff] : a.coefficients()) out.add(key, coeff * factor);
  return out;
}

FormalCombination TermAlgebra::multiply(const FormalCombination& a, const FormalCombination& b) {
  FormalCombination out;
  for (const auto& [ka, ca] : a.coefficients()) {
    const SpanningTerm left = term_of(ka);
    for (const auto& [kb, cb] : b.coefficients()) {
      const SpanningTerm right = term_of(kb);
      // (s_v u_g s_w*)(s_y u_h s_z*)
      const Word& w = left.w();
      const Word& y = right.v();
      if (y.has_prefix(w)) {
        // y = w y': s_{v(g.y')} u_{g|_{y'} h} s_z*
        const Word rest = y.remainder(w.size());
        const Word image = act_word(left.g(), rest);
        SpanningTerm term(left.v().concat(image), compose(restrict_word(left.g(), rest), right.g()),
                          right.w());
        out.add(key_of(term), ca * cb);
      } else if (w.has_prefix(y)) {
        // w = y w': s_v u_{g (h|_{h^-1.w'})} s*_{z (h^-1.w')}
        const Word rest = w.remainder(y.size());
        const Word pulled = act_word(invert(right.g()), rest);
        SpanningTerm term(left.v(), compose(left.g(), restrict_word(right.g(), pulled)),
                          right.w().concat(pulled));
        out.add(key_of(term), ca * cb);
      }
      // otherwise the ranges are orthogonal and the product vanishes
    }
  }
  return out;
}

FormalCombination TermAlgebra::adjoint(const FormalCombination& a) {
  FormalCombination out;
  for (const auto& [key, coeff] : a.coefficients()) {
    const SpanningTerm term = term_of(key);
    SpanningTerm flipped(term.w(), invert(term.g()), term.v());
    out.add(key_of(flipped), coeff);
  }
  return out;
}

FormalCombination TermAlgebra::gauge_scale(const FormalCombination& a, const Rational& r) const {
  FormalCombination out;
  for (const auto& [key, coeff] : a.coefficients()) {
    const long degree = static_cast<long>(key.v.size()) - static_cast<long>(key.w.size());
    out.add(key, coeff * rational_pow(r, degree));
  }
  return out;
}

FormalCombination TermAlgebra::expand_to_depth(const FormalCombination& a, int n) {
  if (n < 0) throw std::invalid_argument("expansion depth must be non-negative");
  FormalCombination out;
  const int letters = backend_->alphabet().size();
  for (const auto& [key, coeff] : a.coefficients()) {
    const SpanningTerm term = term_of(key);
    // enumerate y in X^n
    std::vector<Letter> y(static_cast<std::size_t>(n), 0);
    for (;;) {
      const Word yw{std::vector<Letter>(y)};
      SpanningTerm piece(term.v().concat(act_word(term.g(), yw)), restrict_word(term.g(), yw),
                         term.w().concat(yw));
      out.add(key_of(piece), coeff);
      bool done = y.empty();
      std::size_t pos = y.size();
      while (!done) {
        if (pos == 0) {
          done = true;
          break;
        }
        --pos;
        if (++y[pos] < letters) break;
        y[pos] = 0;
      }
      if (done) break;
    }
  }
  return out;
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat(std::string_view s) {
    skip_ws();
    if (text.substr(pos, s.size()) == s) {
      pos += s.size();
      return true;
    }
    return false;
  }
};

Rational parse_number(Cursor& cur) {
  cur.skip_ws();
  const std::size_t start = cur.pos;
  while (cur.pos < cur.text.size() && std::isdigit(static_cast<unsigned char>(cur.text[cur.pos]))) ++cur.pos;
  if (cur.pos == start) throw ParseError("expected a number", cur.pos);
  std::string digits(cur.text.substr(start, cur.pos - start));
  if (cur.eat('/')) {
    const std::size_t dstart = cur.pos;
    while (cur.pos < cur.text.size() && std::isdigit(static_cast<unsigned char>(cur.text[cur.pos]))) ++cur.pos;
    if (cur.pos == dstart) throw ParseError("expected a denominator", cur.pos);
    digits += "/" + std::string(cur.text.substr(dstart, cur.pos - dstart));
  }
  return parse_rational(digits);
}

// longest-match generator tokenization of a gword body; stops at `stop`
GroupElement parse_gword_body(Cursor& cur, const std::shared_ptr<const ActionBackend>& backend, char stop) {
  FactorWord factors;
  const std::string identity = backend->identity_name();
  for (;;) {
    cur.skip_ws();
    if (cur.pos >= cur.text.size() || cur.text[cur.pos] == stop) break;
    if (cur.eat("^-1")) {
      if (factors.empty()) throw ParseError("'^-1' must follow a generator", cur.pos);
      factors.back().inverted = !factors.back().inverted;
      reduce_factors(factors);
      continue;
    }
    // try the identity name and every base name; longest wins
    std::string_view rest = cur.text.substr(cur.pos);
    std::size_t best_len = 0;
    std::optional<std::size_t> best_base;
    if (rest.substr(0, identity.size()) == identity) best_len = identity.size();
    for (std::size_t id = 0; id < backend->base_count(); ++id) {
      const std::string& name = backend->base_name(id);
      if (name.size() > best_len && rest.substr(0, name.size()) == name) {
        best_len = name.size();
        best_base = id;
      }
    }
    if (best_len == 0) {
      // vector literals and other registrable names: try a maximal token
      std::size_t len = 0;
      while (len < rest.size() && rest[len] != stop && !std::isspace(static_cast<unsigned char>(rest[len])) &&
             rest.substr(len, 3) != "^-1") {
        ++len;
      }
      if (len > 0) {
        if (auto id = backend->find_base(rest.substr(0, len))) {
          best_len = len;
          best_base = id;
        }
      }
      if (best_len == 0) throw ParseError("unknown generator", cur.pos);
    }
    cur.pos += best_len;
    if (best_base) {
      factors.push_back(Factor{static_cast<int>(*best_base), false});
      reduce_factors(factors);
    }
    // identity contributes nothing
  }
  return GroupElement::from_factors(backend, std::move(factors));
}

}  // namespace

FormalCombination TermAlgebra::parse(std::string_view text) {
  Cursor cur{text};
  FormalCombination result;
  bool first = true;
  for (;;) {
    cur.skip_ws();
    if (cur.at_end()) {
      if (first) throw ParseError("empty combination", cur.pos);
      break;
    }
    Rational sign = 1;
    if (cur.eat('-')) {
      sign = -1;
    } else if (cur.eat('+')) {
      if (first) throw ParseError("a combination cannot start with '+'", cur.pos);
    } else if (!first) {
      throw ParseError("expected '+' or '-' between terms", cur.pos);
    }
    first = false;

    // term := [rational '*'] factor+
    Rational coeff = sign;
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      coeff *= parse_number(cur);
      if (!cur.eat('*')) throw ParseError("expected '*' after the coefficient", cur.pos);
    }
    FormalCombination term = unit();
    bool have_factor = false;
    for (;;) {
      cur.skip_ws();
      if (cur.eat("s*[")) {
        const std::size_t start = cur.pos;
        while (cur.pos < cur.text.size() && cur.text[cur.pos] != ']') ++cur.pos;
        if (cur.pos >= cur.text.size()) throw ParseError("unterminated 's*['", start);
        const Word w = Word::parse(backend_->alphabet(), cur.text.substr(start, cur.pos - start));
        ++cur.pos;
        term = multiply(term, combination(SpanningTerm(Word(), GroupElement::identity(backend_), w)));
        have_factor = true;
      } else if (cur.eat("s[")) {
        const std::size_t start = cur.pos;
        while (cur.pos < cur.text.size() && cur.text[cur.pos] != ']') ++cur.pos;
        if (cur.pos >= cur.text.size()) throw ParseError("unterminated 's['", start);
        const Word v = Word::parse(backend_->alphabet(), cur.text.substr(start, cur.pos - start));
        ++cur.pos;
        term = multiply(term, combination(SpanningTerm(v, GroupElement::identity(backend_), Word())));
        have_factor = true;
      } else if (cur.eat("u[")) {
        GroupElement g = parse_gword_body(cur, backend_, ']');
        if (!cur.eat(']')) throw ParseError("unterminated 'u['", cur.pos);
        term = multiply(term, combination(SpanningTerm(Word(), std::move(g), Word())));
        have_factor = true;
      } else {
        break;
      }
    }
    if (!have_factor) throw ParseError("expected a factor 's[..]', 's*[..]' or 'u[..]'", cur.pos);
    result = sum(result, scale(term, coeff));
  }
  return result;
}

GroupElement TermAlgebra::parse_element(std::string_view text) const {
  Cursor cur{text};
  GroupElement g = parse_gword_body(cur, backend_, '\0');
  cur.skip_ws();
  if (cur.pos < cur.text.size()) throw ParseError("trailing input after element", cur.pos);
  return g;
}

std::string TermAlgebra::render_term(const SpanningTerm& term) const {
  std::string out;
  if (!term.v().empty()) out += "s[" + term.v().render(backend_->alphabet()) + "] ";
  out += "u[" + term.g().name() + "]";
  if (!term.w().empty()) out += " s*[" + term.w().render(backend_->alphabet()) + "]";
  return out;
}

std::string TermAlgebra::render(const FormalCombination& a) {
  if (a.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, coeff] : a.coefficients()) {
    Rational c = coeff;
    if (first) {
      if (c < 0) {
        out += "- ";
        c = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    first = false;
    if (c != 1) out += format_rational(c) + " * ";
    out += render_term(term_of(key));
  }
  return out;
}

}  // namespace selfsim
