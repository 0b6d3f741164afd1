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

#include "selfsim/zd.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "selfsim/errors.hpp"

namespace selfsim {

std::string render_int_vec(const IntVec& v) {
  if (v.size() == 1) return v[0].str();
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].str();
  }
  out += ")";
  return out;
}

std::optional<IntVec> parse_int_vec(std::string_view text, std::size_t dim) {
  std::string s(text);
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  IntVec v;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string part = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (part.empty() || part.find_first_not_of("-0123456789") != std::string::npos) return std::nullopt;
    try {
      v.emplace_back(part);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (v.size() != dim) return std::nullopt;
  return v;
}

IntMatrix::IntMatrix(std::size_t dim, std::vector<BigInt> entries) : dim_(dim), entries_(std::move(entries)) {
  if (dim_ == 0 || entries_.size() != dim_ * dim_) {
    throw std::invalid_argument("matrix entries must form a d x d grid");
  }
}

IntMatrix IntMatrix::transpose() const {
  std::vector<BigInt> t(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) t[j * dim_ + i] = at(i, j);
  }
  return IntMatrix(dim_, std::move(t));
}

IntVec IntMatrix::apply(const IntVec& v) const {
  if (v.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
  IntVec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out[i] += at(i, j) * v[j];
  }
  return out;
}

BigInt IntMatrix::determinant() const {
  RationalMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) m.at(i, j) = Rational(at(i, j));
  }
  Rational det(1);
  for (std::size_t col = 0; col < dim_; ++col) {
    std::size_t pivot = col;
    while (pivot < dim_ && m.at(pivot, col) == 0) ++pivot;
    if (pivot == dim_) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < dim_; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      det = -det;
    }
    det *= m.at(col, col);
    const Rational inv = 1 / m.at(col, col);
    for (std::size_t row = col + 1; row < dim_; ++row) {
      if (m.at(row, col) == 0) continue;
      const Rational f = m.at(row, col) * inv;
      for (std::size_t j = col; j < dim_; ++j) m.at(row, j) -= f * m.at(col, j);
    }
  }
  return numerator(det);  // integer matrix, so the result is integral
}

RationalMatrix IntMatrix::inverse() const {
  RationalMatrix inv(dim_);
  for (std::size_t col = 0; col < dim_; ++col) {
    std::vector<Rational> rhs(dim_);
    rhs[col] = 1;
    RationalMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) m.at(i, j) = Rational(at(i, j));
    }
    std::vector<Rational> x = solve_linear(std::move(m), std::move(rhs));
    for (std::size_t i = 0; i < dim_; ++i) inv.at(i, col) = x[i];
  }
  return inv;
}

namespace {

bool integral_image(const RationalMatrix& m, const IntVec& v) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    Rational acc(0);
    for (std::size_t j = 0; j < m.size(); ++j) acc += m.at(i, j) * Rational(v[j]);
    if (denominator(acc) != 1) return false;
  }
  return true;
}

IntVec rational_image_integral(const RationalMatrix& m, const IntVec& v, const char* what) {
  IntVec out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    Rational acc(0);
    for (std::size_t j = 0; j < m.size(); ++j) acc += m.at(i, j) * Rational(v[j]);
    if (denominator(acc) != 1) throw std::logic_error(what);
    out[i] = numerator(acc);
  }
  return out;
}

IntVec vec_add(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVec vec_sub(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& c) { return c == 0; });
}

}  // namespace

DigitSet::DigitSet(const IntMatrix& b, std::vector<IntVec> digits) : digits_(std::move(digits)) {
  const BigInt n = abs(b.determinant());
  if (n < 2) throw std::invalid_argument("|det| must be at least 2");
  if (BigInt(digits_.size()) != n) {
    throw std::invalid_argument("digit set must have exactly |det| = " + n.str() + " elements");
  }
  const RationalMatrix b_inv = b.inverse();
  bool has_zero = false;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (digits_[i].size() != b.dim()) throw std::invalid_argument("digit dimension mismatch");
    if (is_zero(digits_[i])) has_zero = true;
    for (std::size_t j = i + 1; j < digits_.size(); ++j) {
      if (integral_image(b_inv, vec_sub(digits_[i], digits_[j]))) {
        throw std::invalid_argument("digits " + render_int_vec(digits_[i]) + " and " +
                                    render_int_vec(digits_[j]) + " are equivalent mod B");
      }
    }
  }
  if (!has_zero) throw std::invalid_argument("digit set must contain the zero vector");
}

DigitSet default_digits(const IntMatrix& b) {
  const BigInt n_big = abs(b.determinant());
  if (n_big < 2) throw std::invalid_argument("|det| must be at least 2");
  if (n_big > 1000000) throw std::invalid_argument("digit set would be too large");
  const std::size_t n = n_big.convert_to<std::size_t>();
  const std::size_t d = b.dim();
  const RationalMatrix b_inv = b.inverse();

  std::vector<IntVec> kept;
  auto equivalent_to_kept = [&](const IntVec& v) {
    for (const IntVec& u : kept) {
      if (integral_image(b_inv, vec_sub(v, u))) return true;
    }
    return false;
  };

  // key order 0, 1, -1, 2, -2, ... per coordinate
  auto key_value = [](long k) -> long { return (k % 2) ? (k + 1) / 2 : -(k / 2); };

  for (long radius = 0; kept.size() < n; ++radius) {
    std::vector<long> keys(d, 0);
    for (;;) {
      IntVec v(d);
      long max_abs = 0;
      for (std::size_t i = 0; i < d; ++i) {
        const long value = key_value(keys[i]);
        v[i] = value;
        max_abs = std::max(max_abs, std::abs(value));
      }
      if (max_abs == radius && !equivalent_to_kept(v)) {
        kept.push_back(v);
        if (kept.size() == n) break;
      }
      // odometer over key tuples, each coordinate in 0..2*radius
      std::size_t pos = d;
      while (pos-- > 0) {
        if (keys[pos] < 2 * radius) {
          ++keys[pos];
          std::fill(keys.begin() + static_cast<std::ptrdiff_t>(pos) + 1, keys.end(), 0);
          break;
        }
        if (pos == 0) {
          pos = static_cast<std::size_t>(-1);
          break;
        }
      }
      if (pos == static_cast<std::size_t>(-1)) break;
    }
  }
  return DigitSet(b, std::move(kept));
}

DilationStatus is_dilation(const IntMatrix& a, double tol) {
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  const std::size_t d = a.dim();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a.at(i, j).convert_to<double>();
    }
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  if (solver.info() != Eigen::Success) return DilationStatus::Undetermined;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (std::abs(solver.eigenvalues()[i]) <= 1.0 + tol) return DilationStatus::NotDilation;
  }
  return DilationStatus::Dilation;
}

ZdAction::ZdAction(IntMatrix a, std::optional<DigitSet> digits)
    : a_(std::move(a)),
      b_(a_.transpose()),
      b_inverse_(b_.inverse()),
      n_(abs(a_.determinant())),
      digits_(digits ? std::move(*digits) : default_digits(b_)) {
  if (n_ < 2) throw std::invalid_argument("|det A| must be at least 2");
  if (BigInt(digits_.size()) != n_) throw std::invalid_argument("digit set size must equal |det A|");
}

IntVec ZdAction::coset_rep(const IntVec& n) const {
  const IntVec* found = nullptr;
  for (const IntVec& s : digits_.digits()) {
    if (integral_image(b_inverse_, vec_sub(n, s))) {
      if (found) throw std::logic_error("digit set is not a transversal: multiple representatives");
      found = &s;
    }
  }
  if (!found) throw std::logic_error("digit set is not a transversal: no representative");
  return *found;
}

Letter ZdAction::act_letter_vec(const IntVec& n, Letter x) const {
  const IntVec image = coset_rep(vec_add(n, digits_.digit(static_cast<std::size_t>(x))));
  const auto idx = digit_index(image);
  if (!idx) throw std::logic_error("coset representative is not a digit");
  return static_cast<Letter>(*idx);
}

IntVec ZdAction::res_letter(const IntVec& n, Letter x) const {
  const IntVec sum = vec_add(n, digits_.digit(static_cast<std::size_t>(x)));
  const IntVec rep = coset_rep(sum);
  return rational_image_integral(b_inverse_, vec_sub(sum, rep), "restriction is not integral");
}

IntVec ZdAction::digit_expansion(const Word& w) const {
  IntVec acc(dim());
  for (std::size_t i = w.size(); i-- > 0;) {
    acc = b_.apply(acc);
    acc = vec_add(acc, digits_.digit(static_cast<std::size_t>(w[i])));
  }
  return acc;
}

bool ZdAction::in_lattice(const IntVec& v) const { return integral_image(b_inverse_, v); }

std::optional<std::size_t> ZdAction::digit_index(const IntVec& v) const {
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (digits_.digit(i) == v) return i;
  }
  return std::nullopt;
}

namespace {

Alphabet digit_alphabet(const DigitSet& digits) {
  std::vector<std::string> symbols;
  symbols.reserve(digits.size());
  for (const IntVec& v : digits.digits()) symbols.push_back(render_int_vec(v));
  return Alphabet(std::move(symbols));
}

}  // namespace

std::shared_ptr<ZdBackend> ZdBackend::create(ZdAction action) {
  return std::shared_ptr<ZdBackend>(new ZdBackend(std::move(action)));
}

ZdBackend::ZdBackend(ZdAction action)
    : action_(std::move(action)),
      alphabet_(digit_alphabet(action_.digits())),
      dilation_(is_dilation(action_.matrix())) {
  for (std::size_t i = 0; i < action_.dim(); ++i) {
    IntVec unit(action_.dim());
    unit[i] = 1;
    ensure_base(unit);
  }
}

std::size_t ZdBackend::ensure_base(const IntVec& v) const {
  if (is_zero(v)) throw std::logic_error("the zero vector is the identity, not a base element");
  const std::string key = render_int_vec(v);
  std::lock_guard<std::mutex> lock(mutex_);
  if (auto it = base_index_.find(key); it != base_index_.end()) return it->second;
  const std::size_t id = bases_.size();
  bases_.push_back(v);
  base_names_.push_back(key);
  base_index_.emplace(key, id);
  return id;
}

std::size_t ZdBackend::base_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return bases_.size();
}

const std::string& ZdBackend::base_name(std::size_t id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return base_names_.at(id);
}

std::optional<std::size_t> ZdBackend::find_base(std::string_view name) const {
  // unit-vector aliases e1..ed
  if (name.size() >= 2 && name.size() <= 8 && name[0] == 'e') {
    bool digits_only = true;
    for (std::size_t i = 1; i < name.size(); ++i) {
      digits_only = digits_only && std::isdigit(static_cast<unsigned char>(name[i])) != 0;
    }
    if (digits_only) {
      const unsigned long k = std::stoul(std::string(name.substr(1)));
      if (k >= 1 && k <= action_.dim()) return k - 1;
      return std::nullopt;
    }
  }
  auto parsed = parse_int_vec(name, action_.dim());
  if (!parsed) return std::nullopt;
  if (is_zero(*parsed)) return std::nullopt;  // identity, not a base
  return ensure_base(*parsed);
}

Letter ZdBackend::act_base(Factor f, Letter x) const {
  IntVec v;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    v = bases_.at(static_cast<std::size_t>(f.base));
  }
  if (f.inverted) {
    for (BigInt& c : v) c = -c;
  }
  return action_.act_letter_vec(v, x);
}

void ZdBackend::restrict_base(Factor f, Letter x, FactorWord& out) const {
  IntVec v;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    v = bases_.at(static_cast<std::size_t>(f.base));
  }
  if (f.inverted) {
    for (BigInt& c : v) c = -c;
  }
  const IntVec r = action_.res_letter(v, x);
  if (is_zero(r)) return;
  const Factor g{static_cast<int>(ensure_base(r)), false};
  if (!out.empty() && out.back().base == g.base && out.back().inverted != g.inverted) {
    out.pop_back();
  } else {
    out.push_back(g);
  }
}

std::string ZdBackend::describe(const FactorWord& word) const {
  IntVec net(action_.dim());
  {
    std::lock_guard<std::mutex> lock(mutex_);
    for (const Factor& f : word) {
      const IntVec& v = bases_.at(static_cast<std::size_t>(f.base));
      for (std::size_t i = 0; i < net.size(); ++i) net[i] += f.inverted ? -v[i] : v[i];
    }
  }
  return render_int_vec(net);
}

GroupElement ZdBackend::element_from_vector(const IntVec& v) const {
  auto self = shared_from_this();
  if (is_zero(v)) return GroupElement::identity(self);
  return GroupElement::from_factors(self, {Factor{static_cast<int>(ensure_base(v)), false}});
}

IntVec ZdBackend::vector_of(const GroupElement& g) const {
  IntVec net(action_.dim());
  std::lock_guard<std::mutex> lock(mutex_);
  for (const Factor& f : g.factors()) {
    const IntVec& v = bases_.at(static_cast<std::size_t>(f.base));
    for (std::size_t i = 0; i < net.size(); ++i) net[i] += f.inverted ? -v[i] : v[i];
  }
  return net;
}

std::vector<GroupElement> ZdBackend::generators() const {
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < action_.dim(); ++i) {
    IntVec unit(action_.dim());
    unit[i] = 1;
    gens.push_back(element_from_vector(unit));
  }
  return gens;
}

}  // namespace selfsim
