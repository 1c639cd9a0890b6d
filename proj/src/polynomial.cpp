#include "poscert/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace poscert {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

std::uint64_t Monomial::degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.nvars() != nvars()) throw std::invalid_argument("monomial variable count mismatch");
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

bool Monomial::is_square() const {
  return std::all_of(exps_.begin(), exps_.end(), [](std::uint32_t e) { return e % 2 == 0; });
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  if (auto c = degree() <=> other.degree(); c != 0) return c;
  const std::size_t n = std::min(exps_.size(), other.exps_.size());
  for (std::size_t i = 0; i < n; ++i)
    if (exps_[i] != other.exps_[i]) return exps_[i] <=> other.exps_[i];
  return exps_.size() <=> other.exps_.size();
}

// -------------------------------------------------------------- Polynomial

void require_same_nvars(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars())
    throw std::invalid_argument("polynomial variable count mismatch (" + std::to_string(a.nvars()) +
                                " vs " + std::to_string(b.nvars()) + ")");
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::invalid_argument("variable index out of range");
  Monomial m(nvars);
  m[index] = 1;
  return term(m, 1);
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p(m.nvars());
  p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

long Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<long>(terms_.rbegin()->first.degree());
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(Monomial(nvars_)); }

const std::pair<const Monomial, Rational>& Polynomial::leading_term() const {
  if (terms_.empty()) throw std::invalid_argument("leading term of zero polynomial");
  return *terms_.rbegin();
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.nvars() != nvars_) throw std::invalid_argument("monomial variable count mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) {
    it->second.canonicalize();
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_nvars(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_nvars(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_nvars(a, b);
  Polynomial r(a.nvars());
  if (a.is_zero() || b.is_zero()) return r;
  Rational prod;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      r.add_term(ma * mb, prod);
    }
  }
  return r;
}

Polynomial Polynomial::scale(const Rational& c) const {
  if (c == 0) return Polynomial(nvars_);
  Polynomial r(*this);
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::times_monomial(const Monomial& m) const {
  Polynomial r(nvars_);
  for (const auto& [mm, c] : terms_) r.terms_.emplace(mm * m, c);
  return r;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_)
    throw std::invalid_argument("evaluation point has " + std::to_string(point.size()) +
                                " coordinates, polynomial has " + std::to_string(nvars_) + " variables");
  // Powers are cached per variable.
  std::vector<std::vector<Rational>> powers(nvars_, std::vector<Rational>{Rational(1)});
  auto power = [&](std::size_t i, std::uint32_t e) -> const Rational& {
    auto& cache = powers[i];
    while (cache.size() <= e) cache.push_back(cache.back() * point[i]);
    return cache[e];
  };
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i] != 0) t *= power(i, m[i]);
    sum += t;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point dimension mismatch");
  double sum = 0;
  for (const auto& [m, c] : terms_) {
    double t = to_double(c);
    for (std::size_t i = 0; i < nvars_; ++i)
      for (std::uint32_t k = 0; k < m[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images) const {
  if (images.size() != nvars_) throw std::invalid_argument("substitution needs one image per variable");
  std::size_t target = images.empty() ? 0 : images.front().nvars();
  for (const auto& img : images)
    if (img.nvars() != target) throw std::invalid_argument("substitution images disagree on variable count");
  std::vector<std::vector<Polynomial>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) powers[i].push_back(constant(target, 1));
  auto power = [&](std::size_t i, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[i];
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  Polynomial result(target);
  for (const auto& [m, c] : terms_) {
    Polynomial t = constant(target, c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i] != 0) t = t * power(i, m[i]);
    result += t;
  }
  return result;
}

// --------------------------------------------------------------- free ops

Polynomial highest_degree_part(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("highest degree part of the zero polynomial");
  const auto top = static_cast<std::uint64_t>(p.degree());
  Polynomial r(p.nvars());
  for (const auto& [m, c] : p.terms())
    if (m.degree() == top) r.add_term(m, c);
  return r;
}

Polynomial insert_variable(const Polynomial& p, std::size_t position) {
  if (position > p.nvars()) throw std::invalid_argument("insert position out of range");
  Polynomial r(p.nvars() + 1);
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::uint32_t> e = m.exponents();
    e.insert(e.begin() + static_cast<std::ptrdiff_t>(position), 0);
    r.add_term(Monomial(std::move(e)), c);
  }
  return r;
}

Polynomial homogenize_to(const Polynomial& p, std::uint64_t degree, std::size_t position) {
  if (p.degree() > static_cast<long>(degree))
    throw std::invalid_argument("homogenization degree below polynomial degree");
  if (position > p.nvars()) throw std::invalid_argument("homogenizing variable position out of range");
  Polynomial r(p.nvars() + 1);
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::uint32_t> e = m.exponents();
    e.insert(e.begin() + static_cast<std::ptrdiff_t>(position),
             static_cast<std::uint32_t>(degree - m.degree()));
    r.add_term(Monomial(std::move(e)), c);
  }
  return r;
}

Polynomial homogenize(const Polynomial& p, bool even) {
  if (p.is_zero()) throw std::invalid_argument("cannot homogenize the zero polynomial");
  auto d = static_cast<std::uint64_t>(p.degree());
  if (even && d % 2 == 1) ++d;
  return homogenize_to(p, d, 0);
}

Polynomial dehomogenize(const Polynomial& p, std::size_t var) {
  if (var >= p.nvars()) throw std::invalid_argument("dehomogenization variable out of range");
  Polynomial r(p.nvars() - 1);
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::uint32_t> e = m.exponents();
    e.erase(e.begin() + static_cast<std::ptrdiff_t>(var));
    r.add_term(Monomial(std::move(e)), c);
  }
  return r;
}

Polynomial sign_flip(const Polynomial& p, std::span<const int> signs) {
  if (signs.size() != p.nvars()) throw std::invalid_argument("sign vector length mismatch");
  for (int s : signs)
    if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
  Polynomial r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    int parity = 1;
    for (std::size_t i = 0; i < signs.size(); ++i)
      if (signs[i] < 0 && m[i] % 2 == 1) parity = -parity;
    r.add_term(m, parity > 0 ? c : Rational(-c));
  }
  return r;
}

std::vector<Polynomial> all_elementary_symmetric(std::span<const Polynomial> ps) {
  if (ps.empty()) throw std::invalid_argument("elementary symmetric polynomials of an empty family");
  const std::size_t n = ps.front().nvars();
  std::vector<Polynomial> e(ps.size() + 1, Polynomial(n));
  e[0] = Polynomial::constant(n, 1);
  for (std::size_t j = 0; j < ps.size(); ++j) {
    require_same_nvars(ps[j], e[0]);
    for (std::size_t k = j + 1; k >= 1; --k) e[k] += e[k - 1] * ps[j];
  }
  return e;
}

Polynomial elementary_symmetric(std::span<const Polynomial> ps, std::size_t k) {
  if (k < 1 || k > ps.size())
    throw std::invalid_argument("elementary symmetric index " + std::to_string(k) + " out of range");
  return all_elementary_symmetric(ps)[k];
}

EvenOddSplit even_odd_split(const Polynomial& p, std::size_t var) {
  if (var >= p.nvars()) throw std::invalid_argument("split variable out of range");
  EvenOddSplit out{Polynomial(p.nvars()), Polynomial(p.nvars())};
  for (const auto& [m, c] : p.terms()) {
    Monomial q(m);
    if (m[var] % 2 == 0) {
      q[var] = m[var] / 2;
      out.even.add_term(q, c);
    } else {
      q[var] = (m[var] - 1) / 2;
      out.odd.add_term(q, c);
    }
  }
  return out;
}

Polynomial inflate_variable(const Polynomial& p, std::size_t var, std::uint32_t factor) {
  if (var >= p.nvars()) throw std::invalid_argument("variable out of range");
  Polynomial r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    Monomial q(m);
    q[var] = m[var] * factor;
    r.add_term(q, c);
  }
  return r;
}

Polynomial deflate_variable(const Polynomial& p, std::size_t var) {
  if (var >= p.nvars()) throw std::invalid_argument("variable out of range");
  Polynomial r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] % 2 != 0) throw std::invalid_argument("odd exponent where an even one is required");
    Monomial q(m);
    q[var] = m[var] / 2;
    r.add_term(q, c);
  }
  return r;
}

Polynomial recompose_even_odd(const EvenOddSplit& parts, std::size_t var) {
  require_same_nvars(parts.even, parts.odd);
  Polynomial r = inflate_variable(parts.even, var, 2);
  r += inflate_variable(parts.odd, var, 2) * Polynomial::variable(parts.odd.nvars(), var);
  return r;
}

long weighted_degree(const Polynomial& p, const Grading& grading) {
  if (p.is_zero()) throw std::invalid_argument("weighted degree of the zero polynomial");
  if (grading.weights.size() != p.nvars()) throw std::invalid_argument("grading length mismatch");
  bool first = true;
  long best = 0;
  for (const auto& [m, c] : p.terms()) {
    long w = 0;
    for (std::size_t i = 0; i < p.nvars(); ++i) w += grading.weights[i] * static_cast<long>(m[i]);
    if (first || w > best) best = w;
    first = false;
  }
  return best;
}

Polynomial sum_of_squares_of_variables(std::size_t nvars) {
  Polynomial r(nvars);
  for (std::size_t i = 0; i < nvars; ++i) {
    Monomial m(nvars);
    m[i] = 2;
    r.add_term(m, 1);
  }
  return r;
}

Polynomial sum_of_variables(std::size_t nvars) {
  Polynomial r(nvars);
  for (std::size_t i = 0; i < nvars; ++i) r += Polynomial::variable(nvars, i);
  return r;
}

namespace {

void enumerate(std::size_t nvars, std::size_t index, std::uint64_t remaining, std::vector<std::uint32_t>& cur,
               std::vector<Monomial>& out) {
  if (index + 1 == nvars) {
    cur[index] = static_cast<std::uint32_t>(remaining);
    out.emplace_back(cur);
    return;
  }
  for (std::uint64_t e = remaining + 1; e-- > 0;) {
    cur[index] = static_cast<std::uint32_t>(e);
    enumerate(nvars, index + 1, remaining - e, cur, out);
  }
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint64_t degree) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  std::vector<std::uint32_t> cur(nvars, 0);
  enumerate(nvars, 0, degree, cur, out);
  return out;
}

std::vector<Monomial> monomials_up_to_degree(std::size_t nvars, std::uint64_t degree) {
  std::vector<Monomial> out;
  for (std::uint64_t d = 0; d <= degree; ++d) {
    auto layer = monomials_of_degree(nvars, d);
    out.insert(out.end(), layer.rbegin(), layer.rend());
  }
  return out;
}

bool polynomial_less(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars()) return a.nvars() < b.nvars();
  auto ia = a.terms().rbegin();
  auto ib = b.terms().rbegin();
  for (; ia != a.terms().rend() && ib != b.terms().rend(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ib != b.terms().rend();
}

}  // namespace poscert
