#include "poscert/certificate.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace poscert {

std::string to_string(CertMode mode) { return mode == CertMode::Module ? "module" : "preorder"; }

// ------------------------------------------------------------ GeneratorSet

GeneratorSet::GeneratorSet(std::size_t nvars, std::vector<Polynomial> generators, bool homogeneous,
                           bool even_degrees)
    : nvars_(nvars), generators_(std::move(generators)), homogeneous_(homogeneous), even_degrees_(even_degrees) {
  if (generators_.size() > 62) throw std::invalid_argument("at most 62 generators are supported");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.nvars() != nvars_) throw std::invalid_argument("generator " + std::to_string(i + 1) + " has wrong variable count");
    if (homogeneous_ && !g.is_homogeneous())
      throw std::invalid_argument("generator " + std::to_string(i + 1) + " is not homogeneous");
    if (even_degrees_ && g.degree() % 2 != 0)
      throw std::invalid_argument("generator " + std::to_string(i + 1) + " does not have even degree");
  }
}

Polynomial GeneratorSet::generator(std::size_t index) const {
  if (index == 0) return Polynomial::constant(nvars_, 1);
  if (index > generators_.size()) throw std::invalid_argument("generator index out of range");
  return generators_[index - 1];
}

Polynomial GeneratorSet::product(std::uint64_t mask) const {
  Polynomial r = Polynomial::constant(nvars_, 1);
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (mask & (std::uint64_t{1} << i)) r = r * generators_[i];
  if (mask >> generators_.size()) throw std::invalid_argument("mask selects a nonexistent generator");
  return r;
}

// ------------------------------------------------------------------ SosPoly

SosPoly SosPoly::constant(std::size_t nvars, const Rational& c) {
  SosPoly s(nvars);
  s.add_square(c, Polynomial::constant(nvars, 1));
  return s;
}

SosPoly SosPoly::square(const Polynomial& base, const Rational& weight) {
  SosPoly s(base.nvars());
  s.add_square(weight, base);
  return s;
}

SosPoly SosPoly::sum_of_variable_squares(std::size_t nvars) {
  SosPoly s(nvars);
  for (std::size_t i = 0; i < nvars; ++i) s.add_square(1, Polynomial::variable(nvars, i));
  return s;
}

SosPoly SosPoly::from_square_monomials(const Polynomial& p) {
  SosPoly s(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (!m.is_square() || c < 0)
      throw std::invalid_argument("polynomial is not a nonnegative combination of squared monomials");
    Monomial root(m);
    for (std::size_t i = 0; i < root.nvars(); ++i) root[i] /= 2;
    s.add_square(c, Polynomial::term(root, 1));
  }
  return s;
}

void SosPoly::add_square(const Rational& weight, const Polynomial& base) {
  if (base.nvars() != nvars_) throw std::invalid_argument("square base has wrong variable count");
  if (weight < 0) throw std::invalid_argument("negative weight in sum of squares");
  if (weight == 0 || base.is_zero()) return;
  squares_.push_back({weight, base});
  squares_.back().weight.canonicalize();
}

SosPoly& SosPoly::operator+=(const SosPoly& other) {
  if (other.nvars_ != nvars_) throw std::invalid_argument("sum of squares variable count mismatch");
  squares_.insert(squares_.end(), other.squares_.begin(), other.squares_.end());
  return *this;
}

SosPoly SosPoly::scale(const Rational& c) const {
  if (c < 0) throw std::invalid_argument("sum of squares scaled by a negative number");
  SosPoly r(nvars_);
  if (c == 0) return r;
  r.squares_ = squares_;
  for (auto& sq : r.squares_) sq.weight *= c;
  return r;
}

SosPoly SosPoly::times(const SosPoly& other) const {
  if (other.nvars_ != nvars_) throw std::invalid_argument("sum of squares variable count mismatch");
  SosPoly r(nvars_);
  r.squares_.reserve(squares_.size() * other.squares_.size());
  for (const auto& a : squares_)
    for (const auto& b : other.squares_) r.squares_.push_back({a.weight * b.weight, a.base * b.base});
  return r;
}

SosPoly SosPoly::times_square(const Polynomial& q) const {
  if (q.nvars() != nvars_) throw std::invalid_argument("sum of squares variable count mismatch");
  SosPoly r(nvars_);
  if (q.is_zero()) return r;
  r.squares_.reserve(squares_.size());
  for (const auto& a : squares_) r.squares_.push_back({a.weight, a.base * q});
  return r;
}

Polynomial SosPoly::expand() const {
  Polynomial r(nvars_);
  for (const auto& sq : squares_) r += (sq.base * sq.base).scale(sq.weight);
  return r;
}

SosPoly SosPoly::canonical() const {
  std::vector<WeightedSquare> items;
  items.reserve(squares_.size());
  for (const auto& sq : squares_) {
    const Rational lead = sq.base.leading_term().second;
    items.push_back({sq.weight * lead * lead, sq.base.scale(1 / lead)});
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const WeightedSquare& a, const WeightedSquare& b) { return polynomial_less(a.base, b.base); });
  SosPoly r(nvars_);
  for (auto& item : items) {
    if (!r.squares_.empty() && r.squares_.back().base == item.base) r.squares_.back().weight += item.weight;
    else r.squares_.push_back(std::move(item));
  }
  return r;
}

bool SosPoly::monomial_squares_only() const {
  return std::all_of(squares_.begin(), squares_.end(), [](const WeightedSquare& sq) { return sq.base.size() == 1; });
}

bool SosPoly::operator==(const SosPoly& other) const {
  if (nvars_ != other.nvars_ || squares_.size() != other.squares_.size()) return false;
  for (std::size_t i = 0; i < squares_.size(); ++i)
    if (squares_[i].weight != other.squares_[i].weight || squares_[i].base != other.squares_[i].base) return false;
  return true;
}

// ------------------------------------------------------------ verification

namespace {

/// Shared checks for one summand sigma * g in homogeneous mode.
bool check_homogeneous_summand(const SosPoly& sigma, const Polynomial& g, std::optional<long>& common,
                               const std::string& label, Verdict& verdict) {
  if (sigma.empty() || g.is_zero()) return true;
  if (!g.is_homogeneous()) {
    verdict.status = VerdictStatus::HomogeneityViolation;
    verdict.message = label + ": generator is not homogeneous";
    return false;
  }
  for (std::size_t j = 0; j < sigma.squares().size(); ++j) {
    const auto& base = sigma.squares()[j].base;
    if (!base.is_homogeneous()) {
      verdict.status = VerdictStatus::HomogeneityViolation;
      verdict.message = label + ", square " + std::to_string(j) + ": base is not homogeneous";
      return false;
    }
    const long degree = 2 * base.degree() + g.degree();
    if (!common) common = degree;
    if (*common != degree) {
      verdict.status = VerdictStatus::HomogeneityViolation;
      verdict.message = label + ", square " + std::to_string(j) + ": summand degree " + std::to_string(degree) +
                        " differs from common degree " + std::to_string(*common);
      return false;
    }
  }
  return true;
}

}  // namespace

Verdict compare_identity(const Polynomial& target, const Polynomial& expansion) {
  Verdict v;
  if (target == expansion) {
    v.message = "identity holds";
    return v;
  }
  Polynomial diff = target - expansion;
  const Monomial& m = diff.leading_term().first;
  v.status = VerdictStatus::IdentityMismatch;
  v.mismatch = m;
  v.target_coefficient = target.coefficient(m);
  v.expansion_coefficient = expansion.coefficient(m);
  std::string exps;
  for (std::size_t i = 0; i < m.nvars(); ++i) exps += (i ? "," : "") + std::to_string(m[i]);
  v.message = "identity fails at monomial (" + exps + "): target coefficient " + to_string(v.target_coefficient) +
              ", expansion coefficient " + to_string(v.expansion_coefficient);
  return v;
}

Polynomial expand(const ModuleCert& cert, const GeneratorSet& S) {
  if (cert.sigmas.size() != S.size() + 1)
    throw std::invalid_argument("module certificate has " + std::to_string(cert.sigmas.size()) +
                                " multipliers, generator set needs " + std::to_string(S.size() + 1));
  Polynomial sum(S.nvars());
  for (std::size_t i = 0; i < cert.sigmas.size(); ++i) {
    if (cert.sigmas[i].nvars() != S.nvars()) throw std::invalid_argument("multiplier variable count mismatch");
    if (cert.sigmas[i].empty()) continue;
    Polynomial e = cert.sigmas[i].expand();
    sum += i == 0 ? e : e * S.generator(i);
  }
  return sum;
}

Polynomial expand(const PreorderCert& cert, const GeneratorSet& S) {
  Polynomial sum(S.nvars());
  for (const auto& [mask, sigma] : cert.sigmas) {
    if (mask >> S.size()) throw std::invalid_argument("preorder index selects a nonexistent generator");
    if (sigma.nvars() != S.nvars()) throw std::invalid_argument("multiplier variable count mismatch");
    if (sigma.empty()) continue;
    sum += mask == 0 ? sigma.expand() : sigma.expand() * S.product(mask);
  }
  return sum;
}

Verdict verify_module(const ModuleCert& cert, const GeneratorSet& S) {
  if (cert.target.nvars() != S.nvars()) throw std::invalid_argument("target variable count mismatch");
  if (cert.sigmas.size() != S.size() + 1)
    throw std::invalid_argument("module certificate arity " + std::to_string(cert.sigmas.size()) +
                                " does not match generator count + 1 = " + std::to_string(S.size() + 1));
  if (S.homogeneous()) {
    Verdict v;
    std::optional<long> common;
    for (std::size_t i = 0; i < cert.sigmas.size(); ++i)
      if (!check_homogeneous_summand(cert.sigmas[i], S.generator(i), common, "sigma " + std::to_string(i), v))
        return v;
  }
  return compare_identity(cert.target, expand(cert, S));
}

Verdict verify_preorder(const PreorderCert& cert, const GeneratorSet& S) {
  if (cert.target.nvars() != S.nvars()) throw std::invalid_argument("target variable count mismatch");
  for (const auto& [mask, sigma] : cert.sigmas)
    if (mask >> S.size())
      throw std::invalid_argument("preorder index " + mask_to_bits(mask, 64) + " exceeds generator count");
  if (S.homogeneous()) {
    Verdict v;
    std::optional<long> common;
    for (const auto& [mask, sigma] : cert.sigmas)
      if (!check_homogeneous_summand(sigma, S.product(mask), common, "sigma " + mask_to_bits(mask, S.size()), v))
        return v;
  }
  return compare_identity(cert.target, expand(cert, S));
}

PreorderCert to_preorder(const ModuleCert& cert) {
  PreorderCert out{cert.target, {}};
  for (std::size_t i = 0; i < cert.sigmas.size(); ++i) {
    if (cert.sigmas[i].empty()) continue;
    out.sigmas[i == 0 ? 0 : std::uint64_t{1} << (i - 1)] = cert.sigmas[i];
  }
  return out;
}

ModuleCert to_module(const PreorderCert& cert, std::size_t ngenerators) {
  ModuleCert out{cert.target, std::vector<SosPoly>(ngenerators + 1, SosPoly(cert.target.nvars()))};
  for (const auto& [mask, sigma] : cert.sigmas) {
    if (sigma.empty()) continue;
    if (std::popcount(mask) > 1) throw std::invalid_argument("preorder certificate uses a product of generators");
    if (mask >> ngenerators) throw std::invalid_argument("preorder index exceeds generator count");
    std::size_t index = mask == 0 ? 0 : static_cast<std::size_t>(std::countr_zero(mask)) + 1;
    out.sigmas[index] += sigma;
  }
  return out;
}

std::string mask_to_bits(std::uint64_t mask, std::size_t ngenerators) {
  std::string bits;
  for (std::size_t i = 0; i < ngenerators; ++i) bits += (mask >> i) & 1u ? '1' : '0';
  return bits;
}

std::uint64_t bits_to_mask(const std::string& bits) {
  if (bits.size() > 62) throw std::invalid_argument("preorder index too long");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') mask |= std::uint64_t{1} << i;
    else if (bits[i] != '0') throw std::invalid_argument("preorder index must be a 0/1 string");
  }
  return mask;
}

}  // namespace poscert
