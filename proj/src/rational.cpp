#include "poscert/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace poscert {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rational& value) { return value.get_d(); }

Rational rationalize(double value, std::uint64_t max_den) {
  if (!std::isfinite(value)) throw std::invalid_argument("cannot rationalize non-finite value");
  if (max_den == 0) max_den = 1;
  const bool negative = value < 0;
  Rational x(std::fabs(value));  // exact binary value of the double
  // Convergents p/q of the continued fraction of x.
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rest = x;
  const Integer bound(static_cast<unsigned long>(max_den));
  while (true) {
    Integer a = rest.get_num() / rest.get_den();
    Integer p2 = a * p1 + p0;
    Integer q2 = a * q1 + q0;
    if (q2 > bound) {
      // Best semiconvergent within the bound.
      Integer k = (bound - q0) / q1;
      Rational semi(k * p1 + p0, k * q1 + q0);
      semi.canonicalize();
      Rational conv(p1, q1);
      conv.canonicalize();
      Rational best = abs(semi - x) < abs(conv - x) ? semi : conv;
      return negative ? Rational(-best) : best;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  Rational r(p1, q1);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

bool exact_sqrt(const Rational& value, Rational& root) {
  if (value < 0) return false;
  if (!mpz_perfect_square_p(value.get_num().get_mpz_t()) ||
      !mpz_perfect_square_p(value.get_den().get_mpz_t()))
    return false;
  Integer n = sqrt(value.get_num());
  Integer d = sqrt(value.get_den());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

Rational sqrt_approx(const Rational& value, std::uint64_t max_den) {
  if (value < 0) throw std::invalid_argument("sqrt of negative rational");
  Rational root;
  if (exact_sqrt(value, root)) return root;
  Rational r = rationalize(std::sqrt(to_double(value)), max_den);
  if (r <= 0) r = Rational(1, static_cast<unsigned long>(max_den));
  return r;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("zero to a negative power");
    return pow(Rational(1 / base), -exponent);
  }
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.get_den().get_mpz_t(), static_cast<unsigned long>(exponent));
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rational ratio(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace poscert
