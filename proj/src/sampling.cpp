#include "poscert/putinar.hpp"

#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace poscert {

namespace {

constexpr std::size_t kMaxGridPoints = 20000;

/// Largest resolution r <= requested with (r+1)^dims <= kMaxGridPoints.
unsigned capped_resolution(unsigned requested, std::size_t dims) {
  unsigned r = requested;
  while (r > 1 && std::pow(static_cast<double>(r) + 1, static_cast<double>(dims)) > kMaxGridPoints) --r;
  return r;
}

}  // namespace

Rational sqrt_upper(const Rational& value) {
  if (value < 0) throw std::invalid_argument("square root of a negative number");
  Rational root;
  if (exact_sqrt(value, root)) return root;
  const Integer scale = Integer(1) << 20;
  Integer radicand = value.get_num() * value.get_den() * scale * scale;
  Integer s;
  mpz_sqrt(s.get_mpz_t(), radicand.get_mpz_t());
  Rational out(s + 1, value.get_den() * scale);
  out.canonicalize();
  return out;
}

std::vector<std::vector<Rational>> box_grid(std::size_t nvars, const Rational& radius, unsigned resolution) {
  if (resolution < 1) throw std::invalid_argument("grid resolution must be positive");
  const unsigned r = capped_resolution(resolution, nvars);
  std::vector<Rational> axis;
  for (unsigned k = 0; k <= r; ++k) axis.push_back(-radius + 2 * radius * ratio(k, r));
  std::vector<std::vector<Rational>> out;
  std::vector<Rational> pt(nvars);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == nvars) {
      out.push_back(pt);
      return;
    }
    for (const auto& a : axis) {
      pt[i] = a;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<Rational>> simplex_grid(const std::vector<std::vector<Rational>>& vertices,
                                                unsigned resolution) {
  if (vertices.empty()) return {};
  const std::size_t n = vertices.front().size();
  const unsigned r = capped_resolution(resolution, n);
  std::vector<std::vector<Rational>> out;
  std::vector<unsigned> b(vertices.size(), 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == vertices.size()) {
      b[i] = left;
      std::vector<Rational> pt(n, 0);
      for (std::size_t j = 0; j < vertices.size(); ++j)
        if (b[j] != 0)
          for (std::size_t k = 0; k < n; ++k) pt[k] += ratio(static_cast<long>(b[j]), r) * vertices[j][k];
      out.push_back(std::move(pt));
      return;
    }
    for (unsigned c = 0; c <= left; ++c) {
      b[i] = c;
      rec(i + 1, left - c);
    }
  };
  rec(0, r);
  return out;
}

std::vector<std::vector<Rational>> direction_grid(std::size_t nvars, unsigned resolution, bool half) {
  if (nvars == 0) return {};
  const unsigned r = capped_resolution(resolution, nvars - 1);
  std::set<std::vector<Rational>> points;
  std::vector<Rational> axis;
  for (unsigned k = 0; k <= r; ++k) axis.push_back(Rational(-1) + 2 * ratio(k, r));
  std::vector<Rational> pt(nvars);
  for (std::size_t face = 0; face < nvars; ++face) {
    for (int sign : {1, -1}) {
      if (half && sign < 0) continue;
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == nvars) {
          points.insert(pt);
          return;
        }
        if (i == face) {
          pt[i] = sign;
          rec(i + 1);
          return;
        }
        for (const auto& a : axis) {
          pt[i] = a;
          rec(i + 1);
        }
      };
      rec(0);
    }
  }
  if (half) {
    // faces x_a = +1 still contain antipodal pairs on their common edges
    std::vector<std::vector<Rational>> out;
    std::set<std::vector<Rational>> kept;
    for (const auto& p : points) {
      std::vector<Rational> neg(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) neg[i] = -p[i];
      if (kept.count(neg)) continue;
      kept.insert(p);
      out.push_back(p);
    }
    return out;
  }
  return {points.begin(), points.end()};
}

}  // namespace poscert
