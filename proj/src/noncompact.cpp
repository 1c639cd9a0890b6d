#include "poscert/noncompact.hpp"

#include "poscert/errors.hpp"
#include "poscert/linalg.hpp"
#include "poscert/text.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <stdexcept>

namespace poscert {

// ------------------------------------------------------------ intervals

IntervalUnion::IntervalUnion(std::vector<Interval> pieces) : pieces_(std::move(pieces)) {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Interval& p = pieces_[i];
    if (p.lo && p.hi && *p.lo > *p.hi) throw std::invalid_argument("interval with lo > hi");
    if (i == 0) continue;
    const Interval& prev = pieces_[i - 1];
    if (!prev.hi || !p.lo) throw std::invalid_argument("unbounded piece in the middle of the union");
    if (*prev.hi >= *p.lo) throw std::invalid_argument("pieces must be sorted, disjoint and separated by a gap");
  }
}

namespace {

Rational parse_endpoint(std::string_view text, std::size_t col, bool& infinite, int expected_sign) {
  const std::string_view t = trim(text);
  infinite = false;
  if (t == "inf" || t == "+inf" || t == "-inf") {
    const int sign = t.front() == '-' ? -1 : 1;
    if (sign != expected_sign)
      throw ParseError(std::string("infinite endpoint on the wrong side: ") + std::string(t), 0, col);
    infinite = true;
    return 0;
  }
  try {
    return parse_rational(t);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad endpoint '") + std::string(t) + "': " + e.what(), 0, col);
  }
}

}  // namespace

IntervalUnion IntervalUnion::parse(std::string_view text) {
  std::vector<Interval> pieces;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of("uU", start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(start, end - start);
    const std::string_view piece = trim(raw);
    const std::size_t col = start + 1 + (piece.empty() ? 0 : static_cast<std::size_t>(piece.data() - raw.data()));
    if (piece.size() < 5) throw ParseError("expected a piece like [a,b]", 0, col);
    const char open = piece.front();
    const char close = piece.back();
    if ((open != '[' && open != '(') || (close != ']' && close != ')'))
      throw ParseError("piece must start with [ or ( and end with ] or )", 0, col);
    const std::string_view body = piece.substr(1, piece.size() - 2);
    const std::size_t comma = body.find(',');
    if (comma == std::string_view::npos) throw ParseError("missing comma in piece", 0, col);
    bool lo_inf = false, hi_inf = false;
    Rational lo = parse_endpoint(body.substr(0, comma), col + 1, lo_inf, -1);
    Rational hi = parse_endpoint(body.substr(comma + 1), col + comma + 2, hi_inf, 1);
    if ((open == '(') != lo_inf) throw ParseError("use ( exactly for -inf and [ for finite endpoints", 0, col);
    if ((close == ')') != hi_inf) throw ParseError("use ) exactly for inf and ] for finite endpoints", 0, col);
    Interval iv;
    if (!lo_inf) iv.lo = lo;
    if (!hi_inf) iv.hi = hi;
    pieces.push_back(iv);
    start = end + 1;
  }
  try {
    return IntervalUnion(std::move(pieces));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0, 1);
  }
}

bool IntervalUnion::compact() const { return !pieces_.empty() && pieces_.front().lo && pieces_.back().hi; }

bool IntervalUnion::contains(const Rational& x) const {
  for (const auto& p : pieces_)
    if ((!p.lo || *p.lo <= x) && (!p.hi || x <= *p.hi)) return true;
  return false;
}

std::string IntervalUnion::to_string() const {
  if (pieces_.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (i) s += "u";
    s += p.lo ? "[" + poscert::to_string(*p.lo) : "(-inf";
    s += ",";
    s += p.hi ? poscert::to_string(*p.hi) + "]" : "inf)";
  }
  return s;
}

std::vector<Polynomial> natural_generators(const IntervalUnion& K) {
  if (K.empty()) throw std::invalid_argument("empty interval union has no natural generators");
  const Polynomial x = Polynomial::variable(1, 0);
  auto c = [](const Rational& v) { return Polynomial::constant(1, v); };
  std::vector<Polynomial> out;
  const auto& pieces = K.pieces();
  if (pieces.front().lo) out.push_back(x - c(*pieces.front().lo));
  for (std::size_t i = 1; i < pieces.size(); ++i) out.push_back((x - c(*pieces[i - 1].hi)) * (x - c(*pieces[i].lo)));
  if (pieces.back().hi) out.push_back(c(*pieces.back().hi) - x);
  return out;
}

namespace {

using Coeffs = std::vector<Rational>;  // index = power

Coeffs to_coeffs(const Polynomial& p) {
  Coeffs c(static_cast<std::size_t>(std::max<long>(p.degree(), 0)) + 1, 0);
  for (const auto& [m, v] : p.terms()) c[m[0]] = v;
  while (c.size() > 1 && c.back() == 0) c.pop_back();
  return c;
}

void trim_coeffs(Coeffs& c) {
  while (c.size() > 1 && c.back() == 0) c.pop_back();
}

bool is_zero(const Coeffs& c) { return c.size() == 1 && c[0] == 0; }

Rational eval(const Coeffs& c, const Rational& x) {
  Rational v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

/// Remainder of a / b.
Coeffs remainder(Coeffs a, const Coeffs& b) {
  trim_coeffs(a);
  while (!is_zero(a) && a.size() >= b.size()) {
    const Rational q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
    a.pop_back();
    trim_coeffs(a);
  }
  return a;
}

/// a / (x - r), exact.
Coeffs deflate_root(const Coeffs& a, const Rational& r) {
  Coeffs q(a.size() - 1);
  Rational carry = 0;
  for (std::size_t i = a.size(); i-- > 1;) {
    carry = a[i] + carry * r;
    q[i - 1] = carry;
  }
  return q;
}

int sign_at_infinity(const Coeffs& c, bool negative) {
  const int s = sgn(c.back());
  return negative && (c.size() - 1) % 2 == 1 ? -s : s;
}

/// Number of distinct real roots (Sturm).
std::size_t real_root_count(const Coeffs& p) {
  if (p.size() <= 1) return 0;
  std::vector<Coeffs> chain{p};
  Coeffs d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
  chain.push_back(d);
  while (chain.back().size() > 1) {
    Coeffs r = remainder(chain[chain.size() - 2], chain.back());
    if (is_zero(r)) break;
    for (auto& v : r) v = -v;
    chain.push_back(r);
  }
  auto changes = [&](bool negative) {
    std::size_t n = 0;
    int last = 0;
    for (const auto& c : chain) {
      const int s = sign_at_infinity(c, negative);
      if (s == 0) continue;
      if (last != 0 && s != last) ++n;
      last = s;
    }
    return n;
  };
  return changes(true) - changes(false);
}

std::vector<Integer> divisors(const Integer& v) {
  Integer a = abs(v);
  if (a > Integer("1000000000000")) throw ResourceLimit("coefficient too large for rational root search");
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      out.push_back(d);
      if (d * d != a) out.push_back(a / d);
    }
  }
  return out;
}

/// Distinct rational roots of c; the cofactor without them is returned in `rest`.
std::vector<Rational> rational_roots(Coeffs c, Coeffs& rest) {
  std::vector<Rational> roots;
  while (c.size() > 1 && c[0] == 0) {
    c.erase(c.begin());
    if (std::find(roots.begin(), roots.end(), Rational(0)) == roots.end()) roots.push_back(0);
  }
  if (c.size() > 1) {
    Integer l = 1;
    for (const auto& v : c) l = lcm(l, Integer(v.get_den()));
    std::vector<Integer> ints;
    for (const auto& v : c) ints.push_back(Integer(v * l));
    const auto ps = divisors(ints.front());
    const auto qs = divisors(ints.back());
    std::set<Rational> candidates;
    for (const auto& p : ps)
      for (const auto& q : qs) {
        Rational r(p, q);
        r.canonicalize();
        candidates.insert(r);
        candidates.insert(-r);
      }
    for (const auto& r : candidates) {
      bool hit = false;
      while (c.size() > 1 && eval(c, r) == 0) {
        c = deflate_root(c, r);
        hit = true;
      }
      if (hit) roots.push_back(r);
    }
  }
  rest = c;
  return roots;
}

}  // namespace

IntervalUnion semialgebraic_set_1d(const std::vector<Polynomial>& S) {
  std::set<Rational> critical;
  std::vector<Coeffs> polys;
  for (const auto& g : S) {
    if (g.nvars() != 1) throw std::invalid_argument("univariate generators expected");
    if (g.is_zero()) continue;
    Coeffs c = to_coeffs(g);
    polys.push_back(c);
    Coeffs rest;
    for (const auto& r : rational_roots(c, rest)) critical.insert(r);
    if (real_root_count(rest) != 0)
      throw std::invalid_argument("generator has an irrational real root; K cannot be described exactly");
  }
  auto member = [&](const Rational& x) {
    for (const auto& c : polys)
      if (eval(c, x) < 0) return false;
    return true;
  };
  const std::vector<Rational> pts(critical.begin(), critical.end());
  // cells: open (-inf, p0), {p0}, (p0, p1), ..., {p_k}, (p_k, inf)
  struct Cell {
    bool point;
    std::size_t i;  // point index, or index of the right endpoint for open cells
    bool in;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i <= pts.size(); ++i) {
    Rational sample;
    if (pts.empty()) sample = 0;
    else if (i == 0) sample = pts.front() - 1;
    else if (i == pts.size()) sample = pts.back() + 1;
    else sample = (pts[i - 1] + pts[i]) / 2;
    cells.push_back({false, i, member(sample)});
    if (i < pts.size()) cells.push_back({true, i, member(pts[i])});
  }
  std::vector<Interval> pieces;
  for (std::size_t c = 0; c < cells.size();) {
    if (!cells[c].in) {
      ++c;
      continue;
    }
    std::size_t e = c;
    while (e + 1 < cells.size() && cells[e + 1].in) ++e;
    Interval iv;
    if (cells[c].point) iv.lo = pts[cells[c].i];
    else if (cells[c].i > 0) iv.lo = pts[cells[c].i - 1];
    if (cells[e].point) iv.hi = pts[cells[e].i];
    else if (cells[e].i < pts.size()) iv.hi = pts[cells[e].i];
    pieces.push_back(iv);
    c = e + 1;
  }
  return IntervalUnion(std::move(pieces));
}

Putinar1dVerdict is_putinar_1d(const std::vector<Polynomial>& S, const std::optional<IntervalUnion>& declared) {
  Putinar1dVerdict v;
  v.K = semialgebraic_set_1d(S);
  if (v.K.empty()) throw std::invalid_argument("K_S is empty");
  if (v.K.compact()) throw std::invalid_argument("K_S = " + v.K.to_string() + " is compact; the criterion needs non-compact K");
  v.declared_matches = !declared || *declared == v.K;
  v.natural = natural_generators(v.K);
  for (const auto& t : v.natural) {
    bool found = false;
    for (const auto& s : S) {
      if (s.is_zero() || s.degree() != t.degree()) continue;
      const Rational c = s.leading_term().second / t.leading_term().second;
      if (c > 0 && t.scale(c) == s) found = true;
    }
    if (!found) v.missing.push_back(t);
  }
  v.putinar = v.missing.empty();
  return v;
}

// ------------------------------------------------------------ stability

std::vector<Direction> parse_directions(std::string_view text) {
  std::vector<Direction> out;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ';' || std::isspace(static_cast<unsigned char>(text[pos])))) ++pos;
  };
  skip();
  if (pos == text.size()) throw ParseError("no directions given", 0, 1);
  while (pos < text.size()) {
    const std::size_t start = pos;
    const std::size_t close = text.find(')', pos);
    if (text[pos] != '(' || close == std::string_view::npos)
      throw ParseError("direction must look like (a,b)", 0, start + 1);
    const std::string_view body = text.substr(pos + 1, close - pos - 1);
    Direction d;
    std::size_t s = 0;
    while (s <= body.size()) {
      std::size_t e = body.find(',', s);
      if (e == std::string_view::npos) e = body.size();
      const std::string item(trim(body.substr(s, e - s)));
      try {
        std::size_t used = 0;
        const long v = std::stol(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        d.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("bad integer '" + item + "' in direction", 0, start + 1);
      }
      s = e + 1;
    }
    out.push_back(d);
    pos = close + 1;
    if (pos < text.size() && text[pos] != ';' && !std::isspace(static_cast<unsigned char>(text[pos])))
      throw ParseError("expected ';' or a space after a direction", 0, pos + 1);
    skip();
  }
  return out;
}

namespace {

void check_directions(const std::vector<Direction>& T) {
  if (T.empty()) throw std::invalid_argument("no tentacle directions");
  for (const auto& z : T) {
    if (z.size() != T.front().size() || z.empty()) throw std::invalid_argument("directions differ in length");
    if (std::all_of(z.begin(), z.end(), [](long v) { return v == 0; }))
      throw std::invalid_argument("zero tentacle direction");
  }
}

/// u >= 0, u != 0 with <u, z> <= 0 for every direction, from the extreme
/// rays of that cone.
std::optional<std::vector<Rational>> dual_certificate(const std::vector<Direction>& T) {
  const std::size_t n = T.front().size();
  std::vector<std::vector<Rational>> normals;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> e(n, 0);
    e[j] = 1;
    normals.push_back(e);
  }
  for (const auto& z : T) {
    std::vector<Rational> v;
    for (long c : z) v.push_back(-c);
    normals.push_back(v);
  }
  auto feasible = [&](const std::vector<Rational>& u) {
    if (std::all_of(u.begin(), u.end(), [](const Rational& v) { return v == 0; })) return false;
    for (const auto& a : normals) {
      Rational s = 0;
      for (std::size_t j = 0; j < n; ++j) s += a[j] * u[j];
      if (s < 0) return false;
    }
    return true;
  };
  const std::size_t k = n - 1;
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    // generalized cross product of the picked normals
    std::vector<Rational> u(n);
    for (std::size_t col = 0; col < n; ++col) {
      RationalMatrix m;
      for (std::size_t r : pick) {
        std::vector<Rational> row;
        for (std::size_t j = 0; j < n; ++j)
          if (j != col) row.push_back(normals[r][j]);
        m.push_back(row);
      }
      const Rational det = k == 0 ? Rational(1) : determinant_exact(m);
      u[col] = col % 2 ? Rational(-det) : det;
    }
    for (int sign : {1, -1}) {
      std::vector<Rational> cand = u;
      for (auto& v : cand) v *= sign;
      if (feasible(cand)) return cand;
    }
    // next combination
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == normals.size() - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return std::nullopt;
}

}  // namespace

StabilityResult stability_multipliers(const std::vector<Direction>& T, long bound) {
  check_directions(T);
  if (bound < 1) throw std::invalid_argument("multiplier bound must be positive");
  StabilityResult result;
  if (auto u = dual_certificate(T)) {
    result.status = SearchStatus::Refuted;
    result.dual = *u;
    result.reason = "no positive multipliers exist: a nonzero u >= 0 has <u, z> <= 0 for every direction";
    return result;
  }
  const std::size_t m = T.size();
  const std::size_t n = T.front().size();
  double combos = 1;
  for (std::size_t i = 0; i < m; ++i) combos *= static_cast<double>(bound);
  if (combos > 5e6) throw ResourceLimit("multiplier enumeration exceeds 5e6 candidates");
  std::vector<long> r(m, 1);
  while (true) {
    std::vector<long> sum(n, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) sum[j] += r[i] * T[i][j];
    if (std::all_of(sum.begin(), sum.end(), [](long v) { return v > 0; })) {
      result.status = SearchStatus::Found;
      result.multipliers = r;
      result.sum = sum;
      return result;
    }
    std::size_t i = m;
    while (i > 0 && r[i - 1] == bound) r[--i] = 1;
    if (i == 0) break;
    ++r[i - 1];
  }
  result.reason = "positive real multipliers exist but none with entries <= " + std::to_string(bound);
  return result;
}

Rational stability_degree_bound(const std::vector<Direction>& T, const std::vector<long>& r, long d) {
  check_directions(T);
  if (T.front().size() != 2) throw std::invalid_argument("degree bound is implemented for n = 2");
  if (d < 0) throw std::invalid_argument("degree must be non-negative");
  if (T.size() == 1) {
    const long a = T[0][0], b = T[0][1];
    if (a <= 0 || b <= 0) throw std::invalid_argument("single tentacle needs positive entries");
    return Rational(d) * Rational(std::max(a, b)) / Rational(std::min(a, b));
  }
  if (T.size() != 2) throw std::invalid_argument("degree bound is implemented for one or two tentacles");
  if (r.size() != 2 || r[0] < 1 || r[1] < 1) throw std::invalid_argument("two positive multipliers expected");
  Direction z1 = T[0], z2 = T[1];
  long r1 = r[0], r2 = r[1];
  auto normalized = [](const Direction& a, const Direction& b) { return a[0] > 0 && a[1] <= 0 && b[1] > 0 && b[0] <= 0; };
  if (!normalized(z1, z2) && normalized(z2, z1)) {
    std::swap(z1, z2);
    std::swap(r1, r2);
  }
  if (r1 * z1[0] + r2 * z2[0] <= 0 || r1 * z1[1] + r2 * z2[1] <= 0)
    throw std::invalid_argument("multipliers do not give a strictly positive sum");
  const long num = r1 * z1[0] + r2 * z2[1];
  const long den = std::min(r1 * z1[0] + r2 * z2[0], r1 * z1[1] + r2 * z2[1]);
  if (den <= 0 || num < 0) throw std::invalid_argument("degree bound denominator is not positive");
  return Rational(d) * Rational(num) / Rational(den);
}

// ---------------------------------------------------- elimination of squares

Desquared eliminate_squares(const ModuleCert& cert, const GeneratorSet& S, std::size_t var) {
  const std::size_t n = S.nvars();
  if (var >= n) throw std::invalid_argument("variable index out of range");
  Verdict v = verify_module(cert, S);
  if (!v) throw std::invalid_argument("input certificate does not verify: " + v.message);
  auto even_part = [&](const Polynomial& p, const std::string& what) {
    EvenOddSplit parts = even_odd_split(p, var);
    if (!parts.odd.is_zero()) throw std::invalid_argument(what + " is not even in the eliminated variable");
    return parts.even;
  };
  std::vector<Polynomial> gens;
  for (std::size_t i = 1; i <= S.size(); ++i) gens.push_back(even_part(S.generator(i), "generator g_" + std::to_string(i)));
  gens.push_back(Polynomial::variable(n, var));
  Desquared out{GeneratorSet(n, gens), {}};
  out.cert.target = even_part(cert.target, "target");
  const std::uint64_t y_bit = std::uint64_t{1} << S.size();
  for (std::size_t i = 0; i < cert.sigmas.size(); ++i) {
    const std::uint64_t mask = i == 0 ? 0 : std::uint64_t{1} << (i - 1);
    for (const auto& sq : cert.sigmas[i].squares()) {
      EvenOddSplit parts = even_odd_split(sq.base, var);
      if (!parts.even.is_zero()) {
        auto [it, _] = out.cert.sigmas.try_emplace(mask, n);
        it->second.add_square(sq.weight, parts.even);
      }
      if (!parts.odd.is_zero()) {
        auto [it, _] = out.cert.sigmas.try_emplace(mask | y_bit, n);
        it->second.add_square(sq.weight, parts.odd);
      }
    }
  }
  Verdict w = verify_preorder(out.cert, out.S);
  if (!w) throw std::logic_error("desquared certificate fails verification: " + w.message);
  return out;
}

Automorphism Automorphism::identity(std::size_t nvars) {
  Automorphism a;
  for (std::size_t i = 0; i < nvars; ++i) a.forward_.push_back(Polynomial::variable(nvars, i));
  a.inverse_ = a.forward_;
  return a;
}

Automorphism Automorphism::shear(std::size_t nvars, std::size_t var, const Polynomial& q) {
  if (var >= nvars || q.nvars() != nvars) throw std::invalid_argument("shear: variable count mismatch");
  for (const auto& [m, c] : q.terms())
    if (m[var] != 0) throw std::invalid_argument("shear term must not involve the sheared variable");
  Automorphism a = identity(nvars);
  a.forward_[var] = a.forward_[var] + q;
  a.inverse_[var] = a.inverse_[var] - q;
  return a;
}

Automorphism Automorphism::affine(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b) {
  const std::size_t n = b.size();
  if (A.size() != n) throw std::invalid_argument("affine map: dimension mismatch");
  for (const auto& row : A)
    if (row.size() != n) throw std::invalid_argument("affine map: matrix must be square");
  // columns of A^{-1}
  std::vector<std::vector<Rational>> inv_cols;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> e(n, 0);
    e[j] = 1;
    auto col = solve_exact(A, e);
    if (!col) throw std::invalid_argument("affine map: matrix is singular");
    inv_cols.push_back(*col);
  }
  Automorphism a;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial f = Polynomial::constant(n, b[i]);
    Polynomial g(n);
    for (std::size_t j = 0; j < n; ++j) {
      f += Polynomial::variable(n, j).scale(A[i][j]);
      // (A^{-1}(x - b))_i
      g += (Polynomial::variable(n, j) - Polynomial::constant(n, b[j])).scale(inv_cols[j][i]);
    }
    a.forward_.push_back(f);
    a.inverse_.push_back(g);
  }
  return a;
}

Polynomial Automorphism::apply(const Polynomial& p) const {
  if (p.nvars() != nvars()) throw std::invalid_argument("automorphism: variable count mismatch");
  return p.substitute(inverse_);
}

namespace {

SosPoly apply_sos(const SosPoly& s, const Automorphism& phi) {
  SosPoly out(s.nvars());
  for (const auto& sq : s.squares()) out.add_square(sq.weight, phi.apply(sq.base));
  return out;
}

GeneratorSet apply_set(const GeneratorSet& S, const Automorphism& phi) {
  std::vector<Polynomial> gens;
  for (const auto& g : S.generators()) gens.push_back(phi.apply(g));
  return GeneratorSet(S.nvars(), gens);
}

}  // namespace

TransformedModule substitute_automorphism(const ModuleCert& cert, const GeneratorSet& S, const Automorphism& phi) {
  Verdict v = verify_module(cert, S);
  if (!v) throw std::invalid_argument("input certificate does not verify: " + v.message);
  TransformedModule out{apply_set(S, phi), {phi.apply(cert.target), {}}};
  for (const auto& s : cert.sigmas) out.cert.sigmas.push_back(apply_sos(s, phi));
  Verdict w = verify_module(out.cert, out.S);
  if (!w) throw std::logic_error("transformed certificate fails verification: " + w.message);
  return out;
}

TransformedPreorder substitute_automorphism(const PreorderCert& cert, const GeneratorSet& S, const Automorphism& phi) {
  Verdict v = verify_preorder(cert, S);
  if (!v) throw std::invalid_argument("input certificate does not verify: " + v.message);
  TransformedPreorder out{apply_set(S, phi), {phi.apply(cert.target), {}}};
  for (const auto& [mask, s] : cert.sigmas) out.cert.sigmas.emplace(mask, apply_sos(s, phi));
  Verdict w = verify_preorder(out.cert, out.S);
  if (!w) throw std::logic_error("transformed certificate fails verification: " + w.message);
  return out;
}

// -------------------------------------------------- logarithmic polyhedra

LogPolyhedron parse_log_polyhedron(std::string_view text) {
  LogPolyhedron P;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.substr(0, 5) != "ineq:") throw ParseError("expected 'ineq: a b r'", line_no, 1);
    const auto words = split_words(line.substr(5));
    if (words.size() != 3) throw ParseError("expected three fields after 'ineq:'", line_no, 6);
    std::array<long, 2> alpha{};
    for (int k = 0; k < 2; ++k) {
      try {
        std::size_t used = 0;
        alpha[k] = std::stol(words[k], &used);
        if (used != words[k].size() || alpha[k] < 0) throw std::invalid_argument(words[k]);
      } catch (const std::exception&) {
        throw ParseError("exponent must be a non-negative integer: " + words[k], line_no, 6);
      }
    }
    Rational r;
    try {
      r = parse_rational(words[2]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no, 6);
    }
    if (r <= 0) throw ParseError("bound must be positive", line_no, 6);
    P.alphas.push_back(alpha);
    P.bounds.push_back(r);
  }
  return P;
}

namespace {

long cross(const std::array<long, 2>& a, const std::array<long, 2>& b) { return a[0] * b[1] - a[1] * b[0]; }

std::array<long, 2> primitive(const std::array<long, 2>& a) {
  const long g = std::gcd(a[0], a[1]);
  return {a[0] / g, a[1] / g};
}

}  // namespace

UnimodularResult unimodular_cone_check(const LogPolyhedron& P) {
  if (P.alphas.empty()) throw std::invalid_argument("no exponent vectors");
  for (const auto& a : P.alphas) {
    if (a[0] < 0 || a[1] < 0) throw std::invalid_argument("exponent vectors must be non-negative");
    if (a[0] == 0 && a[1] == 0) throw std::invalid_argument("zero exponent vector");
  }
  auto lo = primitive(P.alphas.front()), hi = lo;
  for (const auto& a : P.alphas) {
    const auto p = primitive(a);
    if (cross(p, lo) > 0) lo = p;
    if (cross(hi, p) > 0) hi = p;
  }
  UnimodularResult r;
  r.determinant = cross(lo, hi);
  if (r.determinant == 0) {
    r.note = "the cone is a single ray; no generating pair exists";
    return r;
  }
  r.witness = std::array<std::array<long, 2>, 2>{lo, hi};
  r.unimodular = r.determinant == 1;
  return r;
}

TripleResult triple_intersection_check(const LogPolyhedron& P) {
  TripleResult result;
  const std::size_t k = P.alphas.size();
  const auto& A = P.alphas;
  const auto& R = P.bounds;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t l = j + 1; l < k; ++l) {
        const long c[3] = {cross(A[j], A[l]), cross(A[l], A[i]), cross(A[i], A[j])};
        bool meet = false;
        if (c[0] != 0 || c[1] != 0 || c[2] != 0) {
          // rank 2: log-linear system is consistent iff prod r^c = 1
          meet = pow(R[i], c[0]) * pow(R[j], c[1]) * pow(R[l], c[2]) == 1;
        } else {
          // all parallel: alpha = m beta, consistent iff r_a^{m_b} = r_b^{m_a}
          const std::size_t idx[3] = {i, j, l};
          auto mult = [&](std::size_t t) {
            const auto p = primitive(A[t]);
            return p[0] != 0 ? A[t][0] / p[0] : A[t][1] / p[1];
          };
          meet = true;
          for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
              if (pow(R[idx[a]], mult(idx[b])) != pow(R[idx[b]], mult(idx[a]))) meet = false;
        }
        if (meet) {
          result.passes = false;
          result.witness = std::array<std::size_t, 3>{i, j, l};
          return result;
        }
      }
  return result;
}

}  // namespace poscert
