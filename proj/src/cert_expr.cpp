#include "poscert/cert_expr.hpp"

#include "poscert/errors.hpp"

#include <map>
#include <stdexcept>
#include <unordered_map>

namespace poscert {

namespace {

using Form = std::map<std::uint64_t, SosPoly>;

void add_to(Form& form, std::uint64_t mask, const SosPoly& sigma) {
  if (sigma.empty()) return;
  auto [it, inserted] = form.try_emplace(mask, sigma);
  if (!inserted) it->second += sigma;
}

Form canonical(Form form) {
  Form out;
  for (auto& [mask, sigma] : form) {
    SosPoly c = sigma.canonical();
    if (!c.empty()) out.emplace(mask, std::move(c));
  }
  return out;
}

}  // namespace

CertExpr CertExpr::generator(const GeneratorSet& S, std::size_t index) {
  if (index == 0) return one(S.nvars());
  if (index > S.size()) throw std::invalid_argument("generator index out of range");
  Node n{Kind::Generator, S.generator(index), {}, index, {}, {}, "g" + std::to_string(index), false};
  return CertExpr(std::make_shared<const Node>(std::move(n)));
}

CertExpr CertExpr::sos(SosPoly sigma) {
  Polynomial p = sigma.expand();
  Node n{Kind::Sos, std::move(p), {}, 0, std::move(sigma), {}, "sos", false};
  return CertExpr(std::make_shared<const Node>(std::move(n)));
}

CertExpr CertExpr::one(std::size_t nvars) { return sos(SosPoly::constant(nvars, 1)); }

CertExpr CertExpr::supplied(const ModuleCert& cert, const GeneratorSet& S) {
  Verdict v = verify_module(cert, S);
  if (!v) throw std::invalid_argument("supplied module certificate does not verify: " + v.message);
  return supplied(to_preorder(cert), S);
}

CertExpr CertExpr::supplied(const PreorderCert& cert, const GeneratorSet& S) {
  Verdict v = verify_preorder(cert, S);
  if (!v) throw std::invalid_argument("supplied preorder certificate does not verify: " + v.message);
  Node n{Kind::Supplied, cert.target, {}, 0, {}, cert, "supplied", false};
  return CertExpr(std::make_shared<const Node>(std::move(n)));
}

CertExpr CertExpr::sum(const std::vector<CertExpr>& terms) {
  if (terms.empty()) throw std::invalid_argument("empty sum of derivations");
  Polynomial p(terms.front().nvars());
  bool products = false;
  for (const auto& t : terms) {
    p += t.polynomial();
    products = products || t.has_products();
  }
  Node n{Kind::Sum, std::move(p), terms, 0, {}, {}, "sum", products};
  return CertExpr(std::make_shared<const Node>(std::move(n)));
}

CertExpr CertExpr::square_scale(const SosPoly& factor, const CertExpr& child) {
  if (factor.nvars() != child.nvars()) throw std::invalid_argument("square factor variable count mismatch");
  Polynomial p = factor.expand() * child.polynomial();
  Node n{Kind::SquareScale, std::move(p), {child}, 0, factor, {}, "square-scale", child.has_products()};
  return CertExpr(std::make_shared<const Node>(std::move(n)));
}

CertExpr CertExpr::scaled(const Rational& c, const CertExpr& child) {
  if (c <= 0) throw std::invalid_argument("derivations can only be scaled by positive numbers");
  return square_scale(SosPoly::constant(child.nvars(), c), child);
}

CertExpr CertExpr::rule(Kind kind, const Polynomial& claimed, const CertExpr& expansion, std::string note) {
  if (expansion.polynomial() != claimed)
    throw std::logic_error("rule '" + note + "' expansion does not match its claimed polynomial");
  Node n{kind, claimed, {expansion}, 0, {}, {}, std::move(note), expansion.has_products()};
  return CertExpr(std::make_shared<const Node>(std::move(n)));
}

std::size_t CertExpr::node_count() const {
  std::size_t count = 1;
  for (const auto& c : node_->children) count += c.node_count();
  return count;
}

CertExpr product_rule(const CertExpr& a, const CertExpr& b, const GeneratorSet& S, CertMode mode) {
  if (a.nvars() != b.nvars() || a.nvars() != S.nvars())
    throw std::invalid_argument("product operands have mismatched variable counts");
  if (mode == CertMode::Module && S.size() > 1)
    throw std::invalid_argument(
        "quadratic modules with more than one generator are not closed under products; use preorder mode");
  Polynomial p = a.polynomial() * b.polynomial();
  CertExpr::Node n{CertExpr::Kind::Product, std::move(p), {a, b}, 0, {}, {}, "product", true};
  return CertExpr(std::make_shared<const CertExpr::Node>(std::move(n)));
}

namespace {

class Flattener {
 public:
  explicit Flattener(const GeneratorSet& S) : S_(S) {}

  const Form& run(const CertExpr& e) {
    const void* key = e.id();
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    Form form = compute(e);
    return cache_.emplace(key, canonical(std::move(form))).first->second;
  }

  Form compute(const CertExpr& e);

  const GeneratorSet& S_;
  std::unordered_map<const void*, Form> cache_;
};

}  // namespace

PreorderCert flatten_preorder(const CertExpr& e, const GeneratorSet& S) {
  if (e.nvars() != S.nvars()) throw std::invalid_argument("derivation variable count does not match generator set");
  Flattener flattener(S);
  return PreorderCert{e.polynomial(), flattener.run(e)};
}

Form Flattener::compute(const CertExpr& e) {
  using Kind = CertExpr::Kind;
  Form out;
  switch (e.kind()) {
    case Kind::Generator: {
      if (e.index() > S_.size() || S_.generator(e.index()) != e.polynomial())
        throw std::invalid_argument("derivation refers to generator g" + std::to_string(e.index()) +
                                    " which differs in this generator set");
      add_to(out, std::uint64_t{1} << (e.index() - 1), SosPoly::constant(S_.nvars(), 1));
      break;
    }
    case Kind::Sos:
      add_to(out, 0, e.sos_payload());
      break;
    case Kind::Supplied: {
      Verdict v = verify_preorder(e.supplied_cert(), S_);
      if (!v) throw std::invalid_argument("supplied certificate does not verify in this generator set");
      for (const auto& [mask, sigma] : e.supplied_cert().sigmas) add_to(out, mask, sigma);
      break;
    }
    case Kind::Sum:
      for (const auto& child : e.children())
        for (const auto& [mask, sigma] : run(child)) add_to(out, mask, sigma);
      break;
    case Kind::SquareScale:
      for (const auto& [mask, sigma] : run(e.children()[0])) add_to(out, mask, e.sos_payload().times(sigma));
      break;
    case Kind::Product: {
      const Form left = run(e.children()[0]);
      const Form& right = run(e.children()[1]);
      for (const auto& [ma, sa] : left)
        for (const auto& [mb, sb] : right) {
          const std::uint64_t shared = ma & mb;
          SosPoly prod = sa.times(sb);
          if (shared != 0) prod = prod.times_square(S_.product(shared));
          add_to(out, ma ^ mb, prod);
        }
      break;
    }
    case Kind::ArchMonomial:
    case Kind::ArchSquare:
    case Kind::Descent:
      out = run(e.children()[0]);
      break;
  }
  return out;
}

ModuleCert flatten_module(const CertExpr& e, const GeneratorSet& S) {
  PreorderCert flat = flatten_preorder(e, S);
  try {
    return to_module(flat, S.size());
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("derivation uses products of distinct generators; it only flattens in preorder mode");
  }
}

CertExpr power_of(const Polynomial& g, unsigned k, const std::optional<CertExpr>& g_cert) {
  if (k % 2 == 0) return CertExpr::sos(SosPoly::square(g.pow(k / 2)));
  if (!g_cert) throw std::invalid_argument("an odd power of g needs a derivation of g itself");
  if (g_cert->polynomial() != g) throw std::invalid_argument("derivation of g denotes a different polynomial");
  if (k == 1) return *g_cert;
  return CertExpr::square_scale(SosPoly::square(g.pow((k - 1) / 2)), *g_cert);
}

namespace {

/// g^j * X as a derivation.
CertExpr times_power(const Polynomial& g, unsigned j, const CertExpr& x, const std::optional<CertExpr>& g_cert,
                     const GeneratorSet& S, CertMode mode) {
  if (j % 2 == 0) return j == 0 ? x : CertExpr::square_scale(SosPoly::square(g.pow(j / 2)), x);
  return product_rule(power_of(g, j, g_cert), x, S, mode);
}

void require_shape(const CertExpr& e, const Polynomial& expected, const char* what) {
  if (e.polynomial() != expected)
    throw std::invalid_argument(std::string("premise shape mismatch: ") + what + " does not denote the required polynomial");
}

}  // namespace

CertExpr arch_monomial_rule(const Polynomial& g, const Monomial& m, const Rational& N, unsigned k, int sign,
                            const CertExpr& premise, const std::optional<CertExpr>& g_cert) {
  if (N < 1) throw std::invalid_argument("archimedean monomial rule needs N >= 1");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  const std::size_t n = g.nvars();
  const Polynomial mono = Polynomial::term(m, 1);
  const Polynomial gk = g.pow(k);
  require_shape(premise, gk * (g * g * Polynomial::constant(n, N) - mono * mono), "premise g^k(g^2 N - m^2)");

  std::vector<CertExpr> terms;
  if (N != 1) terms.push_back(CertExpr::scaled((N - 1) / 2, power_of(g, k + 2, g_cert)));
  terms.push_back(CertExpr::scaled(Rational(1, 2), premise));
  const Polynomial shifted = mono + g.scale(sign);
  terms.push_back(CertExpr::square_scale(SosPoly::square(shifted, Rational(1, 2)), power_of(g, k, g_cert)));

  const Polynomial claimed = g.pow(k + 1) * (g.scale(N) + mono.scale(sign));
  return CertExpr::rule(CertExpr::Kind::ArchMonomial, claimed, CertExpr::sum(terms),
                        sign > 0 ? "arch-monomial(+)" : "arch-monomial(-)");
}

CertExpr arch_square_rule(const Polynomial& g, const Polynomial& a, const Rational& N, unsigned k, unsigned l,
                          const CertExpr& plus, const CertExpr& minus) {
  if (N <= 0) throw std::invalid_argument("archimedean square rule needs N > 0");
  require_same_nvars(g, a);
  const Polynomial gl_n = g.pow(l).scale(N);
  const Polynomial gkl_n = g.pow(k + l).scale(N);
  const Polynomial gk_a = g.pow(k) * a;
  require_shape(plus, gkl_n + gk_a, "plus premise g^{k+l}N + g^k a");
  require_shape(minus, gkl_n - gk_a, "minus premise g^{k+l}N - g^k a");

  const Rational w = 1 / (2 * N);
  CertExpr expansion = CertExpr::sum({CertExpr::square_scale(SosPoly::square(gl_n + a, w), minus),
                                      CertExpr::square_scale(SosPoly::square(gl_n - a, w), plus)});
  const Polynomial g2l_n2 = g.pow(2 * l).scale(N * N);
  const Polynomial claimed = g.pow(k + l) * (g2l_n2 - a * a);
  return CertExpr::rule(CertExpr::Kind::ArchSquare, claimed, expansion, "arch-square");
}

DescentStepResult descent_step(const DescentData& d, unsigned k_i, const Rational& r, const CertExpr& current,
                               const GeneratorSet& S, CertMode mode) {
  if (d.kappa <= 0) throw std::invalid_argument("descent needs kappa > 0");
  if (r < 0) throw std::invalid_argument("descent step needs r >= 0");
  const Polynomial& f = d.f;
  const Polynomial& g = d.g;
  const Polynomial& t = d.t;
  require_same_nvars(f, g);
  require_same_nvars(f, t);
  require_shape(d.bound, g.pow(d.k0 + d.m).scale(d.kappa) - g.pow(d.k0) * t, "bound premise g^{k0+m}kappa - g^{k0}t");
  require_shape(d.relation, f * t - g.pow(d.l + d.m), "relation premise ft - g^{l+m}");
  require_shape(d.t_cert, t, "t derivation");
  require_shape(current, g.pow(k_i + d.l).scale(r) + g.pow(k_i) * f, "current g^{k_i+l} r + g^{k_i} f");

  std::vector<CertExpr> terms;
  terms.push_back(product_rule(d.bound, current, S, mode));
  terms.push_back(times_power(g, k_i + d.k0, d.relation, d.g_cert, S, mode));
  if (r > 0) terms.push_back(CertExpr::scaled(r, times_power(g, k_i + d.k0 + d.l, d.t_cert, d.g_cert, S, mode)));
  CertExpr expansion = CertExpr::scaled(1 / d.kappa, CertExpr::sum(terms));

  DescentStepResult out{expansion, r - 1 / d.kappa, k_i + d.k0 + d.m};
  const Polynomial claimed = g.pow(out.k_next) * (g.pow(d.l).scale(out.r_next) + f);
  out.expr = CertExpr::rule(CertExpr::Kind::Descent, claimed, expansion, "descent r=" + to_string(out.r_next));
  return out;
}

DescentResult descent_loop(const DescentData& d, unsigned k_1, const Rational& r_1, const CertExpr& start,
                           const GeneratorSet& S, CertMode mode, std::size_t max_steps) {
  CertExpr current = start;
  unsigned k = k_1;
  Rational r = r_1;
  std::size_t steps = 0;
  while (r >= 0) {
    if (steps == max_steps) throw ResourceLimit("descent exceeded " + std::to_string(max_steps) + " steps");
    DescentStepResult step = descent_step(d, k, r, current, S, mode);
    current = step.expr;
    k = step.k_next;
    r = step.r_next;
    ++steps;
  }
  // g^k f = g^k(g^l r + f) + (-r) g^{k+l} with -r > 0.
  CertExpr tail = CertExpr::scaled(-r, power_of(d.g, k + d.l, d.g_cert));
  if (tail.has_products() && mode == CertMode::Module && S.size() > 1)
    throw std::invalid_argument("descent tail needs generator products");
  CertExpr total = current + tail;
  const Polynomial claimed = d.g.pow(k) * d.f;
  return {CertExpr::rule(CertExpr::Kind::Descent, claimed, total, "descent-finish"), k, steps};
}

}  // namespace poscert
