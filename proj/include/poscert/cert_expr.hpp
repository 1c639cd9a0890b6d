#pragma once

#include "poscert/certificate.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace poscert {

/// Closure-rule derivation tree. Every node caches the polynomial it denotes;
/// flatten() turns any tree into a flat certificate whose expansion equals
/// that polynomial. Nodes are immutable and shared.
class CertExpr {
 public:
  enum class Kind {
    Generator,    // g_i, i >= 1
    Sos,          // explicit sum of squares
    Supplied,     // a verified flat certificate
    Sum,
    SquareScale,  // sos * child
    Product,      // child_0 * child_1
    ArchMonomial,
    ArchSquare,
    Descent,
  };

  static CertExpr generator(const GeneratorSet& S, std::size_t index);
  static CertExpr sos(SosPoly sigma);
  static CertExpr one(std::size_t nvars);
  /// Throws std::invalid_argument if the certificate does not verify.
  static CertExpr supplied(const ModuleCert& cert, const GeneratorSet& S);
  static CertExpr supplied(const PreorderCert& cert, const GeneratorSet& S);
  static CertExpr sum(const std::vector<CertExpr>& terms);
  static CertExpr square_scale(const SosPoly& factor, const CertExpr& child);
  /// Positive scalar multiple.
  static CertExpr scaled(const Rational& c, const CertExpr& child);
  /// Wraps `expansion` as a rule node; checks it denotes `claimed`.
  static CertExpr rule(Kind kind, const Polynomial& claimed, const CertExpr& expansion, std::string note);

  Kind kind() const { return node_->kind; }
  const Polynomial& polynomial() const { return node_->poly; }
  std::size_t nvars() const { return node_->poly.nvars(); }
  const std::vector<CertExpr>& children() const { return node_->children; }
  const std::string& note() const { return node_->note; }
  /// True if some Product node is reachable.
  bool has_products() const { return node_->has_products; }
  std::size_t node_count() const;
  /// Generator index for Generator nodes.
  std::size_t index() const { return node_->index; }
  /// SOS payload for Sos and SquareScale nodes.
  const SosPoly& sos_payload() const { return node_->sos; }
  const PreorderCert& supplied_cert() const { return node_->supplied; }
  /// Identity of the shared node.
  const void* id() const { return node_.get(); }

  friend CertExpr operator+(const CertExpr& a, const CertExpr& b) { return sum({a, b}); }

 private:
  friend CertExpr product_rule(const CertExpr& a, const CertExpr& b, const GeneratorSet& S, CertMode mode);

  struct Node {
    Kind kind;
    Polynomial poly;
    std::vector<CertExpr> children;
    std::size_t index = 0;
    SosPoly sos;
    PreorderCert supplied;
    std::string note;
    bool has_products = false;
  };
  explicit CertExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// a * b. Always valid in preorder mode; in module mode only for principal
/// generator sets (s <= 1), where g^2 * SOS is absorbed into sigma_0.
/// Throws std::invalid_argument otherwise.
CertExpr product_rule(const CertExpr& a, const CertExpr& b, const GeneratorSet& S, CertMode mode);

/// Flat preorder certificate for the polynomial denoted by `e`.
PreorderCert flatten_preorder(const CertExpr& e, const GeneratorSet& S);
/// Flat module certificate; throws std::invalid_argument if the tree needs
/// generator products.
ModuleCert flatten_module(const CertExpr& e, const GeneratorSet& S);

/// Membership of g^k in the module, given a derivation of g itself (needed
/// only for odd k).
CertExpr power_of(const Polynomial& g, unsigned k, const std::optional<CertExpr>& g_cert);

// ----------------------------------------------------------- rewrite rules

/// g^{k+1}(gN + sign*m) from the premise g^k(g^2 N - m^2), via
///   g^{k+1}(gN +- m) = 1/2 (g^{k+2}(N-1) + g^k(g^2N - m^2) + g^k(m +- g)^2).
/// Requires N >= 1. `g_cert` is needed when k is odd.
CertExpr arch_monomial_rule(const Polynomial& g, const Monomial& m, const Rational& N, unsigned k, int sign,
                            const CertExpr& premise, const std::optional<CertExpr>& g_cert = std::nullopt);

/// g^{k+l}(g^{2l} N^2 - a^2) from premises plus = g^{k+l}N + g^k a and
/// minus = g^{k+l}N - g^k a, via
///   g^{k+l}(g^{2l}N^2 - a^2)
///     = 1/(2N) ((g^l N + a)^2 minus + (g^l N - a)^2 plus).
CertExpr arch_square_rule(const Polynomial& g, const Polynomial& a, const Rational& N, unsigned k, unsigned l,
                          const CertExpr& plus, const CertExpr& minus);

/// Data for one archimedean descent step.
struct DescentData {
  Polynomial f;
  Polynomial g;
  Polynomial t;
  Rational kappa;  // > 0
  unsigned k0 = 0;
  unsigned l = 0;  // deg f = l deg g
  unsigned m = 0;  // deg t = m deg g
  CertExpr bound;     // g^{k0+m} kappa - g^{k0} t
  CertExpr relation;  // f t - g^{l+m}
  CertExpr t_cert;    // t
  std::optional<CertExpr> g_cert;  // g; needed whenever an odd power of g appears
};

struct DescentStepResult {
  CertExpr expr;       // g^{k_next}(g^l r_next + f)
  Rational r_next;     // r - 1/kappa
  unsigned k_next = 0; // k_i + k0 + m
};

/// One step: from current = g^{k_i}(g^l r + f) (in the form
/// g^{k_i + l} r + g^{k_i} f), derives g^{k_i+k0+m}(g^l (r - 1/kappa) + f) by
///   kappa g^{k_i+k0+m}(g^l(r - 1/kappa) + f)
///     = (g^{k0+m}kappa - g^{k0}t)(g^{k_i+l}r + g^{k_i}f)
///       + g^{k_i+k0}(ft - g^{l+m}) + g^{k_i+k0+l} r t.
/// Requires r >= 0; throws std::invalid_argument on premise shape mismatch.
DescentStepResult descent_step(const DescentData& data, unsigned k_i, const Rational& r, const CertExpr& current,
                               const GeneratorSet& S, CertMode mode);

struct DescentResult {
  CertExpr expr;       // g^exponent f
  unsigned exponent = 0;
  std::size_t steps = 0;
};

/// Iterates descent_step until r < 0, then drops the negative g-power term:
/// g^K f = g^K(g^l r + f) + (-r) g^{K+l}. Throws ResourceLimit beyond
/// `max_steps`.
DescentResult descent_loop(const DescentData& data, unsigned k_1, const Rational& r_1, const CertExpr& start,
                           const GeneratorSet& S, CertMode mode, std::size_t max_steps = 10000);

}  // namespace poscert
