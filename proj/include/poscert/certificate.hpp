#pragma once

#include "poscert/polynomial.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace poscert {

enum class CertMode { Module, Preorder };

std::string to_string(CertMode mode);

/// Ordered generators g_1 .. g_s. Index 0 denotes the implicit g_0 = 1.
class GeneratorSet {
 public:
  GeneratorSet() = default;
  /// Throws std::invalid_argument if a flag is set but some generator
  /// violates it, or variable counts disagree.
  GeneratorSet(std::size_t nvars, std::vector<Polynomial> generators, bool homogeneous = false,
               bool even_degrees = false);

  std::size_t nvars() const { return nvars_; }
  /// Number of generators s (excluding g_0).
  std::size_t size() const { return generators_.size(); }
  const std::vector<Polynomial>& generators() const { return generators_; }
  /// g_index for 0 <= index <= s; g_0 = 1.
  Polynomial generator(std::size_t index) const;
  bool homogeneous() const { return homogeneous_; }
  bool even_degrees() const { return even_degrees_; }

  /// g^alpha where bit i of `mask` selects g_{i+1}.
  Polynomial product(std::uint64_t mask) const;

 private:
  std::size_t nvars_ = 0;
  std::vector<Polynomial> generators_;
  bool homogeneous_ = false;
  bool even_degrees_ = false;
};

struct WeightedSquare {
  Rational weight;
  Polynomial base;
};

/// Weighted sum of squares sum w_i * b_i^2 with every w_i > 0.
class SosPoly {
 public:
  SosPoly() = default;
  explicit SosPoly(std::size_t nvars) : nvars_(nvars) {}

  /// c >= 0 as the square c * 1^2 (empty for c = 0).
  static SosPoly constant(std::size_t nvars, const Rational& c);
  static SosPoly square(const Polynomial& base, const Rational& weight = 1);
  /// sum_i x_i^2.
  static SosPoly sum_of_variable_squares(std::size_t nvars);
  /// Polynomial whose terms are all squared monomials with positive
  /// coefficients, read as a sum of monomial squares. Throws otherwise.
  static SosPoly from_square_monomials(const Polynomial& p);

  std::size_t nvars() const { return nvars_; }
  const std::vector<WeightedSquare>& squares() const { return squares_; }
  bool empty() const { return squares_.empty(); }
  std::size_t size() const { return squares_.size(); }

  /// Appends w * base^2. Zero weights or zero bases are dropped; negative
  /// weights throw.
  void add_square(const Rational& weight, const Polynomial& base);
  SosPoly& operator+=(const SosPoly& other);
  friend SosPoly operator+(SosPoly a, const SosPoly& b) { return a += b; }
  /// Multiplies every weight by c > 0 (c = 0 gives the empty SOS).
  SosPoly scale(const Rational& c) const;
  /// Pairwise products of squares.
  SosPoly times(const SosPoly& other) const;
  /// Multiplies every base by q, i.e. the SOS times q^2.
  SosPoly times_square(const Polynomial& q) const;

  Polynomial expand() const;

  /// Bases scaled to leading coefficient 1, sorted, equal bases merged.
  SosPoly canonical() const;
  /// True when every base is a single monomial.
  bool monomial_squares_only() const;

  bool operator==(const SosPoly& other) const;

 private:
  std::size_t nvars_ = 0;
  std::vector<WeightedSquare> squares_;
};

/// target = sum_{i=0}^{s} sigma_i g_i.
struct ModuleCert {
  Polynomial target;
  std::vector<SosPoly> sigmas;
};

/// target = sum_alpha sigma_alpha g^alpha, alpha encoded as a bit mask.
struct PreorderCert {
  Polynomial target;
  std::map<std::uint64_t, SosPoly> sigmas;
};

enum class VerdictStatus { Accepted, IdentityMismatch, HomogeneityViolation };

struct Verdict {
  VerdictStatus status = VerdictStatus::Accepted;
  std::string message;
  /// First (largest in graded-lex order) monomial where target and expansion disagree.
  std::optional<Monomial> mismatch;
  Rational target_coefficient;
  Rational expansion_coefficient;

  bool accepted() const { return status == VerdictStatus::Accepted; }
  explicit operator bool() const { return accepted(); }
};

/// Exact structural comparison reporting the highest differing monomial.
Verdict compare_identity(const Polynomial& target, const Polynomial& expansion);

/// Exact check of the module identity. Arity or variable-count mismatches
/// throw std::invalid_argument. In homogeneous mode (S.homogeneous()) every
/// square base must be homogeneous and every summand w b^2 g_i must share the
/// degree of the first nonzero one.
Verdict verify_module(const ModuleCert& cert, const GeneratorSet& S);
Verdict verify_preorder(const PreorderCert& cert, const GeneratorSet& S);

/// sum_i sigma_i g_i.
Polynomial expand(const ModuleCert& cert, const GeneratorSet& S);
Polynomial expand(const PreorderCert& cert, const GeneratorSet& S);

/// Re-indexes a module certificate as a preorder certificate.
PreorderCert to_preorder(const ModuleCert& cert);
/// Fails (std::invalid_argument) if some sigma_alpha with |alpha| >= 2 is nonempty.
ModuleCert to_module(const PreorderCert& cert, std::size_t ngenerators);

/// Bit string `b_1 b_2 ... b_s` for a mask (b_i = bit i-1), and back.
std::string mask_to_bits(std::uint64_t mask, std::size_t ngenerators);
std::uint64_t bits_to_mask(const std::string& bits);

}  // namespace poscert
