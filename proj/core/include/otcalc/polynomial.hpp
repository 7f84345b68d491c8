#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace otcalc {

using Integer = mpz_class;
using Rational = mpq_class;

/// Univariate polynomial with rational coefficients, stored in ascending
/// powers with no trailing zeros. The zero polynomial has no coefficients and
/// degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> ascending);
  static Polynomial from_integers(std::span<const Integer> ascending);
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, std::size_t power);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  /// Coefficient of x^i, zero beyond the degree.
  Rational coefficient(std::size_t i) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational evaluate(const Rational& x) const;
  Polynomial derivative() const;
  Polynomial monic() const;
  /// p(x + shift), exact Taylor shift.
  Polynomial shifted(const Rational& shift) const;
  bool has_integer_coefficients() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(std::string_view var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder of Euclidean division; divisor must be nonzero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial operator%(const Polynomial& a, const Polynomial& b);
/// Monic gcd (zero if both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic.
struct ExtendedGcd {
  Polynomial g, u, v;
};
ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b);

/// Res(a, b) = lc(a)^deg(b) * prod over roots r of a of b(r).
Rational resultant(const Polynomial& a, const Polynomial& b);

/// Sturm sequence f, f', -rem(...), ...
std::vector<Polynomial> sturm_sequence(const Polynomial& f);
/// Number of distinct real roots of a squarefree polynomial.
int count_real_roots(const Polynomial& f);
/// Number of distinct real roots in the half-open interval (lo, hi].
int count_real_roots(const std::vector<Polynomial>& sturm, const Rational& lo, const Rational& hi);

/// Irreducibility over Q for an integer polynomial of degree >= 1. Uses
/// factor-degree patterns modulo small primes and falls back to Kronecker's
/// method when the patterns are inconclusive.
bool is_irreducible_over_q(const Polynomial& f);

/// Characteristic polynomial det(x I - M) of a square rational matrix
/// (Faddeev-LeVerrier).
using RationalMatrix = std::vector<std::vector<Rational>>;
Polynomial characteristic_polynomial(const RationalMatrix& m);
Rational determinant(RationalMatrix m);

}  // namespace otcalc
