#pragma once

// Exact arithmetic in K = Q[theta]/(f), certified complex embeddings, norms,
// unit checks and the logarithmic embedding of totally positive units.

#include "otcalc/interval.hpp"
#include "otcalc/polynomial.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace otcalc {

inline constexpr unsigned kDefaultPrecisionBits = 128;
inline constexpr unsigned kDefaultPrecisionCap = 4096;

enum class DegreeRequirement {
  ot,   // degree >= 3, needed for s > 0 and t > 0
  any,
};

/// A monic irreducible integer polynomial defining K, plus an optional
/// integral basis (rows are basis elements in power-basis coordinates).
/// Without one the integral model is Z[theta].
struct FieldSpec {
  std::vector<Integer> coefficients;  // ascending powers, leading 1
  std::optional<RationalMatrix> integral_basis;

  int degree() const noexcept { return static_cast<int>(coefficients.size()) - 1; }
  Polynomial polynomial() const { return Polynomial::from_integers(coefficients); }
  std::string to_string() const { return polynomial().to_string(); }
};

/// Validates and returns the field. Errors: NotMonic, Reducible, DegreeTooSmall.
FieldSpec parse_field(std::span<const Integer> coefficients, DegreeRequirement requirement = DegreeRequirement::ot);
FieldSpec parse_field(std::initializer_list<long> coefficients, DegreeRequirement requirement = DegreeRequirement::ot);

/// Installs an integral basis after checking it is square and invertible and
/// contains 1 in its Z-span. Errors: ConfigError.
void set_integral_basis(FieldSpec& field, RationalMatrix basis);

/// Element of K in power-basis coordinates 1, theta, ..., theta^{n-1}.
struct AlgebraicNumber {
  std::vector<Rational> coords;

  friend bool operator==(const AlgebraicNumber&, const AlgebraicNumber&) = default;
  std::string to_string() const;
};

AlgebraicNumber make_number(const FieldSpec& field, std::span<const Rational> coords);
AlgebraicNumber make_number(const FieldSpec& field, std::initializer_list<long> coords);
AlgebraicNumber rational_number(const FieldSpec& field, const Rational& c);
AlgebraicNumber theta(const FieldSpec& field);

enum class AlgebraOp { add, sub, mul, pow, inv };

AlgebraicNumber add(const FieldSpec& field, const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber sub(const FieldSpec& field, const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber mul(const FieldSpec& field, const AlgebraicNumber& a, const AlgebraicNumber& b);
/// Inverse by extended gcd with f. Errors: DivisionByZero.
AlgebraicNumber inv(const FieldSpec& field, const AlgebraicNumber& a);
/// a^e for any integer e (negative exponents go through inv).
AlgebraicNumber power(const FieldSpec& field, const AlgebraicNumber& a, long e);
/// Dispatch form. For pow, b must be a rational integer (the exponent); for inv, b is ignored.
AlgebraicNumber algebra_op(const FieldSpec& field, const AlgebraicNumber& a, const AlgebraicNumber& b, AlgebraOp op);

/// Field norm as Res(f, a), so norm(c) = c^n for rational c.
Rational norm(const FieldSpec& field, const AlgebraicNumber& a);

/// Matrix of x -> a x on power-basis column vectors: column j holds a * theta^j.
RationalMatrix multiplication_matrix(const FieldSpec& field, const AlgebraicNumber& a);
/// Same map in the integral model's coordinates (the power basis unless an
/// integral basis is installed).
RationalMatrix integral_multiplication_matrix(const FieldSpec& field, const AlgebraicNumber& a);
/// Coordinates in the integral model; nullopt when not all integers.
std::optional<std::vector<Integer>> integral_coordinates(const FieldSpec& field, const AlgebraicNumber& a);

/// Certified roots of f. Real roots ascending; complex roots are the
/// representatives with positive imaginary part ordered by real then imaginary
/// part, so sigma_{s+k} is complex_roots[k] and sigma_{s+t+k} its conjugate.
struct EmbeddingSet {
  FieldSpec field;
  int s = 0;
  int t = 0;
  std::vector<Interval> real_roots;
  std::vector<ComplexInterval> complex_roots;
  unsigned precision_bits = kDefaultPrecisionBits;
  unsigned precision_cap = kDefaultPrecisionCap;

  /// Errors: SignatureUnsupported when s = 0 or t = 0.
  void require_ot_signature() const;
  /// The same embeddings recomputed at twice the precision. Errors:
  /// PrecisionExhausted once the cap is reached.
  EmbeddingSet refined() const;
  bool can_refine() const noexcept { return precision_bits * 2 <= precision_cap; }
};

EmbeddingSet compute_embeddings(const FieldSpec& field, unsigned precision_bits = kDefaultPrecisionBits,
                                unsigned precision_cap = kDefaultPrecisionCap);

/// sigma_i(a) for the real embedding i (0-based).
Interval real_embedding(const EmbeddingSet& emb, const AlgebraicNumber& a, int i);
/// sigma_{s+k}(a) (0-based k), the representative with positive imaginary part.
ComplexInterval complex_embedding(const EmbeddingSet& emb, const AlgebraicNumber& a, int k);

enum class UnitStatus { unit_totally_positive, unit_not_totally_positive, not_unit };
std::string_view to_string(UnitStatus status) noexcept;

/// Exact unit test (integral with |norm| = 1) plus certified signs of the real
/// embeddings, refining precision as needed. Errors: NotIntegral,
/// PrecisionExhausted.
UnitStatus check_unit(const EmbeddingSet& emb, const AlgebraicNumber& a);

/// l(a) = (log|sigma_1(a)|, ..., log|sigma_s(a)|, 2 log|sigma_{s+1}(a)|, ...).
struct LogVector {
  std::vector<Interval> entries;

  Interval sum() const;
  bool sum_contains_zero() const { return sum().contains_zero(); }
};

/// Errors: NotUnit, PrecisionExhausted.
LogVector log_vector(const EmbeddingSet& emb, const AlgebraicNumber& a);

/// All integral elements with coordinates bounded by `height` whose norm is
/// +-1, one representative per sign class (first nonzero coordinate
/// positive), in lexicographic enumeration order.
std::vector<AlgebraicNumber> search_units(const EmbeddingSet& emb, int height);

}  // namespace otcalc
