#pragma once

// Scalars for the invariant complex and rank computations over them.

#include "otcalc/polynomial.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace otcalc {

/// Element of Q(i).
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r) : re(r), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  std::string to_string() const;

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.re == b.re && a.im == b.im; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
  GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
};

using ExactScalar = GaussianRational;
using NumericScalar = std::complex<double>;

/// Sparse vector: (index, value) pairs with strictly increasing indices and
/// nonzero values.
template <class S>
using SparseVector = std::vector<std::pair<std::uint32_t, S>>;

/// Exact rank of the span of the given vectors.
std::size_t exact_rank(const std::vector<SparseVector<ExactScalar>>& vectors);

struct NumericRankOptions {
  int zero_log2 = -40;       // relative threshold below which a singular value is zero
  int ambiguous_log2 = -20;  // (zero, ambiguous) triggers escalation
  double reference = 1.0;    // thresholds are relative to max(largest singular value, reference)
};

/// Rank by SVD in double, escalating to long double when a singular value
/// falls in the ambiguity zone. Errors: PrecisionExhausted.
std::size_t numeric_rank(const std::vector<SparseVector<NumericScalar>>& vectors, const NumericRankOptions& options = {});

}  // namespace otcalc
