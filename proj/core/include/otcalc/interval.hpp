#pragma once

#include "otcalc/polynomial.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <string>

namespace otcalc {

/// Closed real interval [lower, upper] with MPFR endpoints. Every operation
/// rounds the lower endpoint down and the upper endpoint up, so the result
/// always encloses the exact value. Results carry the larger operand precision.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);
  Interval(long value, mpfr_prec_t prec);
  Interval(const Rational& value, mpfr_prec_t prec);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  /// [lo, hi] from rational endpoints (outward rounded).
  static Interval from_bounds(const Rational& lo, const Rational& hi, mpfr_prec_t prec);
  static Interval hull(const Interval& a, const Interval& b);
  static Interval pi(mpfr_prec_t prec);

  mpfr_prec_t precision() const noexcept { return prec_; }
  const __mpfr_struct* lower_ptr() const noexcept { return lo_; }
  const __mpfr_struct* upper_ptr() const noexcept { return hi_; }
  double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  Rational lower_rational() const;
  Rational upper_rational() const;
  /// Exact rational midpoint of the endpoints.
  Rational midpoint_rational() const;
  double midpoint() const;
  /// Upper bound on the width.
  Interval width() const;
  /// log2 of the width, rounded up; -infinity reported as a very negative number.
  long width_log2() const;
  /// Upper bound on |x| over the interval.
  double magnitude() const { return std::max(std::abs(lower()), std::abs(upper())); }
  Interval magnitude_interval() const;
  /// Binary exponent e with |x| < 2^e over the interval (very negative for [0,0]).
  long magnitude_log2() const;

  bool contains(const Rational& x) const;
  bool contains_zero() const;
  bool is_positive() const { return mpfr_sgn(lo_) > 0; }
  bool is_negative() const { return mpfr_sgn(hi_) < 0; }
  bool excludes_zero() const { return is_positive() || is_negative(); }
  bool overlaps(const Interval& other) const;
  bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws PrecisionExhausted when the divisor contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

  friend Interval square(const Interval& a);
  friend Interval sqrt(const Interval& a);
  friend Interval exp(const Interval& a);
  /// Throws PrecisionExhausted unless the argument is strictly positive.
  friend Interval log(const Interval& a);
  friend Interval abs(const Interval& a);
  /// Principal argument of the box x + iy; throws PrecisionExhausted when the
  /// box touches the branch cut (x <= 0, y = 0).
  friend Interval atan2(const Interval& y, const Interval& x);

  std::string to_string(int digits = 20) const;

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

std::ostream& operator<<(std::ostream& os, const Interval& x);

/// Rectangular complex interval.
struct ComplexInterval {
  Interval re;
  Interval im;

  explicit ComplexInterval(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
  static ComplexInterval one(mpfr_prec_t prec) { return {Interval(1L, prec), Interval(0L, prec)}; }

  mpfr_prec_t precision() const noexcept { return std::max(re.precision(), im.precision()); }
  ComplexInterval conj() const { return {re, -im}; }
  /// re^2 + im^2
  Interval norm2() const;
  Interval abs() const;
  bool contains(const Rational& real, const Rational& imag) const {
    return re.contains(real) && im.contains(imag);
  }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  /// Upper bound of |z - (real + i imag)| over the box.
  double max_distance_to(const Rational& real, const Rational& imag) const;
  /// Point box at the midpoint.
  ComplexInterval midpoint() const;

  friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
  friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b);
  friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
  friend ComplexInterval operator*(const Interval& a, const ComplexInterval& b);
  friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b);
};

std::ostream& operator<<(std::ostream& os, const ComplexInterval& z);

}  // namespace otcalc
