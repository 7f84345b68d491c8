#include "otcalc/interval.hpp"

#include "otcalc/error.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

namespace otcalc {

namespace {

[[noreturn]] void undecided(const char* op, const char* what) {
  throw Error(ErrorKind::PrecisionExhausted, "interval", op, what);
}

Rational to_rational(const __mpfr_struct* x) {
  mpz_class m;
  const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rational q(m);
  if (e >= 0) mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return q;
}

}  // namespace

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(long value, mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const Rational& value, mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other.prec_) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this == &other) return *this;
  if (prec_ != other.prec_) {
    prec_ = other.prec_;
    mpfr_set_prec(lo_, prec_);
    mpfr_set_prec(hi_, prec_);
  }
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  std::swap(prec_, other.prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_bounds(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_set_q(out.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return out;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval out(std::max(a.prec_, b.prec_));
  mpfr_min(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_const_pi(out.lo_, MPFR_RNDD);
  mpfr_const_pi(out.hi_, MPFR_RNDU);
  return out;
}

Rational Interval::lower_rational() const { return to_rational(lo_); }
Rational Interval::upper_rational() const { return to_rational(hi_); }
Rational Interval::midpoint_rational() const { return (lower_rational() + upper_rational()) / 2; }

double Interval::midpoint() const { return midpoint_rational().get_d(); }

Interval Interval::width() const {
  Interval out(prec_);
  mpfr_sub(out.hi_, hi_, lo_, MPFR_RNDU);
  mpfr_sub(out.lo_, hi_, lo_, MPFR_RNDD);
  return out;
}

long Interval::width_log2() const {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  long out;
  if (mpfr_zero_p(w)) out = -(1L << 30);
  else out = static_cast<long>(mpfr_get_exp(w));  // w < 2^exp
  mpfr_clear(w);
  return out;
}

Interval Interval::magnitude_interval() const {
  Interval out(prec_);
  if (contains_zero()) mpfr_set_zero(out.lo_, 1);
  else if (is_positive()) mpfr_set(out.lo_, lo_, MPFR_RNDD);
  else mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_t a;
  mpfr_init2(a, prec_);
  mpfr_abs(a, lo_, MPFR_RNDU);
  mpfr_abs(out.hi_, hi_, MPFR_RNDU);
  mpfr_max(out.hi_, out.hi_, a, MPFR_RNDU);
  mpfr_clear(a);
  return out;
}

long Interval::magnitude_log2() const {
  const Interval m = magnitude_interval();
  if (mpfr_zero_p(m.hi_)) return -(1L << 30);
  return static_cast<long>(mpfr_get_exp(m.hi_));
}

bool Interval::contains(const Rational& x) const {
  return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::overlaps(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

Interval Interval::operator-() const {
  Interval out(prec_);
  mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  return out;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval out(std::max(a.prec_, b.prec_));
  mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval out(std::max(a.prec_, b.prec_));
  mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return out;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t prec = std::max(a.prec_, b.prec_);
  Interval out(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  const __mpfr_struct* xs[2] = {a.lo_, a.hi_};
  const __mpfr_struct* ys[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto* x : xs) {
    for (auto* y : ys) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return out;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) undecided("divide", "interval divisor contains zero");
  const mpfr_prec_t prec = std::max(a.prec_, b.prec_);
  Interval out(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  const __mpfr_struct* xs[2] = {a.lo_, a.hi_};
  const __mpfr_struct* ys[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto* x : xs) {
    for (auto* y : ys) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return out;
}

Interval square(const Interval& a) {
  Interval m = a.magnitude_interval();
  Interval out(a.prec_);
  mpfr_sqr(out.lo_, m.lo_, MPFR_RNDD);
  mpfr_sqr(out.hi_, m.hi_, MPFR_RNDU);
  return out;
}

Interval sqrt(const Interval& a) {
  if (mpfr_sgn(a.hi_) < 0) undecided("sqrt", "negative argument");
  Interval out(a.prec_);
  if (mpfr_sgn(a.lo_) <= 0) mpfr_set_zero(out.lo_, 1);
  else mpfr_sqrt(out.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(out.hi_, a.hi_, MPFR_RNDU);
  return out;
}

Interval exp(const Interval& a) {
  Interval out(a.prec_);
  mpfr_exp(out.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(out.hi_, a.hi_, MPFR_RNDU);
  return out;
}

Interval log(const Interval& a) {
  if (!a.is_positive()) undecided("log", "argument not certified positive");
  Interval out(a.prec_);
  mpfr_log(out.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(out.hi_, a.hi_, MPFR_RNDU);
  return out;
}

Interval abs(const Interval& a) { return a.magnitude_interval(); }

Interval atan2(const Interval& y, const Interval& x) {
  const bool touches_cut = y.contains_zero() && mpfr_sgn(x.lo_) <= 0;
  if (touches_cut) undecided("atan2", "box meets the branch cut of the principal argument");
  const mpfr_prec_t prec = std::max(y.prec_, x.prec_);
  Interval out(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  const __mpfr_struct* ys[2] = {y.lo_, y.hi_};
  const __mpfr_struct* xs[2] = {x.lo_, x.hi_};
  bool first = true;
  for (auto* yy : ys) {
    for (auto* xx : xs) {
      mpfr_atan2(t, yy, xx, MPFR_RNDD);
      if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
      mpfr_atan2(t, yy, xx, MPFR_RNDU);
      if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return out;
}

std::string Interval::to_string(int digits) const {
  auto fmt = [digits](const __mpfr_struct* v, mpfr_rnd_t rnd) {
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*R*g", digits, rnd, v);
    return std::string(buf.data());
  };
  return "[" + fmt(lo_, MPFR_RNDD) + ", " + fmt(hi_, MPFR_RNDU) + "]";
}

std::ostream& operator<<(std::ostream& os, const Interval& x) { return os << x.to_string(); }

Interval ComplexInterval::norm2() const { return square(re) + square(im); }

Interval ComplexInterval::abs() const { return sqrt(norm2()); }

double ComplexInterval::max_distance_to(const Rational& real, const Rational& imag) const {
  const Interval dr = re - Interval(real, re.precision());
  const Interval di = im - Interval(imag, im.precision());
  const Interval d = sqrt(square(dr) + square(di));
  return d.upper();
}

ComplexInterval ComplexInterval::midpoint() const {
  const mpfr_prec_t prec = precision();
  return {Interval(re.midpoint_rational(), prec), Interval(im.midpoint_rational(), prec)};
}

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) { return {a.re + b.re, a.im + b.im}; }

ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) { return {a.re - b.re, a.im - b.im}; }

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexInterval operator*(const Interval& a, const ComplexInterval& b) { return {a * b.re, a * b.im}; }

ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
  const Interval n = b.norm2();
  const ComplexInterval num = a * b.conj();
  return {num.re / n, num.im / n};
}

std::ostream& operator<<(std::ostream& os, const ComplexInterval& z) {
  return os << z.re << " + i" << z.im;
}

}  // namespace otcalc
