#include "otcalc/numfield.hpp"

#include "otcalc/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace otcalc {

namespace {

constexpr const char* kModule = "numfield";

[[noreturn]] void fail(ErrorKind kind, const char* op, const std::string& msg) { throw Error(kind, kModule, op, msg); }

AlgebraicNumber reduce(const FieldSpec& field, const Polynomial& p) {
  const Polynomial r = p % field.polynomial();
  AlgebraicNumber out;
  out.coords.resize(static_cast<std::size_t>(field.degree()));
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] = r.coefficient(i);
  return out;
}

Polynomial as_polynomial(const AlgebraicNumber& a) { return Polynomial(a.coords); }

void check_same_field(const FieldSpec& field, const AlgebraicNumber& a, const char* op) {
  if (static_cast<int>(a.coords.size()) != field.degree())
    fail(ErrorKind::InternalInconsistency, op, "element does not belong to this field");
}

RationalMatrix transpose(const RationalMatrix& m) {
  RationalMatrix t(m.empty() ? 0 : m[0].size(), std::vector<Rational>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

std::optional<RationalMatrix> invert(RationalMatrix m) {
  const std::size_t n = m.size();
  RationalMatrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const Rational d = m[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      m[col][c] /= d;
      inv[col][c] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix c(a.size(), std::vector<Rational>(b.empty() ? 0 : b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < b[k].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Field and element construction

FieldSpec parse_field(std::span<const Integer> coefficients, DegreeRequirement requirement) {
  if (coefficients.empty()) fail(ErrorKind::NotMonic, "parse_field", "empty coefficient list");
  if (coefficients.back() != 1)
    fail(ErrorKind::NotMonic, "parse_field", "leading coefficient must be 1, got " + coefficients.back().get_str());
  FieldSpec field;
  field.coefficients.assign(coefficients.begin(), coefficients.end());
  const Polynomial f = field.polynomial();
  if (f.degree() < 1) fail(ErrorKind::DegreeTooSmall, "parse_field", "constant polynomial defines no extension");
  if (!is_irreducible_over_q(f)) fail(ErrorKind::Reducible, "parse_field", f.to_string() + " is reducible over Q");
  if (requirement == DegreeRequirement::ot && f.degree() < 3)
    fail(ErrorKind::DegreeTooSmall, "parse_field",
         "degree " + std::to_string(f.degree()) + " cannot have both real and complex embeddings");
  return field;
}

FieldSpec parse_field(std::initializer_list<long> coefficients, DegreeRequirement requirement) {
  std::vector<Integer> c;
  for (long v : coefficients) c.emplace_back(v);
  return parse_field(std::span<const Integer>(c), requirement);
}

void set_integral_basis(FieldSpec& field, RationalMatrix basis) {
  const auto n = static_cast<std::size_t>(field.degree());
  if (basis.size() != n || std::any_of(basis.begin(), basis.end(), [n](const auto& r) { return r.size() != n; }))
    throw Error(ErrorKind::ConfigError, kModule, "set_integral_basis", "integral basis must be a square degree x degree matrix");
  if (!invert(basis))
    throw Error(ErrorKind::ConfigError, kModule, "set_integral_basis", "integral basis matrix is singular");
  field.integral_basis = std::move(basis);
  std::vector<Rational> one(n);
  one[0] = 1;
  if (!integral_coordinates(field, AlgebraicNumber{one}))
    throw Error(ErrorKind::ConfigError, kModule, "set_integral_basis", "1 is not in the span of the integral basis");
}

std::string AlgebraicNumber::to_string() const { return Polynomial(coords).to_string("theta"); }

AlgebraicNumber make_number(const FieldSpec& field, std::span<const Rational> coords) {
  if (static_cast<int>(coords.size()) > field.degree())
    return reduce(field, Polynomial(std::vector<Rational>(coords.begin(), coords.end())));
  AlgebraicNumber out;
  out.coords.assign(coords.begin(), coords.end());
  out.coords.resize(static_cast<std::size_t>(field.degree()));
  return out;
}

AlgebraicNumber make_number(const FieldSpec& field, std::initializer_list<long> coords) {
  std::vector<Rational> c;
  for (long v : coords) c.emplace_back(v);
  return make_number(field, std::span<const Rational>(c));
}

AlgebraicNumber rational_number(const FieldSpec& field, const Rational& c) {
  AlgebraicNumber out;
  out.coords.resize(static_cast<std::size_t>(field.degree()));
  out.coords[0] = c;
  return out;
}

AlgebraicNumber theta(const FieldSpec& field) { return reduce(field, Polynomial::monomial(1, 1)); }

// ---------------------------------------------------------------------------
// Arithmetic

AlgebraicNumber add(const FieldSpec& field, const AlgebraicNumber& a, const AlgebraicNumber& b) {
  check_same_field(field, a, "add");
  check_same_field(field, b, "add");
  AlgebraicNumber out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
  return out;
}

AlgebraicNumber sub(const FieldSpec& field, const AlgebraicNumber& a, const AlgebraicNumber& b) {
  check_same_field(field, a, "sub");
  check_same_field(field, b, "sub");
  AlgebraicNumber out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] -= b.coords[i];
  return out;
}

AlgebraicNumber mul(const FieldSpec& field, const AlgebraicNumber& a, const AlgebraicNumber& b) {
  check_same_field(field, a, "mul");
  check_same_field(field, b, "mul");
  return reduce(field, as_polynomial(a) * as_polynomial(b));
}

AlgebraicNumber inv(const FieldSpec& field, const AlgebraicNumber& a) {
  check_same_field(field, a, "inv");
  const Polynomial p = as_polynomial(a);
  if (p.is_zero()) fail(ErrorKind::DivisionByZero, "inv", "inverse of zero");
  // f irreducible, so gcd(a, f) = 1 and u a + v f = 1.
  const ExtendedGcd eg = extended_gcd(p, field.polynomial());
  if (eg.g.degree() != 0) fail(ErrorKind::InternalInconsistency, "inv", "element shares a factor with the modulus");
  return reduce(field, eg.u);
}

AlgebraicNumber power(const FieldSpec& field, const AlgebraicNumber& a, long e) {
  AlgebraicNumber base = e < 0 ? inv(field, a) : a;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  AlgebraicNumber acc = rational_number(field, 1);
  while (k > 0) {
    if (k & 1UL) acc = mul(field, acc, base);
    k >>= 1;
    if (k > 0) base = mul(field, base, base);
  }
  return acc;
}

AlgebraicNumber algebra_op(const FieldSpec& field, const AlgebraicNumber& a, const AlgebraicNumber& b, AlgebraOp op) {
  switch (op) {
    case AlgebraOp::add: return add(field, a, b);
    case AlgebraOp::sub: return sub(field, a, b);
    case AlgebraOp::mul: return mul(field, a, b);
    case AlgebraOp::inv: return inv(field, a);
    case AlgebraOp::pow: {
      const bool rational_integer =
          std::all_of(b.coords.begin() + 1, b.coords.end(), [](const Rational& c) { return c == 0; }) &&
          b.coords[0].get_den() == 1 && b.coords[0].get_num().fits_slong_p();
      if (!rational_integer) fail(ErrorKind::InternalInconsistency, "algebra_op", "exponent must be a rational integer");
      return power(field, a, b.coords[0].get_num().get_si());
    }
  }
  fail(ErrorKind::InternalInconsistency, "algebra_op", "unknown operation");
}

Rational norm(const FieldSpec& field, const AlgebraicNumber& a) {
  check_same_field(field, a, "norm");
  const Polynomial p = as_polynomial(a);
  if (p.is_zero()) return 0;
  return resultant(field.polynomial(), p);
}

RationalMatrix multiplication_matrix(const FieldSpec& field, const AlgebraicNumber& a) {
  const auto n = static_cast<std::size_t>(field.degree());
  RationalMatrix m(n, std::vector<Rational>(n));
  AlgebraicNumber col = a;
  const AlgebraicNumber th = theta(field);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col.coords[i];
    col = mul(field, col, th);
  }
  return m;
}

RationalMatrix integral_multiplication_matrix(const FieldSpec& field, const AlgebraicNumber& a) {
  RationalMatrix m = multiplication_matrix(field, a);
  if (!field.integral_basis) return m;
  // Basis rows P: power coords c = P^T z, so the map in z-coordinates is P^{-T} M P^T.
  const RationalMatrix pt = transpose(*field.integral_basis);
  return multiply(multiply(*invert(pt), m), pt);
}

std::optional<std::vector<Integer>> integral_coordinates(const FieldSpec& field, const AlgebraicNumber& a) {
  std::vector<Rational> z = a.coords;
  if (field.integral_basis) {
    const RationalMatrix pti = *invert(transpose(*field.integral_basis));
    std::vector<Rational> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
      for (std::size_t j = 0; j < z.size(); ++j) out[i] += pti[i][j] * z[j];
    z = std::move(out);
  }
  std::vector<Integer> ints;
  for (const auto& c : z) {
    if (c.get_den() != 1) return std::nullopt;
    ints.push_back(c.get_num());
  }
  return ints;
}

// ---------------------------------------------------------------------------
// Embeddings

namespace {

ComplexInterval evaluate(const std::vector<Rational>& ascending, const ComplexInterval& z) {
  const mpfr_prec_t prec = z.precision();
  ComplexInterval acc(prec);
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) {
    acc = acc * z;
    acc.re += Interval(*it, prec);
  }
  return acc;
}

Interval evaluate_real(const std::vector<Rational>& ascending, const Interval& x) {
  Interval acc(x.precision());
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) acc = acc * x + Interval(*it, x.precision());
  return acc;
}

struct Isolation {
  std::vector<Interval> real;
  std::vector<ComplexInterval> upper;
};

/// Durand-Kerner approximations in point arithmetic at `wp` bits.
std::vector<ComplexInterval> approximate_roots(const Polynomial& f, mpfr_prec_t wp) {
  const std::size_t n = static_cast<std::size_t>(f.degree());
  Rational bound = 0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, Rational(abs(f.coefficient(i))));
  bound += 1;
  const ComplexInterval seed{Interval(Rational(2, 5), wp), Interval(Rational(9, 10), wp)};
  std::vector<ComplexInterval> z;
  ComplexInterval p{Interval(bound, wp), Interval(0L, wp)};
  for (std::size_t k = 0; k < n; ++k) {
    p = (p * seed).midpoint();
    z.push_back(p);
  }
  const std::vector<Rational>& coeffs = f.coefficients();
  const long stop = -static_cast<long>(wp) + 8;
  for (int iter = 0; iter < 400 + static_cast<int>(wp); ++iter) {
    long worst = -(1L << 30);
    for (std::size_t i = 0; i < n; ++i) {
      ComplexInterval den = ComplexInterval::one(wp);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den = den * (z[i] - z[j]);
      if (den.contains_zero()) {
        // Coincident approximations: nudge and keep going.
        z[i] = (z[i] * seed).midpoint();
        worst = 0;
        continue;
      }
      const ComplexInterval step = (evaluate(coeffs, z[i]) / den).midpoint();
      worst = std::max({worst, step.re.magnitude_log2(), step.im.magnitude_log2()});
      z[i] = (z[i] - step).midpoint();
    }
    if (worst < stop) break;
  }
  return z;
}

/// Certifies approximations via Weierstrass inclusion disks D(z_i, n |W_i|):
/// pairwise disjoint disks hold exactly one root each.
std::optional<Isolation> certify(const Polynomial& f, std::vector<ComplexInterval> z, int s, mpfr_prec_t wp,
                                 unsigned precision_bits) {
  const std::size_t n = z.size();
  const Rational snap = Rational(1) / Rational(Integer(1) << static_cast<unsigned long>(wp / 2));
  for (auto& zi : z)
    if (zi.im.magnitude_interval().upper_rational() < snap) zi.im = Interval(0L, wp);

  std::vector<Rational> radius(n);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexInterval den = ComplexInterval::one(wp);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) den = den * (z[i] - z[j]);
    if (den.contains_zero()) return std::nullopt;
    const ComplexInterval w = evaluate(f.coefficients(), z[i]) / den;
    radius[i] = Rational(static_cast<unsigned long>(n)) * w.abs().upper_rational();
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((z[i] - z[j]).abs().lower_rational() <= radius[i] + radius[j]) return std::nullopt;

  const Rational target = Rational(1) / Rational(Integer(1) << static_cast<unsigned long>(precision_bits / 2 + 1));
  Isolation iso;
  const auto sturm = sturm_sequence(f);
  int upper = 0, lower = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (radius[i] > target) return std::nullopt;
    if (z[i].im.is_point() && z[i].im.contains_zero()) {
      const Rational c = z[i].re.midpoint_rational();
      const Rational lo = c - radius[i], hi = c + radius[i];
      if (count_real_roots(sturm, lo, hi) != 1) return std::nullopt;
      iso.real.push_back(Interval::from_bounds(lo, hi, wp));
      continue;
    }
    // Off-axis disk: its root is non-real.
    if (z[i].im.magnitude_interval().lower_rational() <= radius[i]) return std::nullopt;
    if (z[i].im.is_positive()) {
      ++upper;
      const Rational cr = z[i].re.midpoint_rational(), ci = z[i].im.midpoint_rational();
      iso.upper.push_back({Interval::from_bounds(cr - radius[i], cr + radius[i], wp),
                           Interval::from_bounds(ci - radius[i], ci + radius[i], wp)});
    } else {
      ++lower;
    }
  }
  if (static_cast<int>(iso.real.size()) != s || upper != lower || upper * 2 + s != static_cast<int>(n))
    return std::nullopt;
  std::sort(iso.real.begin(), iso.real.end(),
            [](const Interval& a, const Interval& b) { return a.midpoint_rational() < b.midpoint_rational(); });
  std::sort(iso.upper.begin(), iso.upper.end(), [](const ComplexInterval& a, const ComplexInterval& b) {
    const Rational ar = a.re.midpoint_rational(), br = b.re.midpoint_rational();
    if (ar != br) return ar < br;
    return a.im.midpoint_rational() < b.im.midpoint_rational();
  });
  return iso;
}

}  // namespace

EmbeddingSet compute_embeddings(const FieldSpec& field, unsigned precision_bits, unsigned precision_cap) {
  const Polynomial f = field.polynomial();
  const int n = f.degree();
  if (n < 1) fail(ErrorKind::DegreeTooSmall, "compute_embeddings", "field of degree 0");
  EmbeddingSet emb;
  emb.field = field;
  emb.precision_bits = precision_bits;
  emb.precision_cap = std::max(precision_cap, precision_bits);
  emb.s = count_real_roots(f);
  emb.t = (n - emb.s) / 2;

  for (mpfr_prec_t wp = std::max<mpfr_prec_t>(64, precision_bits + 32);; wp *= 2) {
    auto iso = certify(f, approximate_roots(f, wp), emb.s, wp, precision_bits);
    if (iso) {
      emb.real_roots = std::move(iso->real);
      emb.complex_roots = std::move(iso->upper);
      return emb;
    }
    if (wp > 2 * static_cast<mpfr_prec_t>(emb.precision_cap) + 64)
      fail(ErrorKind::PrecisionExhausted, "compute_embeddings",
           "could not certify root enclosures within the precision cap");
  }
}

void EmbeddingSet::require_ot_signature() const {
  if (s == 0 || t == 0)
    fail(ErrorKind::SignatureUnsupported, "compute_embeddings",
         "OT manifolds need s > 0 and t > 0; field " + field.to_string() + " has signature (" + std::to_string(s) +
             "," + std::to_string(t) + ")");
}

EmbeddingSet EmbeddingSet::refined() const {
  if (!can_refine())
    fail(ErrorKind::PrecisionExhausted, "refine",
         "precision cap of " + std::to_string(precision_cap) + " bits reached");
  return compute_embeddings(field, precision_bits * 2, precision_cap);
}

Interval real_embedding(const EmbeddingSet& emb, const AlgebraicNumber& a, int i) {
  return evaluate_real(a.coords, emb.real_roots.at(static_cast<std::size_t>(i)));
}

ComplexInterval complex_embedding(const EmbeddingSet& emb, const AlgebraicNumber& a, int k) {
  return evaluate(a.coords, emb.complex_roots.at(static_cast<std::size_t>(k)));
}

// ---------------------------------------------------------------------------
// Units

std::string_view to_string(UnitStatus status) noexcept {
  switch (status) {
    case UnitStatus::unit_totally_positive: return "unit_totally_positive";
    case UnitStatus::unit_not_totally_positive: return "unit_not_totally_positive";
    case UnitStatus::not_unit: return "not_unit";
  }
  return "unknown";
}

UnitStatus check_unit(const EmbeddingSet& emb, const AlgebraicNumber& a) {
  check_same_field(emb.field, a, "check_unit");
  if (!integral_coordinates(emb.field, a))
    fail(ErrorKind::NotIntegral, "check_unit", a.to_string() + " is not integral in the chosen model");
  if (abs(norm(emb.field, a)) != 1) return UnitStatus::not_unit;
  EmbeddingSet current = emb;
  for (int i = 0; i < emb.s; ++i) {
    Interval v = real_embedding(current, a, i);
    while (v.contains_zero()) {
      current = current.refined();
      v = real_embedding(current, a, i);
    }
    if (v.is_negative()) return UnitStatus::unit_not_totally_positive;
  }
  return UnitStatus::unit_totally_positive;
}

Interval LogVector::sum() const {
  Interval acc(entries.empty() ? 64 : entries.front().precision());
  for (const auto& e : entries) acc += e;
  return acc;
}

LogVector log_vector(const EmbeddingSet& emb, const AlgebraicNumber& a) {
  check_same_field(emb.field, a, "log_vector");
  if (!integral_coordinates(emb.field, a) || abs(norm(emb.field, a)) != 1)
    fail(ErrorKind::NotUnit, "log_vector", a.to_string() + " is not a unit");
  EmbeddingSet current = emb;
  while (true) {
    try {
      LogVector out;
      for (int i = 0; i < current.s; ++i) out.entries.push_back(log(abs(real_embedding(current, a, i))));
      for (int k = 0; k < current.t; ++k) out.entries.push_back(log(complex_embedding(current, a, k).norm2()));
      return out;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PrecisionExhausted) throw;
      current = current.refined();
    }
  }
}

std::vector<AlgebraicNumber> search_units(const EmbeddingSet& emb, int height) {
  const FieldSpec& field = emb.field;
  const auto n = static_cast<std::size_t>(field.degree());
  std::vector<std::complex<double>> roots;
  for (const auto& r : emb.real_roots) roots.emplace_back(r.midpoint(), 0.0);
  for (const auto& c : emb.complex_roots) {
    roots.emplace_back(c.re.midpoint(), c.im.midpoint());
    roots.emplace_back(c.re.midpoint(), -c.im.midpoint());
  }
  std::optional<RationalMatrix> basis_t;
  if (field.integral_basis) basis_t = transpose(*field.integral_basis);

  std::vector<AlgebraicNumber> out;
  std::vector<long> z(n, -height);
  while (true) {
    // Canonical sign class: first nonzero coordinate positive.
    auto first = std::find_if(z.begin(), z.end(), [](long v) { return v != 0; });
    if (first != z.end() && *first > 0) {
      std::vector<Rational> coords(n);
      if (basis_t) {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) coords[i] += (*basis_t)[i][j] * z[j];
      } else {
        for (std::size_t i = 0; i < n; ++i) coords[i] = z[i];
      }
      double approx = 1.0;
      for (const auto& r : roots) {
        std::complex<double> v = 0.0;
        for (std::size_t i = n; i-- > 0;) v = v * r + coords[i].get_d();
        approx *= std::abs(v);
      }
      if (std::abs(approx - 1.0) < 0.25) {
        AlgebraicNumber a{coords};
        if (abs(norm(field, a)) == 1) out.push_back(std::move(a));
      }
    }
    std::size_t k = n;
    while (k-- > 0) {
      if (z[k] < height) {
        ++z[k];
        break;
      }
      z[k] = -height;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace otcalc
