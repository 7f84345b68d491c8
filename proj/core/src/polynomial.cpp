#include "otcalc/polynomial.hpp"

#include "otcalc/error.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>

namespace otcalc {

Polynomial::Polynomial(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

Polynomial Polynomial::from_integers(std::span<const Integer> ascending) {
  std::vector<Rational> c;
  c.reserve(ascending.size());
  for (const auto& v : ascending) c.emplace_back(v);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t power) {
  std::vector<Rational> v(power + 1);
  v[power] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  Polynomial out = *this;
  const Rational lc = leading();
  for (auto& c : out.coeffs_) c /= lc;
  return out;
}

Polynomial Polynomial::shifted(const Rational& shift) const {
  // Horner in x + shift.
  const Polynomial lin({shift, Rational(1)});
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lin + constant(*it);
  return acc;
}

bool Polynomial::has_integer_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
  std::vector<Rational> v = p.coeffs_;
  for (auto& x : v) x *= c;
  return Polynomial(std::move(v));
}

std::string Polynomial::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "numfield", "divmod", "polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational& lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    const Rational q = rem[static_cast<std::size_t>(i)] / lb;
    quo[static_cast<std::size_t>(i - db)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= q * b.coefficients()[static_cast<std::size_t>(j)];
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a.monic(), y = b.monic();
  while (!y.is_zero()) {
    Polynomial r = (x % y).monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial r0 = a, r1 = b;
  Polynomial s0 = Polynomial::constant(1), s1;
  Polynomial t0, t1 = Polynomial::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Polynomial t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {};
  const Rational inv = 1 / r0.leading();
  return {inv * r0, inv * s0, inv * t0};
}

namespace {

Rational power(const Rational& base, unsigned long e) {
  Rational out = 1;
  for (unsigned long i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

Rational resultant(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const int m = a.degree(), n = b.degree();
  if (m == 0) return power(a.leading(), static_cast<unsigned long>(n));
  if (n == 0) return power(b.leading(), static_cast<unsigned long>(m));
  // Res(a,b) = (-1)^{mn} Res(b,a) and Res(b,a) = lc(b)^{m - deg r} Res(b, r) for r = a mod b.
  Polynomial r = a % b;
  if (r.is_zero()) return 0;
  Rational out = power(b.leading(), static_cast<unsigned long>(m - r.degree())) * resultant(b, r);
  if ((m * n) % 2 != 0) out = -out;
  return out;
}

std::vector<Polynomial> sturm_sequence(const Polynomial& f) {
  std::vector<Polynomial> seq{f, f.derivative()};
  while (!seq.back().is_zero()) {
    Polynomial r = -(seq[seq.size() - 2] % seq.back());
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

namespace {

int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int variations_at(const std::vector<Polynomial>& seq, const Rational& x) {
  std::vector<int> signs;
  signs.reserve(seq.size());
  for (const auto& p : seq) signs.push_back(sgn(p.evaluate(x)));
  return sign_changes(signs);
}

int variations_at_infinity(const std::vector<Polynomial>& seq, bool negative) {
  std::vector<int> signs;
  for (const auto& p : seq) {
    int s = sgn(p.leading());
    if (negative && p.degree() % 2 != 0) s = -s;
    signs.push_back(s);
  }
  return sign_changes(signs);
}

}  // namespace

int count_real_roots(const Polynomial& f) {
  const auto seq = sturm_sequence(f);
  return variations_at_infinity(seq, true) - variations_at_infinity(seq, false);
}

int count_real_roots(const std::vector<Polynomial>& sturm, const Rational& lo, const Rational& hi) {
  return variations_at(sturm, lo) - variations_at(sturm, hi);
}

// ---------------------------------------------------------------------------
// Irreducibility

namespace {

using ModPoly = std::vector<std::int64_t>;  // ascending, reduced mod p, trimmed

void trim_mod(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  b %= p;
  if (b < 0) b += p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t p) { return mod_pow(a, p - 2, p); }

ModPoly mod_rem(ModPoly a, const ModPoly& b, std::int64_t p) {
  const std::int64_t inv = mod_inv(b.back(), p);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const std::int64_t q = a.back() * inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] = ((a[shift + j] - q * b[j]) % p + p) % p;
    trim_mod(a);
  }
  return a;
}

ModPoly mod_mul(const ModPoly& a, const ModPoly& b, const ModPoly& m, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  trim_mod(c);
  return mod_rem(std::move(c), m, p);
}

ModPoly mod_gcd(ModPoly a, ModPoly b, std::int64_t p) {
  trim_mod(a);
  trim_mod(b);
  while (!b.empty()) {
    ModPoly r = mod_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::int64_t inv = mod_inv(a.back(), p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

ModPoly mod_div_exact(ModPoly a, const ModPoly& b, std::int64_t p) {
  const std::int64_t inv = mod_inv(b.back(), p);
  ModPoly q(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size() && !a.empty()) {
    const std::int64_t c = a.back() * inv % p;
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = ((a[shift + j] - c * b[j]) % p + p) % p;
    trim_mod(a);
  }
  trim_mod(q);
  return q;
}

ModPoly mod_derivative(const ModPoly& a, std::int64_t p) {
  ModPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<std::int64_t>(i) % p);
  trim_mod(d);
  return d;
}

/// Degrees of irreducible factors of a squarefree monic g mod p
/// (distinct-degree factorization).
std::vector<int> factor_degrees_mod_p(ModPoly g, std::int64_t p) {
  std::vector<int> degs;
  ModPoly h{0, 1};  // x
  for (int d = 1; 2 * d <= static_cast<int>(g.size()) - 1; ++d) {
    // h <- h^p mod g
    ModPoly base = mod_rem(h, g, p), acc{1};
    for (std::int64_t e = p; e > 0; e >>= 1) {
      if (e & 1) acc = mod_mul(acc, base, g, p);
      base = mod_mul(base, base, g, p);
    }
    h = acc;
    ModPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] - 1 + p) % p;
    trim_mod(hx);
    ModPoly fac = mod_gcd(g, hx, p);
    if (fac.size() > 1) {
      const int fd = static_cast<int>(fac.size()) - 1;
      for (int k = 0; k < fd / d; ++k) degs.push_back(d);
      g = mod_div_exact(g, fac, p);
      h = mod_rem(h, g, p);
    }
  }
  if (g.size() > 1) degs.push_back(static_cast<int>(g.size()) - 1);
  return degs;
}

std::set<int> subset_sums(const std::vector<int>& parts) {
  std::set<int> sums{0};
  for (int d : parts) {
    std::set<int> next = sums;
    for (int s : sums) next.insert(s + d);
    sums = std::move(next);
  }
  return sums;
}

std::vector<Integer> divisors_of(Integer v) {
  v = abs(v);
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      if (d * d != v) out.push_back(v / d);
    }
  }
  return out;
}

/// Kronecker's method: does the monic integer polynomial f have a monic integer factor of degree d?
bool has_factor_of_degree(const Polynomial& f, int d) {
  std::vector<std::pair<Integer, Integer>> points;  // (x, f(x)), f(x) != 0
  std::vector<std::pair<Integer, Integer>> candidates;
  for (long x = -12; x <= 12; ++x) {
    Rational v = f.evaluate(Rational(x));
    if (v != 0) candidates.emplace_back(Integer(x), v.get_num());
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) { return abs(a.second) < abs(b.second); });
  points.assign(candidates.begin(), candidates.begin() + d);  // d points plus monic leading term
  std::vector<std::vector<Integer>> options;
  std::size_t combos = 1;
  for (const auto& pt : points) {
    std::vector<Integer> opts;
    for (const auto& dv : divisors_of(pt.second)) {
      opts.push_back(dv);
      opts.push_back(-dv);
    }
    combos *= opts.size();
    if (combos > 20'000'000)
      throw Error(ErrorKind::InternalInconsistency, "numfield", "parse_field",
                  "irreducibility test exceeded its search budget");
    options.push_back(std::move(opts));
  }
  // A monic degree-d factor g is fixed by g(x_i) for d points: g = prod(x - x_i) + interpolant.
  Polynomial node = Polynomial::constant(1);
  for (const auto& pt : points) node = node * Polynomial({Rational(-pt.first), Rational(1)});
  std::vector<std::size_t> idx(points.size(), 0);
  while (true) {
    Polynomial interp;
    for (std::size_t i = 0; i < points.size(); ++i) {
      Polynomial basis = Polynomial::constant(1);
      Rational denom = 1;
      for (std::size_t j = 0; j < points.size(); ++j) {
        if (j == i) continue;
        basis = basis * Polynomial({Rational(-points[j].first), Rational(1)});
        denom *= Rational(points[i].first - points[j].first);
      }
      interp = interp + (Rational(options[i][idx[i]]) / denom) * basis;
    }
    Polynomial g = node + interp;
    if (g.has_integer_coefficients() && g.degree() == d && (f % g).is_zero()) return true;
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == options[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return false;
}

}  // namespace

bool is_irreducible_over_q(const Polynomial& input) {
  if (input.degree() < 1) return false;
  if (input.degree() == 1) return true;
  Polynomial f = input.monic();
  if (gcd(f, f.derivative()).degree() > 0) return false;
  // Clear denominators then make monic via y = lc * x.
  Integer lcm_den = 1;
  for (const auto& c : f.coefficients()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  Polynomial g = Rational(lcm_den) * f;  // integer, leading = lcm_den
  const int n = g.degree();
  const Integer a = g.leading().get_num();
  {
    // a^{n-1} g(y / a) = y^n + sum_i a^{n-1-i} g_i y^i
    std::vector<Rational> c(static_cast<std::size_t>(n + 1));
    c[static_cast<std::size_t>(n)] = 1;
    Integer pw = 1;
    for (int i = n - 1; i >= 0; --i) {
      c[static_cast<std::size_t>(i)] = g.coefficient(static_cast<std::size_t>(i)) * Rational(pw);
      pw *= a;
    }
    g = Polynomial(std::move(c));
  }

  std::set<int> possible;
  for (int d = 1; d < n; ++d) possible.insert(d);
  static constexpr std::int64_t primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                            47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103};
  for (std::int64_t p : primes) {
    ModPoly gp;
    for (const auto& c : g.coefficients()) {
      mpz_class r = c.get_num() % p;
      if (r < 0) r += p;
      gp.push_back(r.get_si());
    }
    trim_mod(gp);
    if (static_cast<int>(gp.size()) - 1 != n) continue;
    if (mod_gcd(gp, mod_derivative(gp, p), p).size() > 1) continue;
    const auto sums = subset_sums(factor_degrees_mod_p(gp, p));
    std::set<int> keep;
    for (int d : possible)
      if (sums.count(d)) keep.insert(d);
    possible = std::move(keep);
    if (possible.empty()) return true;
  }
  for (int d : possible) {
    if (2 * d > n) break;
    if (has_factor_of_degree(g, d)) return false;
  }
  return true;
}

Polynomial characteristic_polynomial(const RationalMatrix& a) {
  const std::size_t n = a.size();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RationalMatrix m(n, std::vector<Rational>(n));  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    RationalMatrix next(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational acc = 0;
        for (std::size_t l = 0; l < n; ++l)
          if (a[i][l] != 0 && m[l][j] != 0) acc += a[i][l] * m[l][j];
        next[i][j] = acc;
      }
      next[i][i] += c[n - k + 1];
    }
    m = std::move(next);
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (a[i][l] != 0 && m[l][i] != 0) trace += a[i][l] * m[l][i];
    c[n - k] = -trace / static_cast<unsigned long>(k);
  }
  return Polynomial(std::move(c));
}

Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

}  // namespace otcalc
