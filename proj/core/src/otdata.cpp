#include "otcalc/otdata.hpp"

#include "otcalc/error.hpp"

#include <bit>
#include <map>
#include <sstream>

namespace otcalc {

namespace {

constexpr const char* kModule = "otdata";

[[noreturn]] void fail(ErrorKind kind, const char* op, const std::string& msg) { throw Error(kind, kModule, op, msg); }

bool is_one(const FieldSpec& field, const AlgebraicNumber& a) { return a == rational_number(field, 1); }

// Solves X y = rhs by Cramer's rule; det is det(X).
std::vector<Interval> cramer(const IntervalMatrix& x, const Interval& det, const std::vector<Interval>& rhs) {
  std::vector<Interval> out;
  for (std::size_t j = 0; j < x.size(); ++j) {
    IntervalMatrix xj = x;
    for (std::size_t i = 0; i < x.size(); ++i) xj[i][j] = rhs[i];
    out.push_back(interval_determinant(xj) / det);
  }
  return out;
}

IntervalMatrix solve_columns(const IntervalMatrix& x, const Interval& det, const IntervalMatrix& rhs, int cols) {
  IntervalMatrix out(x.size(), std::vector<Interval>());
  for (int k = 0; k < cols; ++k) {
    std::vector<Interval> col;
    for (const auto& row : rhs) col.push_back(row[static_cast<std::size_t>(k)]);
    auto y = cramer(x, det, col);
    for (std::size_t j = 0; j < x.size(); ++j) out[j].push_back(std::move(y[j]));
  }
  return out;
}

IntervalMatrix lattice_matrix(const std::vector<LogVector>& logs, int s) {
  IntervalMatrix x;
  for (const auto& l : logs) x.emplace_back(l.entries.begin(), l.entries.begin() + s);
  return x;
}

IntervalMatrix argument_matrix(const EmbeddingSet& emb, const std::vector<AlgebraicNumber>& units,
                               const std::vector<std::vector<long>>& shifts) {
  IntervalMatrix a;
  for (std::size_t i = 0; i < units.size(); ++i) {
    std::vector<Interval> row;
    for (int k = 0; k < emb.t; ++k) {
      const ComplexInterval z = complex_embedding(emb, units[i], k);
      // On the negative real axis the principal value pi is enclosed by
      // pi + arg(-z), which stays continuous across the cut.
      Interval arg = z.im.contains_zero() && z.re.is_negative()
                         ? atan2(-z.im, -z.re) + Interval::pi(z.precision())
                         : atan2(z.im, z.re);
      const long shift = shifts.empty() ? 0 : shifts[i][static_cast<std::size_t>(k)];
      if (shift != 0) arg += Interval(2 * shift, arg.precision()) * Interval::pi(arg.precision());
      row.push_back(std::move(arg));
    }
    a.push_back(std::move(row));
  }
  return a;
}

IntegerMatrix to_integer_matrix(const RationalMatrix& m) {
  IntegerMatrix out;
  for (const auto& row : m) {
    std::vector<Integer> r;
    for (const auto& v : row) {
      if (v.get_den() != 1) return {};
      r.push_back(v.get_num());
    }
    out.push_back(std::move(r));
  }
  return out;
}

// --- exact certificate -----------------------------------------------------

RationalMatrix exterior_power(const RationalMatrix& m, int k) {
  const int n = static_cast<int>(m.size());
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if (std::popcount(mask) == k) subsets.push_back(mask);
  RationalMatrix out(subsets.size(), std::vector<Rational>(subsets.size()));
  for (std::size_t a = 0; a < subsets.size(); ++a) {
    for (std::size_t b = 0; b < subsets.size(); ++b) {
      RationalMatrix minor;
      for (int i = 0; i < n; ++i) {
        if (!(subsets[a] >> i & 1u)) continue;
        std::vector<Rational> row;
        for (int j = 0; j < n; ++j)
          if (subsets[b] >> j & 1u) row.push_back(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        minor.push_back(std::move(row));
      }
      out[a][b] = determinant(std::move(minor));
    }
  }
  return out;
}

// Either "value != 1" (P(1) != 0), or the radius around 0 inside which the
// shifted polynomial has no root but 0.
struct CharacterCertificate {
  bool excludes_one = false;
  Rational radius;
};

CharacterCertificate make_certificate(const Polynomial& p) {
  CharacterCertificate cert;
  if (p.evaluate(1) != 0) {
    cert.excludes_one = true;
    return cert;
  }
  const Polynomial shifted = p.shifted(1);
  const auto& q = shifted.coefficients();
  std::size_t m = 0;
  while (q[m] == 0) ++m;
  Rational q0 = abs(q[m]);
  Rational qmax = 0;
  for (std::size_t i = m + 1; i < q.size(); ++i) qmax = std::max(qmax, Rational(abs(q[i])));
  cert.radius = q0 / (q0 + qmax);
  return cert;
}

bool isolated(const ComplexInterval& v, const Rational& radius) {
  const Interval one(1L, v.precision());
  const Rational re = (v.re - one).magnitude_interval().upper_rational();
  const Rational im = v.im.magnitude_interval().upper_rational();
  return re * re + im * im < radius * radius;
}

}  // namespace

Interval interval_determinant(const IntervalMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return Interval(1L, 64);
  const mpfr_prec_t prec = m[0][0].precision();
  std::vector<Interval> dp(std::size_t{1} << n, Interval(0L, prec));
  dp[0] = Interval(1L, prec);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const int r = std::popcount(mask);
    Interval acc(0L, prec);
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask >> j & 1u)) continue;
      const int pos = std::popcount(mask & ((1u << j) - 1));
      Interval term = m[static_cast<std::size_t>(r - 1)][j] * dp[mask & ~(1u << j)];
      if ((r - 1 + pos) % 2) acc -= term;
      else acc += term;
    }
    dp[mask] = std::move(acc);
  }
  return dp.back();
}

IntervalMatrix verify_admissible_subgroup(const FieldSpec& field, const EmbeddingSet& emb,
                                          const std::vector<AlgebraicNumber>& units) {
  const char* op = "verify_admissible_subgroup";
  emb.require_ot_signature();
  if (static_cast<int>(units.size()) != emb.s)
    fail(ErrorKind::RankMismatch, op,
         "U needs exactly s = " + std::to_string(emb.s) + " generators, got " + std::to_string(units.size()));
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (static_cast<int>(units[i].coords.size()) != field.degree())
      fail(ErrorKind::ConfigError, op, "unit " + std::to_string(i + 1) + " has the wrong number of coordinates");
    if (check_unit(emb, units[i]) != UnitStatus::unit_totally_positive)
      fail(ErrorKind::NotTotallyPositiveUnit, op, units[i].to_string() + " is not a totally positive unit");
    // The only totally positive root of unity is 1, whose log vector is exactly zero.
    if (is_one(field, units[i])) fail(ErrorKind::DegenerateLattice, op, "generator 1 has zero log vector");
  }
  for (EmbeddingSet current = emb;; current = current.refined()) {
    std::vector<LogVector> logs;
    for (const auto& u : units) logs.push_back(log_vector(current, u));
    IntervalMatrix x = lattice_matrix(logs, emb.s);
    if (interval_determinant(x).excludes_zero()) return x;
    if (!current.can_refine())
      fail(ErrorKind::DegenerateLattice, op, "det(X) encloses 0 at the precision cap; units look dependent");
  }
}

OTStructure build_ot_structure(const FieldSpec& field, const EmbeddingSet& emb,
                               const std::vector<AlgebraicNumber>& units) {
  const char* op = "build_ot_structure";
  verify_admissible_subgroup(field, emb, units);

  OTStructure ot;
  ot.s = emb.s;
  ot.t = emb.t;
  ot.field = field;
  ot.units = units;
  for (const auto& u : units) {
    IntegerMatrix m = to_integer_matrix(integral_multiplication_matrix(field, u));
    if (m.empty()) fail(ErrorKind::DeltaNotInvariant, op, "multiplication by " + u.to_string() + " is not integral");
    RationalMatrix q;
    for (const auto& row : m) q.emplace_back(row.begin(), row.end());
    if (abs(determinant(q)) != 1)
      fail(ErrorKind::DeltaNotInvariant, op, "multiplication by " + u.to_string() + " is not unimodular");
    ot.mult_matrices.push_back(std::move(m));
  }
  if (field.degree() <= kCertificateMaxDegree) {
    for (const auto& u : units) {
      const RationalMatrix m = multiplication_matrix(field, u);
      std::vector<Polynomial> polys;
      for (int k = 0; k <= field.degree(); ++k) polys.push_back(characteristic_polynomial(exterior_power(m, k)));
      ot.exterior_charpolys.push_back(std::move(polys));
    }
  }

  for (EmbeddingSet current = emb;; current = current.refined()) {
    try {
      ot.emb = current;
      ot.logs.clear();
      for (const auto& u : units) ot.logs.push_back(log_vector(current, u));
      ot.X = lattice_matrix(ot.logs, ot.s);
      const Interval det = interval_determinant(ot.X);
      IntervalMatrix tail;
      for (const auto& l : ot.logs) tail.emplace_back(l.entries.begin() + ot.s, l.entries.end());
      ot.B = solve_columns(ot.X, det, tail, ot.t);
      ot.C = solve_columns(ot.X, det, argument_matrix(current, units, {}), ot.t);
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PrecisionExhausted || !current.can_refine()) throw;
    }
  }

  const mpfr_prec_t prec = ot.X[0][0].precision();
  const Interval half(Rational(1, 2), prec);
  for (int i = 0; i < ot.s; ++i) {
    const auto& xi = ot.X[static_cast<std::size_t>(i)];
    Interval unimodular(0L, prec);
    for (int j = 0; j < ot.s; ++j) {
      unimodular += xi[static_cast<std::size_t>(j)];
      for (int k = 0; k < ot.t; ++k) unimodular += ot.B[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] * xi[static_cast<std::size_t>(j)];
    }
    if (!unimodular.contains_zero())
      fail(ErrorKind::InternalInconsistency, op, "unimodularity fails for generator " + std::to_string(i + 1));
    for (int k = 0; k < ot.t; ++k) {
      Interval e(0L, prec);
      for (int j = 0; j < ot.s; ++j) e += ot.B[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] * xi[static_cast<std::size_t>(j)];
      const Interval modulus = complex_embedding(ot.emb, units[static_cast<std::size_t>(i)], k).abs();
      if (!modulus.overlaps(exp(half * e)))
        fail(ErrorKind::InternalInconsistency, op, "|sigma_{s+k}(u)| disagrees with exp(psi_k) modulus");
    }
  }
  return ot;
}

IntervalMatrix coefficient_matrix_c(const OTStructure& ot, const std::vector<std::vector<long>>& shifts) {
  const Interval det = interval_determinant(ot.X);
  return solve_columns(ot.X, det, argument_matrix(ot.emb, ot.units, shifts), ot.t);
}

// ---------------------------------------------------------------------------
// Triples

int MultiIndexTriple::size() const noexcept { return std::popcount(J) + std::popcount(K) + std::popcount(L); }

bool MultiIndexTriple::valid(int s, int t) const noexcept {
  return (J >> s) == 0 && (K >> t) == 0 && (L >> t) == 0;
}

MultiIndexTriple MultiIndexTriple::complement(int s, int t) const noexcept {
  const std::uint32_t fs = (1u << s) - 1;
  const std::uint32_t ft = (1u << t) - 1;
  return {fs & ~J, ft & ~K, ft & ~L};
}

std::string MultiIndexTriple::to_string(int s, int t) const {
  auto set = [](std::uint32_t mask, int n) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      if (!first) out += ",";
      out += std::to_string(i + 1);
      first = false;
    }
    return out + "}";
  };
  return "(" + set(J, s) + "," + set(K, t) + "," + set(L, t) + ")";
}

std::vector<MultiIndexTriple> all_triples(int s, int t) {
  std::vector<MultiIndexTriple> out;
  for (std::uint32_t j = 0; j < (1u << s); ++j)
    for (std::uint32_t k = 0; k < (1u << t); ++k)
      for (std::uint32_t l = 0; l < (1u << t); ++l) out.push_back({j, k, l});
  return out;
}

ComplexInterval character_value(const EmbeddingSet& emb, const AlgebraicNumber& u, const MultiIndexTriple& triple) {
  const mpfr_prec_t prec = emb.real_roots.empty() ? emb.complex_roots.front().precision()
                                                  : emb.real_roots.front().precision();
  ComplexInterval v = ComplexInterval::one(prec);
  for (int j = 0; j < emb.s; ++j)
    if (triple.J >> j & 1u) v = real_embedding(emb, u, j) * v;
  for (int k = 0; k < emb.t; ++k) {
    if (!(triple.K >> k & 1u) && !(triple.L >> k & 1u)) continue;
    const ComplexInterval z = complex_embedding(emb, u, k);
    if (triple.K >> k & 1u) v = v * z;
    if (triple.L >> k & 1u) v = v * z.conj();
  }
  return v;
}

ComplexInterval character_value(const OTStructure& ot, int generator, const MultiIndexTriple& triple) {
  return character_value(ot.emb, ot.units.at(static_cast<std::size_t>(generator)), triple);
}

std::string_view to_string(Admissibility a) noexcept {
  switch (a) {
    case Admissibility::admissible: return "Admissible";
    case Admissibility::not_admissible: return "NotAdmissible";
    case Admissibility::uncertain: return "Uncertain";
  }
  return "Unknown";
}

AdmissibilityVerdict is_admissible_triple(const OTStructure& ot, const MultiIndexTriple& triple) {
  AdmissibilityVerdict verdict;
  verdict.precision_bits = ot.emb.precision_bits;
  bool uncertain = false;
  for (int i = 0; i < ot.s && !verdict.witness; ++i) {
    const AlgebraicNumber& u = ot.units[static_cast<std::size_t>(i)];
    EmbeddingSet current = ot.emb;
    LogVector l = ot.logs[static_cast<std::size_t>(i)];
    while (true) {
      const ComplexInterval v = character_value(current, u, triple);
      const mpfr_prec_t prec = v.precision();
      const Interval half(Rational(1, 2), prec);
      Interval g(0L, prec);
      for (int j = 0; j < ot.s; ++j)
        if (triple.J >> j & 1u) g += l.entries[static_cast<std::size_t>(j)];
      for (int k = 0; k < ot.t; ++k) {
        const int count = static_cast<int>(triple.K >> k & 1u) + static_cast<int>(triple.L >> k & 1u);
        if (count) g += Interval(static_cast<long>(count), prec) * half * l.entries[static_cast<std::size_t>(ot.s + k)];
      }
      verdict.precision_bits = std::max(verdict.precision_bits, current.precision_bits);
      if (!v.re.contains(1) || !v.im.contains_zero() || g.excludes_zero()) {
        verdict.witness = AdmissibilityWitness{i, v};
        break;
      }
      if (v.re.width_log2() <= kAdmissibilityWidthLog2 && v.im.width_log2() <= kAdmissibilityWidthLog2) break;
      if (!current.can_refine()) {
        uncertain = true;
        break;
      }
      current = current.refined();
      l = log_vector(current, u);
    }
  }
  if (verdict.witness) verdict.status = Admissibility::not_admissible;
  else verdict.status = uncertain ? Admissibility::uncertain : Admissibility::admissible;

  if (ot.field.degree() <= kCertificateMaxDegree) {
    verdict.certificate = certify_triple(ot, triple);
    verdict.certified = verdict.certificate != Admissibility::uncertain;
  }
  return verdict;
}

Admissibility certify_triple(const OTStructure& ot, const MultiIndexTriple& triple) {
  if (ot.field.degree() > kCertificateMaxDegree) return Admissibility::uncertain;
  const int k = triple.size();
  bool all_isolated = true;
  for (std::size_t i = 0; i < ot.units.size(); ++i) {
    const AlgebraicNumber& u = ot.units[i];
    const CharacterCertificate cert = make_certificate(ot.exterior_charpolys[i][static_cast<std::size_t>(k)]);
    if (cert.excludes_one) return Admissibility::not_admissible;
    EmbeddingSet current = ot.emb;
    bool done = false;
    while (!done) {
      const ComplexInterval v = character_value(current, u, triple);
      if (isolated(v, cert.radius)) {
        done = true;
      } else if (!v.re.contains(1) || !v.im.contains_zero()) {
        // value - 1 is a root of the shifted polynomial bounded away from 0
        return Admissibility::not_admissible;
      } else if (current.can_refine()) {
        current = current.refined();
      } else {
        all_isolated = false;
        done = true;
      }
    }
  }
  return all_isolated ? Admissibility::admissible : Admissibility::uncertain;
}

}  // namespace otcalc
