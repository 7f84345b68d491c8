#include "otcalc/cealgebra.hpp"

#include "otcalc/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <type_traits>

namespace otcalc {

namespace {

constexpr const char* kModule = "cealgebra";

ExactScalar scalar_conj(const ExactScalar& x) { return x.conj(); }
NumericScalar scalar_conj(const NumericScalar& x) { return std::conj(x); }

double scalar_abs(const ExactScalar& x) { return std::sqrt(x.norm2().get_d()); }
double scalar_abs(const NumericScalar& x) { return std::abs(x); }

template <class S>
S scalar_from(const Rational& re, const Rational& im = 0) {
  if constexpr (std::is_same_v<S, ExactScalar>) return ExactScalar(re, im);
  else return NumericScalar(re.get_d(), im.get_d());
}

template <class S>
bool vanishes(const InvariantForm<S>& f, double tol) {
  if constexpr (std::is_same_v<S, ExactScalar>) return f.is_zero();
  else return f.max_abs() <= tol;
}

// Numerator in [-2^20, 2^20], denominator in [2^19, 2^20]; raw engine output
// so the values do not depend on the standard library.
Rational generic_rational(std::mt19937_64& rng) {
  const long num = static_cast<long>(rng() % (2 * (1u << 20) + 1)) - (1L << 20);
  const long den = static_cast<long>(rng() % (1u << 19)) + (1L << 19) + 1;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Layout

int FormLayout::p(Mask m) const noexcept {
  const Mask a = m & ((Mask{1} << s) - 1);
  const Mask b = (m >> (2 * s)) & ((Mask{1} << t) - 1);
  return std::popcount(a) + std::popcount(b);
}

int FormLayout::q(Mask m) const noexcept { return std::popcount(m) - p(m); }

std::vector<Mask> FormLayout::monomials(int p_, int q_) const {
  std::vector<Mask> out;
  for (Mask m = 0; m <= full(); ++m)
    if (p(m) == p_ && q(m) == q_) out.push_back(m);
  return out;
}

std::vector<Mask> FormLayout::monomials(int k) const {
  std::vector<Mask> out;
  for (Mask m = 0; m <= full(); ++m)
    if (std::popcount(m) == k) out.push_back(m);
  return out;
}

Mask FormLayout::conjugate(Mask m) const noexcept {
  const Mask lo = (Mask{1} << s) - 1;
  const Mask lt = (Mask{1} << t) - 1;
  const Mask a = m & lo, abar = (m >> s) & lo, b = (m >> (2 * s)) & lt, bbar = (m >> (2 * s + t)) & lt;
  return compose(a, abar, bbar, b);
}

std::string FormLayout::name(Mask m) const {
  if (m == 0) return "1";
  std::string out;
  for (int g = 0; g < generators(); ++g) {
    if (!(m >> g & 1u)) continue;
    if (!out.empty()) out += "^";
    if (g < s) out += "a" + std::to_string(g + 1);
    else if (g < 2 * s) out += "ab" + std::to_string(g - s + 1);
    else if (g < 2 * s + t) out += "b" + std::to_string(g - 2 * s + 1);
    else out += "bb" + std::to_string(g - 2 * s - t + 1);
  }
  return out;
}

int wedge_sign(Mask a, Mask b) noexcept {
  if (a & b) return 0;
  int inversions = 0;
  for (Mask rest = b; rest; rest &= rest - 1) {
    const int g = std::countr_zero(rest);
    inversions += std::popcount(a >> g);
  }
  return inversions % 2 ? -1 : 1;
}

// ---------------------------------------------------------------------------
// Forms

template <class S>
void InvariantForm<S>::add(Mask m, const S& c) {
  if (otcalc::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second = it->second + c;
  if (otcalc::is_zero(it->second)) terms_.erase(it);
}

template <class S>
double InvariantForm<S>::max_abs() const {
  double out = 0.0;
  for (const auto& [m, c] : terms_) out = std::max(out, scalar_abs(c));
  return out;
}

template <class S>
InvariantForm<S> wedge(const InvariantForm<S>& a, const InvariantForm<S>& b) {
  InvariantForm<S> out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      const int sign = wedge_sign(ma, mb);
      if (sign == 0) continue;
      out.add(ma | mb, sign > 0 ? ca * cb : -(ca * cb));
    }
  return out;
}

template <class S>
InvariantForm<S> conjugate(const FormLayout& layout, const InvariantForm<S>& f) {
  InvariantForm<S> out;
  for (const auto& [m, c] : f.terms()) {
    // conj(g_1) ^ ... ^ conj(g_r), sorted into canonical order.
    std::vector<int> images;
    for (int g = 0; g < layout.generators(); ++g)
      if (m >> g & 1u) images.push_back(std::countr_zero(layout.conjugate(Mask{1} << g)));
    int inversions = 0;
    for (std::size_t i = 0; i < images.size(); ++i)
      for (std::size_t j = i + 1; j < images.size(); ++j) inversions += images[i] > images[j];
    const S v = scalar_conj(c);
    out.add(layout.conjugate(m), inversions % 2 ? -v : v);
  }
  return out;
}

template <class S>
InvariantForm<S> conj_hodge_star(const FormLayout& layout, const InvariantForm<S>& f) {
  InvariantForm<S> out;
  for (const auto& [m, c] : f.terms()) {
    const Mask rest = layout.full() & ~m;
    const S v = scalar_conj(c);
    out.add(rest, wedge_sign(m, rest) > 0 ? v : -v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structure

template <class S>
ComplexStructure<S>::ComplexStructure(int s, int t, std::vector<std::vector<S>> psi)
    : layout_{s, t}, psi_(std::move(psi)) {
  const S half = scalar_from<S>(Rational(1, 2));
  const int n = layout_.generators();
  delbar_images_.resize(static_cast<std::size_t>(n));
  del_images_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < s; ++i) {
    const Mask aa = layout_.alpha(i) | layout_.alpha_bar(i);
    delbar_images_[static_cast<std::size_t>(i)].add(aa, half);       // -1/2 abar ^ a
    del_images_[static_cast<std::size_t>(s + i)].add(aa, -half);     // -1/2 a ^ abar
  }
  for (int k = 0; k < t; ++k) {
    const auto b = static_cast<std::size_t>(2 * s + k);
    const auto bb = static_cast<std::size_t>(2 * s + t + k);
    for (int i = 0; i < s; ++i) {
      const S w = psi_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      const S minus_half_w = -(half * w);
      const S minus_half_wbar = -(half * scalar_conj(w));
      delbar_images_[b].add(layout_.alpha_bar(i) | layout_.beta(k), minus_half_w);
      delbar_images_[bb].add(layout_.alpha_bar(i) | layout_.beta_bar(k), minus_half_wbar);
      del_images_[b].add(layout_.alpha(i) | layout_.beta(k), minus_half_w);
      del_images_[bb].add(layout_.alpha(i) | layout_.beta_bar(k), minus_half_wbar);
    }
  }
}

template <class S>
InvariantForm<S> ComplexStructure<S>::apply(const std::vector<InvariantForm<S>>& images,
                                            const InvariantForm<S>& f) const {
  InvariantForm<S> out;
  for (const auto& [m, c] : f.terms()) {
    int position = 0;
    for (Mask rest = m; rest; rest &= rest - 1, ++position) {
      const int g = std::countr_zero(rest);
      const Mask prefix = m & ((Mask{1} << g) - 1);
      const Mask suffix = m & ~((Mask{2} << g) - 1);
      for (const auto& [img, v] : images[static_cast<std::size_t>(g)].terms()) {
        const int s1 = wedge_sign(prefix, img);
        if (s1 == 0) continue;
        const int s2 = wedge_sign(prefix | img, suffix);
        if (s2 == 0) continue;
        const int sign = (position % 2 ? -1 : 1) * s1 * s2;
        const S term = c * v;
        out.add(prefix | img | suffix, sign > 0 ? term : -term);
      }
    }
  }
  return out;
}

template <class S>
SparseVector<S> ComplexStructure<S>::to_sparse(const InvariantForm<S>& f) {
  return SparseVector<S>(f.terms().begin(), f.terms().end());
}

template class InvariantForm<ExactScalar>;
template class InvariantForm<NumericScalar>;
template class ComplexStructure<ExactScalar>;
template class ComplexStructure<NumericScalar>;
template InvariantForm<ExactScalar> wedge(const InvariantForm<ExactScalar>&, const InvariantForm<ExactScalar>&);
template InvariantForm<NumericScalar> wedge(const InvariantForm<NumericScalar>&, const InvariantForm<NumericScalar>&);
template InvariantForm<ExactScalar> conjugate(const FormLayout&, const InvariantForm<ExactScalar>&);
template InvariantForm<NumericScalar> conjugate(const FormLayout&, const InvariantForm<NumericScalar>&);
template InvariantForm<ExactScalar> conj_hodge_star(const FormLayout&, const InvariantForm<ExactScalar>&);
template InvariantForm<NumericScalar> conj_hodge_star(const FormLayout&, const InvariantForm<NumericScalar>&);

// ---------------------------------------------------------------------------
// Backends

ComplexStructure<ExactScalar> exact_structure(const OTStructure& ot, ExactStructureInfo* info, std::uint64_t seed) {
  std::vector<std::vector<Rational>> b(static_cast<std::size_t>(ot.s), std::vector<Rational>(static_cast<std::size_t>(ot.t)));
  const bool experimental = ot.t >= 2;
  for (int i = 0; i < ot.s; ++i) {
    const auto& row = ot.B[static_cast<std::size_t>(i)];
    if (!experimental) {
      if (!row[0].contains(-1))
        throw Error(ErrorKind::InternalInconsistency, kModule, "exact_structure", "b_i1 does not enclose -1 for t = 1");
      b[static_cast<std::size_t>(i)][0] = -1;
      continue;
    }
    Rational sum = 0;
    for (int k = 0; k + 1 < ot.t; ++k) {
      const double mid = row[static_cast<std::size_t>(k)].midpoint();
      Rational v(static_cast<long>(std::llround(std::ldexp(mid, 32))));
      v /= Rational(Integer(1) << 32);
      b[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = v;
      sum += v;
    }
    b[static_cast<std::size_t>(i)][static_cast<std::size_t>(ot.t - 1)] = -1 - sum;
  }
  if (info) info->experimental = experimental;

  std::mt19937_64 rng(seed);
  std::vector<std::vector<ExactScalar>> psi(static_cast<std::size_t>(ot.s));
  for (int i = 0; i < ot.s; ++i)
    for (int k = 0; k < ot.t; ++k)
      psi[static_cast<std::size_t>(i)].emplace_back(b[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] / 2,
                                                    generic_rational(rng));
  return ComplexStructure<ExactScalar>(ot.s, ot.t, std::move(psi));
}

ComplexStructure<NumericScalar> numeric_structure(const OTStructure& ot, const IntervalMatrix* c) {
  const IntervalMatrix& cm = c ? *c : ot.C;
  std::vector<std::vector<NumericScalar>> psi(static_cast<std::size_t>(ot.s));
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t k = 0; k < static_cast<std::size_t>(ot.t); ++k)
      psi[i].emplace_back(ot.B[i][k].midpoint() / 2, cm[i][k].midpoint());
  return ComplexStructure<NumericScalar>(ot.s, ot.t, std::move(psi));
}

ComplexStructure<ExactScalar> synthetic_structure_s1(int s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<ExactScalar>> psi(static_cast<std::size_t>(s));
  for (auto& row : psi) row.emplace_back(Rational(-1, 2), generic_rational(rng));
  return ComplexStructure<ExactScalar>(s, 1, std::move(psi));
}

// ---------------------------------------------------------------------------
// Cohomology

template <class S>
std::size_t CohomologyCalculator<S>::rank(const std::vector<SparseVector<S>>& vectors) const {
  if constexpr (std::is_same_v<S, ExactScalar>) return exact_rank(vectors);
  else return numeric_rank(vectors, options_);
}

template <class S>
std::size_t CohomologyCalculator<S>::rank_delbar(int p, int q) {
  if (!in_range(p, q)) return 0;
  auto [it, inserted] = delbar_.try_emplace({p, q}, 0);
  if (!inserted) return it->second;
  std::vector<SparseVector<S>> v;
  for (Mask m : cs_.layout().monomials(p, q)) v.push_back(cs_.delbar_image(m));
  return it->second = rank(v);
}

template <class S>
std::size_t CohomologyCalculator<S>::rank_d(int k) {
  if (k < 0 || k > cs_.layout().generators()) return 0;
  auto [it, inserted] = d_.try_emplace(k, 0);
  if (!inserted) return it->second;
  std::vector<SparseVector<S>> v;
  for (Mask m : cs_.layout().monomials(k)) {
    const auto f = cs_.d(InvariantForm<S>::monomial(m));
    v.emplace_back(f.terms().begin(), f.terms().end());
  }
  return it->second = rank(v);
}

template <class S>
std::size_t CohomologyCalculator<S>::rank_del_and_delbar(int p, int q) {
  if (!in_range(p, q)) return 0;
  auto [it, inserted] = del_and_delbar_.try_emplace({p, q}, 0);
  if (!inserted) return it->second;
  std::vector<SparseVector<S>> v;
  for (Mask m : cs_.layout().monomials(p, q)) {
    // The two images live in different bidegrees, so their supports are disjoint.
    SparseVector<S> both = cs_.del_image(m);
    const SparseVector<S> rest = cs_.delbar_image(m);
    both.insert(both.end(), rest.begin(), rest.end());
    std::sort(both.begin(), both.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    v.push_back(std::move(both));
  }
  return it->second = rank(v);
}

template <class S>
std::size_t CohomologyCalculator<S>::rank_del_delbar(int p, int q) {
  if (!in_range(p, q)) return 0;
  auto [it, inserted] = del_delbar_.try_emplace({p, q}, 0);
  if (!inserted) return it->second;
  std::vector<SparseVector<S>> v;
  for (Mask m : cs_.layout().monomials(p, q)) {
    const auto f = cs_.del(cs_.delbar(InvariantForm<S>::monomial(m)));
    v.emplace_back(f.terms().begin(), f.terms().end());
  }
  return it->second = rank(v);
}

template <class S>
std::size_t CohomologyCalculator<S>::dolbeault(int p, int q) {
  if (!in_range(p, q)) return 0;
  return cs_.layout().monomials(p, q).size() - rank_delbar(p, q) - rank_delbar(p, q - 1);
}

template <class S>
std::size_t CohomologyCalculator<S>::derham(int k) {
  if (k < 0 || k > cs_.layout().generators()) return 0;
  return cs_.layout().monomials(k).size() - rank_d(k) - rank_d(k - 1);
}

template <class S>
std::size_t CohomologyCalculator<S>::bott_chern(int p, int q) {
  if (!in_range(p, q)) return 0;
  return cs_.layout().monomials(p, q).size() - rank_del_and_delbar(p, q) - rank_del_delbar(p - 1, q - 1);
}

template <class S>
std::vector<std::vector<std::size_t>> CohomologyCalculator<S>::dolbeault_table() {
  const int n = cs_.layout().n();
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(n + 1), std::vector<std::size_t>(static_cast<std::size_t>(n + 1)));
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) out[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = dolbeault(p, q);
  return out;
}

template <class S>
std::vector<std::vector<std::size_t>> CohomologyCalculator<S>::bott_chern_table() {
  const int n = cs_.layout().n();
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(n + 1), std::vector<std::size_t>(static_cast<std::size_t>(n + 1)));
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) out[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = bott_chern(p, q);
  return out;
}

template <class S>
std::vector<std::size_t> CohomologyCalculator<S>::derham_vector() {
  std::vector<std::size_t> out;
  for (int k = 0; k <= cs_.layout().generators(); ++k) out.push_back(derham(k));
  return out;
}

template class CohomologyCalculator<ExactScalar>;
template class CohomologyCalculator<NumericScalar>;

std::size_t cohomology_dim(const OTStructure& ot, CohomologyFlavor flavor, int p, int q, Backend backend) {
  auto run = [&](auto& calc) -> std::size_t {
    switch (flavor) {
      case CohomologyFlavor::dolbeault: return calc.dolbeault(p, q);
      case CohomologyFlavor::derham: return calc.derham(p);
      case CohomologyFlavor::bottchern: return calc.bott_chern(p, q);
    }
    return 0;
  };
  std::optional<std::size_t> exact, numeric;
  if (backend != Backend::numeric) {
    const auto cs = exact_structure(ot);
    CohomologyCalculator<ExactScalar> calc(cs);
    exact = run(calc);
  }
  if (backend != Backend::exact) {
    const auto cs = numeric_structure(ot);
    CohomologyCalculator<NumericScalar> calc(cs);
    numeric = run(calc);
  }
  if (exact && numeric && *exact != *numeric)
    throw Error(ErrorKind::BackendDisagreement, kModule, "cohomology_dim",
                "exact-generic backend gives " + std::to_string(*exact) + ", numeric backend gives " +
                    std::to_string(*numeric));
  return exact ? *exact : *numeric;
}

template <class S>
bool is_bc_harmonic(const ComplexStructure<S>& cs, const InvariantForm<S>& f, double tol) {
  return vanishes(cs.del(f), tol) && vanishes(cs.delbar(f), tol) && vanishes(cs.del(cs.delbar(cs.star(f))), tol);
}

template <class S>
DSquaredReport d_squared_scan(const ComplexStructure<S>& cs, double tol) {
  DSquaredReport r;
  for (Mask m = 0; m <= cs.layout().full(); ++m) {
    const auto f = InvariantForm<S>::monomial(m);
    const auto df = cs.del(f);
    const auto dbf = cs.delbar(f);
    r.del_squared = r.del_squared && vanishes(cs.del(df), tol);
    r.delbar_squared = r.delbar_squared && vanishes(cs.delbar(dbf), tol);
    r.anticommute = r.anticommute && vanishes(cs.del(dbf) + cs.delbar(df), tol);
  }
  return r;
}

template bool is_bc_harmonic(const ComplexStructure<ExactScalar>&, const InvariantForm<ExactScalar>&, double);
template bool is_bc_harmonic(const ComplexStructure<NumericScalar>&, const InvariantForm<NumericScalar>&, double);
template DSquaredReport d_squared_scan(const ComplexStructure<ExactScalar>&, double);
template DSquaredReport d_squared_scan(const ComplexStructure<NumericScalar>&, double);

}  // namespace otcalc
