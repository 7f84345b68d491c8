#pragma once

// The invariant double complex on alpha_i, abar_i, beta_k, bbar_k: wedge,
// conjugation, del, delbar, the conjugate Hodge star, and rank-based
// cohomology over an exact or a numeric scalar backend.

#include "otcalc/linalg.hpp"
#include "otcalc/otdata.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace otcalc {

using Mask = std::uint32_t;

/// Generator bits: alpha_i -> i, abar_i -> s+i, beta_k -> 2s+k,
/// bbar_k -> 2s+t+k (0-based). A monomial is the wedge of its generators in
/// ascending bit order.
struct FormLayout {
  int s = 0;
  int t = 0;

  int n() const noexcept { return s + t; }
  int generators() const noexcept { return 2 * (s + t); }
  Mask full() const noexcept { return (Mask{1} << generators()) - 1; }

  Mask alpha(int i) const noexcept { return Mask{1} << i; }
  Mask alpha_bar(int i) const noexcept { return Mask{1} << (s + i); }
  Mask beta(int k) const noexcept { return Mask{1} << (2 * s + k); }
  Mask beta_bar(int k) const noexcept { return Mask{1} << (2 * s + t + k); }

  /// Monomial from the subsets I (abar block), J (alpha block), K (beta), L (bbar).
  Mask compose(Mask I, Mask J, Mask K, Mask L) const noexcept {
    return J | (I << s) | (K << (2 * s)) | (L << (2 * s + t));
  }

  int p(Mask m) const noexcept;
  int q(Mask m) const noexcept;
  /// All monomials of bidegree (p, q), ascending.
  std::vector<Mask> monomials(int p, int q) const;
  /// All monomials of total degree k, ascending.
  std::vector<Mask> monomials(int k) const;
  /// Swaps alpha <-> abar and beta <-> bbar.
  Mask conjugate(Mask m) const noexcept;
  std::string name(Mask m) const;
};

/// Sign of e_a ^ e_b against e_{a|b}; 0 when a and b share a generator.
int wedge_sign(Mask a, Mask b) noexcept;

inline bool is_zero(const ExactScalar& x) { return x.is_zero(); }
inline bool is_zero(const NumericScalar& x) { return x == NumericScalar(0.0, 0.0); }
inline ExactScalar conj(const ExactScalar& x) { return x.conj(); }

template <class S>
class InvariantForm {
 public:
  InvariantForm() = default;
  static InvariantForm monomial(Mask m, S c = S(1)) {
    InvariantForm f;
    f.add(m, c);
    return f;
  }

  const std::map<Mask, S>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  void add(Mask m, const S& c);

  friend InvariantForm operator+(InvariantForm a, const InvariantForm& b) {
    for (const auto& [m, c] : b.terms_) a.add(m, c);
    return a;
  }
  friend InvariantForm operator-(InvariantForm a, const InvariantForm& b) {
    for (const auto& [m, c] : b.terms_) a.add(m, -c);
    return a;
  }
  friend InvariantForm operator*(const S& c, const InvariantForm& f) {
    InvariantForm out;
    for (const auto& [m, v] : f.terms_) out.add(m, c * v);
    return out;
  }
  friend bool operator==(const InvariantForm& a, const InvariantForm& b) { return a.terms_ == b.terms_; }

  /// Largest coefficient modulus (as double), 0 for the zero form.
  double max_abs() const;

 private:
  std::map<Mask, S> terms_;
};

template <class S>
InvariantForm<S> wedge(const InvariantForm<S>& a, const InvariantForm<S>& b);
template <class S>
InvariantForm<S> conjugate(const FormLayout& layout, const InvariantForm<S>& f);
/// Conjugate-linear star with e_S ^ star(e_S) = vol, vol the full monomial.
template <class S>
InvariantForm<S> conj_hodge_star(const FormLayout& layout, const InvariantForm<S>& f);

/// Structure constants psi[i][k] = b_ik / 2 + i c_ik and the operators they define.
template <class S>
class ComplexStructure {
 public:
  ComplexStructure(int s, int t, std::vector<std::vector<S>> psi);

  const FormLayout& layout() const noexcept { return layout_; }
  const std::vector<std::vector<S>>& psi() const noexcept { return psi_; }

  InvariantForm<S> delbar(const InvariantForm<S>& f) const { return apply(delbar_images_, f); }
  InvariantForm<S> del(const InvariantForm<S>& f) const { return apply(del_images_, f); }
  InvariantForm<S> d(const InvariantForm<S>& f) const { return del(f) + delbar(f); }
  InvariantForm<S> star(const InvariantForm<S>& f) const { return conj_hodge_star(layout_, f); }
  InvariantForm<S> conj(const InvariantForm<S>& f) const { return conjugate(layout_, f); }

  /// Images of one monomial, as sparse vectors indexed by mask.
  SparseVector<S> delbar_image(Mask m) const { return to_sparse(delbar(InvariantForm<S>::monomial(m))); }
  SparseVector<S> del_image(Mask m) const { return to_sparse(del(InvariantForm<S>::monomial(m))); }

 private:
  static SparseVector<S> to_sparse(const InvariantForm<S>& f);
  InvariantForm<S> apply(const std::vector<InvariantForm<S>>& images, const InvariantForm<S>& f) const;

  FormLayout layout_;
  std::vector<std::vector<S>> psi_;
  std::vector<InvariantForm<S>> delbar_images_;  // per generator bit
  std::vector<InvariantForm<S>> del_images_;
};

extern template class InvariantForm<ExactScalar>;
extern template class InvariantForm<NumericScalar>;
extern template class ComplexStructure<ExactScalar>;
extern template class ComplexStructure<NumericScalar>;

inline constexpr std::uint64_t kGenericSeed = 0x6f74'6361'6c63'0001ULL;

struct ExactStructureInfo {
  bool experimental = false;  // b was rationalized (t >= 2)
};

/// b from the OT datum (exactly -1 for t = 1; rationalized on a 2^-32 grid
/// with row sums -1 otherwise), c replaced by seeded generic rationals.
ComplexStructure<ExactScalar> exact_structure(const OTStructure& ot, ExactStructureInfo* info = nullptr,
                                              std::uint64_t seed = kGenericSeed);
/// b and c from the OT datum (interval midpoints). A custom C may be passed
/// to probe other argument branches.
ComplexStructure<NumericScalar> numeric_structure(const OTStructure& ot, const IntervalMatrix* c = nullptr);
/// Type (s, 1) with b = -1 and generic c, no number field needed.
ComplexStructure<ExactScalar> synthetic_structure_s1(int s, std::uint64_t seed = kGenericSeed);

enum class CohomologyFlavor { dolbeault, derham, bottchern };
enum class Backend { exact, numeric, both };

/// Rank-nullity on the finite complex, with ranks cached per operator and degree.
template <class S>
class CohomologyCalculator {
 public:
  explicit CohomologyCalculator(const ComplexStructure<S>& cs, NumericRankOptions options = {})
      : cs_(cs), options_(options) {}

  std::size_t dolbeault(int p, int q);
  std::size_t derham(int k);
  std::size_t bott_chern(int p, int q);
  /// [p][q], 0 <= p, q <= n.
  std::vector<std::vector<std::size_t>> dolbeault_table();
  std::vector<std::vector<std::size_t>> bott_chern_table();
  std::vector<std::size_t> derham_vector();

 private:
  std::size_t rank(const std::vector<SparseVector<S>>& vectors) const;
  std::size_t rank_delbar(int p, int q);        // A^{p,q} -> A^{p,q+1}
  std::size_t rank_d(int k);                    // A^k -> A^{k+1}
  std::size_t rank_del_and_delbar(int p, int q);  // (del, delbar) on A^{p,q}
  std::size_t rank_del_delbar(int p, int q);    // A^{p,q} -> A^{p+1,q+1}
  bool in_range(int p, int q) const { return p >= 0 && q >= 0 && p <= cs_.layout().n() && q <= cs_.layout().n(); }

  const ComplexStructure<S>& cs_;
  NumericRankOptions options_;
  std::map<std::pair<int, int>, std::size_t> delbar_, del_and_delbar_, del_delbar_;
  std::map<int, std::size_t> d_;
};

extern template class CohomologyCalculator<ExactScalar>;
extern template class CohomologyCalculator<NumericScalar>;

/// Errors: BackendDisagreement (backend = both).
std::size_t cohomology_dim(const OTStructure& ot, CohomologyFlavor flavor, int p, int q, Backend backend);

/// del f = delbar f = 0 and del delbar star f = 0 (numeric: up to tol).
template <class S>
bool is_bc_harmonic(const ComplexStructure<S>& cs, const InvariantForm<S>& f, double tol = 1e-9);

struct DSquaredReport {
  bool del_squared = true;
  bool delbar_squared = true;
  bool anticommute = true;
  bool ok() const noexcept { return del_squared && delbar_squared && anticommute; }
};

/// del^2, delbar^2, del delbar + delbar del on every monomial.
template <class S>
DSquaredReport d_squared_scan(const ComplexStructure<S>& cs, double tol = 1e-9);

}  // namespace otcalc
