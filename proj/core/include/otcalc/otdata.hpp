#pragma once

// The OT datum: unit subgroup U, lattice matrix X of projected logs, the
// coefficient matrices B and C, and the character condition on index triples.

#include "otcalc/numfield.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace otcalc {

using IntervalMatrix = std::vector<std::vector<Interval>>;
using IntegerMatrix = std::vector<std::vector<Integer>>;

struct OTStructure {
  int s = 0;
  int t = 0;
  FieldSpec field;
  EmbeddingSet emb;
  std::vector<AlgebraicNumber> units;
  IntervalMatrix X;  // s x s, row i = first s entries of l(u_i)
  IntervalMatrix B;  // s x t
  IntervalMatrix C;  // s x t, from principal arguments in (-pi, pi]
  std::vector<IntegerMatrix> mult_matrices;
  std::vector<LogVector> logs;
  // [i][k]: det(z - wedge^k M_{u_i}); filled when the degree allows certificates.
  std::vector<std::vector<Polynomial>> exterior_charpolys;

  int n() const noexcept { return s + t; }
};

/// Checks U and returns X. Errors: RankMismatch, NotTotallyPositiveUnit,
/// DegenerateLattice, NotIntegral, SignatureUnsupported.
IntervalMatrix verify_admissible_subgroup(const FieldSpec& field, const EmbeddingSet& emb,
                                          const std::vector<AlgebraicNumber>& units);

/// Errors: those of verify_admissible_subgroup, DeltaNotInvariant,
/// PrecisionExhausted.
OTStructure build_ot_structure(const FieldSpec& field, const EmbeddingSet& emb,
                               const std::vector<AlgebraicNumber>& units);

/// C re-derived with arguments arg sigma_{s+k}(u_i) + 2 pi shifts[i][k].
IntervalMatrix coefficient_matrix_c(const OTStructure& ot, const std::vector<std::vector<long>>& shifts);

/// Interval determinant by expansion over column subsets.
Interval interval_determinant(const IntervalMatrix& m);

/// (J, K, L) as bitmasks: bit j of J is sigma_{j+1}, bit k of K is
/// sigma_{s+k+1}, bit l of L is its conjugate.
struct MultiIndexTriple {
  std::uint32_t J = 0;
  std::uint32_t K = 0;
  std::uint32_t L = 0;

  friend bool operator==(const MultiIndexTriple&, const MultiIndexTriple&) = default;
  friend auto operator<=>(const MultiIndexTriple&, const MultiIndexTriple&) = default;

  int size() const noexcept;
  bool valid(int s, int t) const noexcept;
  MultiIndexTriple complement(int s, int t) const noexcept;
  bool disjoint(const MultiIndexTriple& o) const noexcept {
    return (J & o.J) == 0 && (K & o.K) == 0 && (L & o.L) == 0;
  }
  MultiIndexTriple united(const MultiIndexTriple& o) const noexcept { return {J | o.J, K | o.K, L | o.L}; }
  std::string to_string(int s, int t) const;
};

/// All 2^s 4^t triples, ordered by (J, K, L) as integers.
std::vector<MultiIndexTriple> all_triples(int s, int t);

ComplexInterval character_value(const OTStructure& ot, int generator, const MultiIndexTriple& triple);
ComplexInterval character_value(const EmbeddingSet& emb, const AlgebraicNumber& u, const MultiIndexTriple& triple);

enum class Admissibility { admissible, not_admissible, uncertain };
std::string_view to_string(Admissibility a) noexcept;

struct AdmissibilityWitness {
  int generator = 0;
  ComplexInterval value;
};

struct AdmissibilityVerdict {
  Admissibility status = Admissibility::uncertain;
  std::optional<AdmissibilityWitness> witness;
  // Exact route (degree <= 6): annihilating polynomial of the character value.
  bool certified = false;
  Admissibility certificate = Admissibility::uncertain;
  unsigned precision_bits = 0;  // precision at which the interval route decided
};

inline constexpr long kAdmissibilityWidthLog2 = -64;
inline constexpr int kCertificateMaxDegree = 6;

AdmissibilityVerdict is_admissible_triple(const OTStructure& ot, const MultiIndexTriple& triple);

/// Exact route alone: characteristic polynomial of the |T|-th exterior power
/// of the multiplication matrix of each generator. Uncertain when the degree
/// exceeds the limit or the enclosure cannot isolate the root at the cap.
Admissibility certify_triple(const OTStructure& ot, const MultiIndexTriple& triple);

}  // namespace otcalc
