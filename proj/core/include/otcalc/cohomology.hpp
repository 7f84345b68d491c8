#pragma once

// Finite models from admissibility data: Betti, Hodge and Bott-Chern tables
// and the consistency checks run on them.

#include "otcalc/cealgebra.hpp"
#include "otcalc/otdata.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace otcalc {

/// [p][q] with 0 <= p, q <= n.
using Table = std::vector<std::vector<std::size_t>>;

struct TripleVerdict {
  MultiIndexTriple triple;
  AdmissibilityVerdict verdict;
};

/// Every triple decided; `admissible` is sorted.
struct AdmissibleSet {
  int s = 0;
  int t = 0;
  std::vector<TripleVerdict> verdicts;
  std::vector<MultiIndexTriple> admissible;

  int n() const noexcept { return s + t; }
  bool contains(const MultiIndexTriple& triple) const;
};

/// Errors: UndecidedCharacter when any triple is Uncertain.
AdmissibleSet decide_characters(const OTStructure& ot);
/// Direct construction for synthetic data (no number field).
AdmissibleSet admissible_set(int s, int t, std::vector<MultiIndexTriple> admissible);

/// abar_I ^ alpha_J ^ beta_K ^ bbar_L with (J, K, L) admissible.
struct BasisElement {
  Mask I = 0;
  MultiIndexTriple triple;
  int p = 0;
  int q = 0;
};

std::vector<BasisElement> dolbeault_basis(const AdmissibleSet& set);
std::size_t rho_counts(const AdmissibleSet& set, int p1, int p2, int q2);
/// rho formula, cross-checked against counting dolbeault_basis by bidegree.
/// Errors: InternalInconsistency on mismatch.
Table hodge_numbers(const AdmissibleSet& set);
/// Same formula without the cross-check.
Table hodge_numbers_rho(const AdmissibleSet& set);
Table hodge_numbers_enumerated(const AdmissibleSet& set);
std::vector<std::size_t> betti_numbers(const AdmissibleSet& set);

struct FrolicherReport {
  bool ok = true;
  std::vector<std::size_t> hodge_sums;  // sum_{p+q=k} h^{p,q}
};
FrolicherReport frolicher_check(const Table& hodge, const std::vector<std::size_t>& betti);

struct BCTable {
  Table dims;
  std::vector<std::vector<std::vector<Mask>>> representatives;  // [p][q], monomials
  bool experimental = false;
  bool representatives_harmonic = true;
};

/// Errors: NotTypeS1 unless t = 1.
BCTable bc_closed_form_s1(int s, int t = 1);
/// Rank-nullity on the Lie-algebra complex. For t = 1 the closed-form
/// representatives are checked with is_bc_harmonic; for t >= 2 the table is
/// flagged experimental. Errors: BackendDisagreement.
BCTable bc_from_lie_algebra(const OTStructure& ot, Backend backend = Backend::both,
                            const NumericRankOptions& rank_options = {});
BCTable bc_from_structure(const ComplexStructure<ExactScalar>& cs);

std::vector<long> at_deficiency(const Table& bc, const std::vector<std::size_t>& betti, int n);

bool formality_check(const AdmissibleSet& set);
bool star_closure_check(const AdmissibleSet& set);
/// Complement of every admissible triple is admissible.
bool complement_closure_check(const AdmissibleSet& set);

bool hodge_star_duality(const Table& hodge);
bool poincare_duality(const std::vector<std::size_t>& betti);

struct HodgeSymmetry {
  std::size_t h01 = 0;
  std::size_t h10 = 0;
  bool violated() const noexcept { return h01 != h10; }
};

struct CohomologyReport {
  int s = 0;
  int t = 0;
  std::vector<std::size_t> betti;
  Table hodge;
  std::optional<BCTable> bc;
  std::optional<Table> bc_closed_form;  // t = 1
  FrolicherReport frolicher;
  bool star_closure = false;
  bool formality = false;
  HodgeSymmetry hodge_symmetry;
  std::vector<long> at_deficiency;  // empty without bc
};

struct ReportOptions {
  bool bott_chern = true;
  Backend backend = Backend::both;
  NumericRankOptions rank_options;
};

/// Errors: UndecidedCharacter, FrolicherFailure, BackendDisagreement.
CohomologyReport build_report(const OTStructure& ot, const ReportOptions& options = {});
CohomologyReport build_report(const OTStructure& ot, const AdmissibleSet& set, const ReportOptions& options = {});

std::size_t binomial(int n, int k);

}  // namespace otcalc
