#include "otcalc/cohomology.hpp"

#include "otcalc/error.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace otcalc {

namespace {

constexpr const char* kModule = "cohomology";

Table zero_table(int n) {
  return Table(static_cast<std::size_t>(n + 1), std::vector<std::size_t>(static_cast<std::size_t>(n + 1), 0));
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

}  // namespace

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

bool AdmissibleSet::contains(const MultiIndexTriple& triple) const {
  return std::binary_search(admissible.begin(), admissible.end(), triple);
}

AdmissibleSet decide_characters(const OTStructure& ot) {
  AdmissibleSet set;
  set.s = ot.s;
  set.t = ot.t;
  std::vector<std::string> undecided;
  for (const auto& triple : all_triples(ot.s, ot.t)) {
    AdmissibilityVerdict v = is_admissible_triple(ot, triple);
    if (v.status == Admissibility::uncertain) undecided.push_back(triple.to_string(ot.s, ot.t));
    if (v.status == Admissibility::admissible) set.admissible.push_back(triple);
    set.verdicts.push_back({triple, std::move(v)});
  }
  if (!undecided.empty()) {
    std::string list;
    for (const auto& u : undecided) list += (list.empty() ? "" : " ") + u;
    throw Error(ErrorKind::UndecidedCharacter, kModule, "decide_characters",
                "character condition undecided at the precision cap for " + list);
  }
  std::sort(set.admissible.begin(), set.admissible.end());
  return set;
}

AdmissibleSet admissible_set(int s, int t, std::vector<MultiIndexTriple> admissible) {
  AdmissibleSet set;
  set.s = s;
  set.t = t;
  std::sort(admissible.begin(), admissible.end());
  set.admissible = std::move(admissible);
  return set;
}

std::vector<BasisElement> dolbeault_basis(const AdmissibleSet& set) {
  std::vector<BasisElement> out;
  for (const auto& triple : set.admissible)
    for (Mask I = 0; I < (Mask{1} << set.s); ++I)
      out.push_back({I, triple, std::popcount(triple.J) + std::popcount(triple.K),
                     std::popcount(I) + std::popcount(triple.L)});
  return out;
}

std::size_t rho_counts(const AdmissibleSet& set, int p1, int p2, int q2) {
  return static_cast<std::size_t>(std::count_if(set.admissible.begin(), set.admissible.end(), [&](const auto& tr) {
    return std::popcount(tr.J) == p1 && std::popcount(tr.K) == p2 && std::popcount(tr.L) == q2;
  }));
}

Table hodge_numbers_rho(const AdmissibleSet& set) {
  Table h = zero_table(set.n());
  for (int p1 = 0; p1 <= set.s; ++p1)
    for (int p2 = 0; p2 <= set.t; ++p2)
      for (int q2 = 0; q2 <= set.t; ++q2) {
        const std::size_t rho = rho_counts(set, p1, p2, q2);
        if (rho == 0) continue;
        for (int q1 = 0; q1 <= set.s; ++q1)
          h[static_cast<std::size_t>(p1 + p2)][static_cast<std::size_t>(q1 + q2)] += binomial(set.s, q1) * rho;
      }
  return h;
}

Table hodge_numbers_enumerated(const AdmissibleSet& set) {
  Table h = zero_table(set.n());
  for (const auto& e : dolbeault_basis(set)) ++h[static_cast<std::size_t>(e.p)][static_cast<std::size_t>(e.q)];
  return h;
}

Table hodge_numbers(const AdmissibleSet& set) {
  Table h = hodge_numbers_rho(set);
  if (h != hodge_numbers_enumerated(set))
    throw Error(ErrorKind::InternalInconsistency, kModule, "hodge_numbers",
                "rho formula disagrees with basis enumeration");
  return h;
}

std::vector<std::size_t> betti_numbers(const AdmissibleSet& set) {
  std::vector<std::size_t> b(static_cast<std::size_t>(2 * set.n() + 1), 0);
  for (const auto& tr : set.admissible) {
    const int base = tr.size();
    for (int k = base; k <= base + set.s; ++k) b[static_cast<std::size_t>(k)] += binomial(set.s, k - base);
  }
  return b;
}

FrolicherReport frolicher_check(const Table& hodge, const std::vector<std::size_t>& betti) {
  FrolicherReport r;
  r.hodge_sums.assign(betti.size(), 0);
  for (std::size_t p = 0; p < hodge.size(); ++p)
    for (std::size_t q = 0; q < hodge[p].size(); ++q)
      if (p + q < r.hodge_sums.size()) r.hodge_sums[p + q] += hodge[p][q];
  r.ok = r.hodge_sums == betti;
  return r;
}

BCTable bc_closed_form_s1(int s, int t) {
  if (t != 1)
    throw Error(ErrorKind::NotTypeS1, kModule, "bc_closed_form_s1",
                "closed-form Bott-Chern table needs t = 1, got t = " + std::to_string(t));
  const FormLayout layout{s, 1};
  const int n = s + 1;
  std::vector<std::vector<std::set<Mask>>> reps(static_cast<std::size_t>(n + 1),
                                                std::vector<std::set<Mask>>(static_cast<std::size_t>(n + 1)));
  const Mask all = (Mask{1} << s) - 1;
  for (Mask sub = 0; sub <= all; ++sub) {
    const int k = std::popcount(sub);
    // alpha_I ^ abar_[s] ^ beta ^ bbar at (|I|+1, s+1), and its conjugate pattern
    reps[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(n)].insert(layout.compose(all, sub, 1, 1));
    reps[static_cast<std::size_t>(n)][static_cast<std::size_t>(k + 1)].insert(layout.compose(sub, all, 1, 1));
  }
  for (int i = 0; i < s; ++i) reps[1][1].insert(layout.alpha(i) | layout.alpha_bar(i));
  reps[0][0].insert(0);

  BCTable table;
  table.dims = zero_table(n);
  table.representatives.assign(static_cast<std::size_t>(n + 1), std::vector<std::vector<Mask>>(static_cast<std::size_t>(n + 1)));
  for (std::size_t p = 0; p <= static_cast<std::size_t>(n); ++p)
    for (std::size_t q = 0; q <= static_cast<std::size_t>(n); ++q) {
      table.representatives[p][q].assign(reps[p][q].begin(), reps[p][q].end());
      table.dims[p][q] = reps[p][q].size();
    }
  return table;
}

BCTable bc_from_structure(const ComplexStructure<ExactScalar>& cs) {
  CohomologyCalculator<ExactScalar> calc(cs);
  BCTable table;
  table.dims = calc.bott_chern_table();
  return table;
}

BCTable bc_from_lie_algebra(const OTStructure& ot, Backend backend, const NumericRankOptions& rank_options) {
  BCTable table;
  ExactStructureInfo info;
  std::optional<Table> exact, numeric;
  std::optional<ComplexStructure<ExactScalar>> cs;
  if (backend != Backend::numeric) {
    cs.emplace(exact_structure(ot, &info));
    CohomologyCalculator<ExactScalar> calc(*cs);
    exact = calc.bott_chern_table();
  }
  if (backend != Backend::exact) {
    const auto ns = numeric_structure(ot);
    CohomologyCalculator<NumericScalar> calc(ns, rank_options);
    numeric = calc.bott_chern_table();
  }
  if (exact && numeric && *exact != *numeric)
    throw Error(ErrorKind::BackendDisagreement, kModule, "bc_from_lie_algebra",
                "exact-generic and numeric Bott-Chern tables differ");
  table.dims = exact ? *exact : *numeric;
  table.experimental = ot.t >= 2;
  table.representatives.assign(table.dims.size(), std::vector<std::vector<Mask>>(table.dims.size()));
  if (ot.t == 1) {
    const BCTable closed = bc_closed_form_s1(ot.s, ot.t);
    if (!cs) cs.emplace(exact_structure(ot, &info));
    for (std::size_t p = 0; p < closed.representatives.size(); ++p)
      for (std::size_t q = 0; q < closed.representatives[p].size(); ++q)
        for (Mask m : closed.representatives[p][q]) {
          if (is_bc_harmonic(*cs, InvariantForm<ExactScalar>::monomial(m))) table.representatives[p][q].push_back(m);
          else table.representatives_harmonic = false;
        }
  }
  return table;
}

std::vector<long> at_deficiency(const Table& bc, const std::vector<std::size_t>& betti, int n) {
  std::vector<long> delta;
  for (int k = 0; k <= 2 * n; ++k) {
    long sum = 0;
    for (int p = std::max(0, k - n); p <= std::min(k, n); ++p) {
      const int q = k - p;
      sum += static_cast<long>(bc[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]);
      sum += static_cast<long>(bc[static_cast<std::size_t>(n - p)][static_cast<std::size_t>(n - q)]);
    }
    delta.push_back(sum - 2 * static_cast<long>(betti[static_cast<std::size_t>(k)]));
  }
  return delta;
}

bool formality_check(const AdmissibleSet& set) {
  const auto basis = dolbeault_basis(set);
  for (const auto& a : basis)
    for (const auto& b : basis) {
      if ((a.I & b.I) || !a.triple.disjoint(b.triple)) continue;  // product vanishes
      if (!set.contains(a.triple.united(b.triple))) return false;
    }
  return true;
}

bool star_closure_check(const AdmissibleSet& set) {
  // The abar block ranges over all subsets, so the complement quadruple is in
  // the basis exactly when the complement triple is admissible.
  for (const auto& e : dolbeault_basis(set))
    if (!set.contains(e.triple.complement(set.s, set.t))) return false;
  return true;
}

bool complement_closure_check(const AdmissibleSet& set) {
  return std::all_of(set.admissible.begin(), set.admissible.end(),
                     [&](const auto& tr) { return set.contains(tr.complement(set.s, set.t)); });
}

bool hodge_star_duality(const Table& hodge) {
  const std::size_t n = hodge.size() - 1;
  for (std::size_t p = 0; p <= n; ++p)
    for (std::size_t q = 0; q <= n; ++q)
      if (hodge[p][q] != hodge[n - p][n - q]) return false;
  return true;
}

bool poincare_duality(const std::vector<std::size_t>& betti) {
  return std::equal(betti.begin(), betti.end(), betti.rbegin());
}

CohomologyReport build_report(const OTStructure& ot, const ReportOptions& options) {
  return build_report(ot, decide_characters(ot), options);
}

CohomologyReport build_report(const OTStructure& ot, const AdmissibleSet& set, const ReportOptions& options) {
  CohomologyReport r;
  r.s = ot.s;
  r.t = ot.t;
  r.betti = betti_numbers(set);
  r.hodge = hodge_numbers(set);
  r.frolicher = frolicher_check(r.hodge, r.betti);
  if (!r.frolicher.ok)
    throw Error(ErrorKind::FrolicherFailure, kModule, "frolicher_check",
                "sum of Hodge numbers (" + join(r.frolicher.hodge_sums) + ") differs from Betti numbers (" +
                    join(r.betti) + ")");
  r.star_closure = star_closure_check(set);
  r.formality = formality_check(set);
  r.hodge_symmetry = {r.hodge[0][1], r.hodge[1][0]};
  if (ot.t == 1) r.bc_closed_form = bc_closed_form_s1(ot.s).dims;
  if (options.bott_chern) {
    r.bc = bc_from_lie_algebra(ot, options.backend, options.rank_options);
    r.at_deficiency = at_deficiency(r.bc->dims, r.betti, ot.n());
  }
  return r;
}

}  // namespace otcalc
