#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "otcalc/cohomology.hpp"

#include <bit>
#include "otcalc/error.hpp"
#include "otcalc/pipeline.hpp"

using namespace otcalc;

namespace {

std::size_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 0; i < k; ++i) r = r * static_cast<std::size_t>(n - i) / static_cast<std::size_t>(i + 1);
  return r;
}

// Admissible set {empty, full} of every type (s, 1) field.
AdmissibleSet generic_s1(int s) { return admissible_set(s, 1, {{}, {(1u << s) - 1, 1, 1}}); }

Table closed_hodge(int s) {
  const int n = s + 1;
  Table h(static_cast<std::size_t>(n + 1), std::vector<std::size_t>(static_cast<std::size_t>(n + 1)));
  for (int q = 0; q <= n; ++q) {
    h[0][static_cast<std::size_t>(q)] = choose(s, q);
    h[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)] = choose(s, q - 1);
  }
  return h;
}

std::vector<std::size_t> closed_betti(int s) {
  std::vector<std::size_t> b(static_cast<std::size_t>(2 * s + 3));
  for (int k = 0; k <= 2 * s + 2; ++k) b[static_cast<std::size_t>(k)] = choose(s, k) + choose(s, k - s - 2);
  return b;
}

}  // namespace

TEST_CASE("basis and rho counts") {
  const AdmissibleSet set = generic_s1(2);
  const auto basis = dolbeault_basis(set);
  CHECK(basis.size() == 8);  // 2^{s+1}
  for (const auto& e : basis)
    if (e.triple == MultiIndexTriple{}) {
      CHECK(e.p == 0);
      CHECK(e.q == std::popcount(e.I));
    }
  CHECK(rho_counts(set, 0, 0, 0) == 1);
  CHECK(rho_counts(set, 2, 1, 1) == 1);
  CHECK(rho_counts(set, 1, 0, 0) == 0);
}

TEST_CASE("Hodge and Betti numbers against the closed forms") {
  for (int s = 1; s <= 5; ++s) {
    CAPTURE(s);
    const AdmissibleSet set = generic_s1(s);
    CHECK(hodge_numbers(set) == closed_hodge(s));
    CHECK(hodge_numbers_rho(set) == hodge_numbers_enumerated(set));
    CHECK(betti_numbers(set) == closed_betti(s));
    CHECK(frolicher_check(hodge_numbers(set), betti_numbers(set)).ok);
    CHECK(formality_check(set));
    CHECK(star_closure_check(set));
    CHECK(complement_closure_check(set));
    CHECK(hodge_star_duality(hodge_numbers(set)));
    CHECK(poincare_duality(betti_numbers(set)));
  }
}

TEST_CASE("Lie-algebra cohomology matches the finite model for t = 1") {
  for (int s = 1; s <= 3; ++s) {
    CAPTURE(s);
    const auto cs = synthetic_structure_s1(s);
    CohomologyCalculator<ExactScalar> calc(cs);
    CHECK(calc.dolbeault_table() == closed_hodge(s));
    CHECK(calc.derham_vector() == closed_betti(s));
  }
}

TEST_CASE("closed-form Bott-Chern table") {
  const BCTable one = bc_closed_form_s1(1);
  const Table expected = {{1, 0, 0}, {0, 1, 1}, {0, 1, 1}};
  CHECK(one.dims == expected);
  const BCTable two = bc_closed_form_s1(2);
  CHECK(two.dims[1][1] == 2);
  CHECK(two.dims[1][3] == 1);
  CHECK(two.dims[0][0] == 1);
  CHECK(two.dims[2][0] == 0);
  CHECK_THROWS_AS(bc_closed_form_s1(1, 2), Error);
}

TEST_CASE("Lie-algebra Bott-Chern for s = 1 equals the closed form") {
  const auto cs = synthetic_structure_s1(1);
  CHECK(bc_from_structure(cs).dims == bc_closed_form_s1(1).dims);
}

TEST_CASE("Lie-algebra Bott-Chern for s = 2 has classes beyond the closed form") {
  // a1 ^ a2 ^ (ab1 + ab2) is del- and delbar-closed and not del delbar-exact.
  const auto cs = synthetic_structure_s1(2);
  const FormLayout& L = cs.layout();
  using Form = InvariantForm<ExactScalar>;
  const Form f = Form::monomial(L.alpha(0) | L.alpha(1) | L.alpha_bar(0)) +
                 Form::monomial(L.alpha(0) | L.alpha(1) | L.alpha_bar(1));
  CHECK(cs.del(f).is_zero());
  CHECK(cs.delbar(f).is_zero());
  const Table bc = bc_from_structure(cs).dims;
  CHECK(bc[1][1] == 2);
  CHECK(bc[2][1] == 1);
  CHECK(bc[1][2] == 1);
  CHECK(bc[2][2] == 1);
}

TEST_CASE("Angella-Tomassini deficiency") {
  const auto betti = closed_betti(1);
  CHECK(at_deficiency(bc_closed_form_s1(1).dims, betti, 2) == std::vector<long>{0, 0, 2, 0, 0});
  CHECK(at_deficiency(bc_closed_form_s1(2).dims, closed_betti(2), 3) == std::vector<long>{0, 0, 2, 0, 2, 0, 0});
}

TEST_CASE("formality fails when a product leaves the set") {
  // {({1},{},{}), ({2},{},{})} is not closed under union
  const AdmissibleSet set = admissible_set(2, 1, {{}, {1, 0, 0}, {2, 0, 0}});
  CHECK_FALSE(formality_check(set));
  CHECK_FALSE(complement_closure_check(set));
}

TEST_CASE("report on the cubic preset") {
  const OTStructure ot = prepare(preset_config("inoue-cubic"));
  const CohomologyReport r = build_report(ot);
  CHECK(r.hodge == closed_hodge(1));
  CHECK(r.betti == closed_betti(1));
  REQUIRE(r.bc);
  CHECK(r.bc->dims == bc_closed_form_s1(1).dims);
  CHECK(r.bc->representatives_harmonic);
  CHECK(r.hodge_symmetry.h01 == 1);
  CHECK(r.hodge_symmetry.h10 == 0);
  CHECK(cohomology_dim(ot, CohomologyFlavor::dolbeault, 0, 1, Backend::both) == 1);
  CHECK(cohomology_dim(ot, CohomologyFlavor::derham, 1, 0, Backend::both) == 1);
  CHECK(cohomology_dim(ot, CohomologyFlavor::bottchern, 1, 1, Backend::both) == 1);
}

TEST_CASE("undecided characters are reported") {
  RunConfig config = preset_config("inoue-cubic");
  config.precision_bits = 8;
  config.precision_cap = 8;
  const OTStructure ot = prepare(config);
  try {
    decide_characters(ot);
    FAIL("expected UndecidedCharacter");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UndecidedCharacter);
    CHECK(std::string(e.what()).find("({1},{1},{1})") != std::string::npos);
  }
}
