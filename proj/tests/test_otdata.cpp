#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "otcalc/error.hpp"
#include "otcalc/otdata.hpp"
#include "otcalc/pipeline.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace otcalc;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InternalInconsistency;
}

OTStructure cubic(unsigned bits = 128, unsigned cap = kDefaultPrecisionCap) {
  const FieldSpec f = parse_field({-1, -1, 0, 1});
  const EmbeddingSet emb = compute_embeddings(f, bits, cap);
  return build_ot_structure(f, emb, {theta(f)});
}

// Roots of x^3 - x - 1 in double: r by bisection, then x^2 + r x + (r^2 - 1).
struct CubicRoots {
  double r;
  std::complex<double> z;
};

CubicRoots cubic_roots() {
  double lo = 1, hi = 2;
  for (int i = 0; i < 200; ++i) {
    const double m = (lo + hi) / 2;
    (m * m * m - m - 1 < 0 ? lo : hi) = m;
  }
  const double r = lo;
  const double disc = r * r - 4 * (r * r - 1);
  return {r, {-r / 2, std::sqrt(-disc) / 2}};
}

}  // namespace

TEST_CASE("triples") {
  CHECK(all_triples(1, 1).size() == 8);
  CHECK(all_triples(2, 1).size() == 16);
  CHECK(all_triples(1, 2).size() == 32);
  const MultiIndexTriple full{1, 1, 1};
  CHECK(full.to_string(1, 1) == "({1},{1},{1})");
  CHECK(MultiIndexTriple{}.to_string(1, 1) == "({},{},{})");
  CHECK(MultiIndexTriple{}.complement(1, 1) == full);
  CHECK(MultiIndexTriple{1, 0, 1}.complement(2, 1) == MultiIndexTriple{2, 1, 0});
  CHECK(full.size() == 3);
  CHECK(MultiIndexTriple{1, 0, 0}.disjoint({2, 1, 0}));
}

TEST_CASE("interval determinant matches a double determinant") {
  const std::vector<std::vector<long>> m = {{2, -1, 0, 3}, {1, 4, -2, 0}, {0, 5, 1, -1}, {3, 0, 2, 2}};
  IntervalMatrix im;
  RationalMatrix rm;
  for (const auto& row : m) {
    im.emplace_back();
    rm.emplace_back();
    for (long v : row) {
      im.back().emplace_back(v, 128);
      rm.back().emplace_back(v);
    }
  }
  CHECK(interval_determinant(im).contains(determinant(rm)));
}

TEST_CASE("lattice of the cubic preset") {
  const OTStructure ot = cubic();
  const auto roots = cubic_roots();
  CHECK(std::abs(ot.X[0][0].midpoint() - std::log(roots.r)) < 1e-12);
  CHECK(ot.B[0][0].contains(-1));
  // X C = arguments
  CHECK(std::abs(ot.C[0][0].midpoint() - std::arg(roots.z) / std::log(roots.r)) < 1e-12);
  REQUIRE(ot.mult_matrices.size() == 1);
  RationalMatrix m;
  for (const auto& row : ot.mult_matrices[0]) m.emplace_back(row.begin(), row.end());
  CHECK(abs(determinant(m)) == 1);
}

TEST_CASE("subgroup errors") {
  const FieldSpec f = parse_field({-1, -1, 0, 1});
  const EmbeddingSet emb = compute_embeddings(f);
  CHECK(kind_of([&] { verify_admissible_subgroup(f, emb, {rational_number(f, 1)}); }) == ErrorKind::DegenerateLattice);
  CHECK(kind_of([&] { verify_admissible_subgroup(f, emb, {theta(f), power(f, theta(f), 2)}); }) ==
        ErrorKind::RankMismatch);
  CHECK(kind_of([&] { verify_admissible_subgroup(f, emb, {rational_number(f, -1)}); }) ==
        ErrorKind::NotTotallyPositiveUnit);
}

TEST_CASE("character values") {
  const OTStructure ot = cubic();
  const ComplexInterval empty = character_value(ot, 0, {});
  CHECK(empty.re.is_point());
  CHECK(empty.contains(1, 0));
  CHECK(character_value(ot, 0, {1, 1, 1}).contains(1, 0));
  const ComplexInterval real = character_value(ot, 0, {1, 0, 0});
  CHECK(std::abs(real.re.midpoint() - cubic_roots().r) < 1e-12);
}

TEST_CASE("admissibility on the cubic preset agrees with a double oracle") {
  const OTStructure ot = cubic();
  const auto roots = cubic_roots();
  for (const auto& tr : all_triples(1, 1)) {
    std::complex<double> v = 1;
    if (tr.J) v *= roots.r;
    if (tr.K) v *= roots.z;
    if (tr.L) v *= std::conj(roots.z);
    const bool oracle = std::abs(v - 1.0) < 1e-9;
    const AdmissibilityVerdict verdict = is_admissible_triple(ot, tr);
    CAPTURE(tr.to_string(1, 1));
    CHECK(verdict.status == (oracle ? Admissibility::admissible : Admissibility::not_admissible));
    CHECK(verdict.certified);
    CHECK(verdict.certificate == verdict.status);
    CHECK(certify_triple(ot, tr) == verdict.status);
  }
  const AdmissibilityVerdict v = is_admissible_triple(ot, {1, 0, 0});
  REQUIRE(v.witness);
  CHECK(v.witness->generator == 0);
  CHECK(to_string(v.status) == "NotAdmissible");
}

TEST_CASE("truncated precision leaves the full triple uncertain") {
  const OTStructure ot = cubic(8, 8);
  CHECK(is_admissible_triple(ot, {1, 1, 1}).status == Admissibility::uncertain);
  CHECK(is_admissible_triple(ot, {1, 0, 0}).status == Admissibility::not_admissible);
}

TEST_CASE("argument branches") {
  const OTStructure ot = cubic();
  const IntervalMatrix shifted = coefficient_matrix_c(ot, {{1}});
  CHECK(std::abs(shifted[0][0].midpoint() - ot.C[0][0].midpoint() - 2 * std::numbers::pi / ot.X[0][0].midpoint()) < 1e-9);
  OTStructure other = ot;
  other.C = shifted;
  for (const auto& tr : all_triples(1, 1))
    CHECK(is_admissible_triple(other, tr).status == is_admissible_triple(ot, tr).status);
}

TEST_CASE("sextic with s = 4") {
  const OTStructure ot = prepare(load_config(OTCALC_TEST_DATA "/sextic_s4.json"));
  CHECK(ot.s == 4);
  CHECK(ot.t == 1);
  std::vector<MultiIndexTriple> admissible;
  for (const auto& tr : all_triples(4, 1)) {
    const auto v = is_admissible_triple(ot, tr);
    CHECK(v.status != Admissibility::uncertain);
    CHECK(v.certificate == v.status);
    if (v.status == Admissibility::admissible) admissible.push_back(tr);
  }
  CHECK(admissible == std::vector<MultiIndexTriple>{{}, {15, 1, 1}});
}
