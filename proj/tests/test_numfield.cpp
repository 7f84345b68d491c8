#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "otcalc/numfield.hpp"
#include "otcalc/error.hpp"

#include <cmath>

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

// Plain double bisection on f over [lo, hi] with a sign change.
double bisect(const std::vector<double>& f, double lo, double hi) {
  auto eval = [&](double x) {
    double v = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) v = v * x + *it;
    return v;
  };
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    if ((eval(lo) < 0) == (eval(mid) < 0)) lo = mid;
    else hi = mid;
  }
  return lo;
}

// a(x) b(x) mod f(x) via the polynomial remainder.
AlgebraicNumber product_by_division(const FieldSpec& field, const AlgebraicNumber& a, const AlgebraicNumber& b) {
  const Polynomial r = Polynomial(a.coords) * Polynomial(b.coords) % field.polynomial();
  std::vector<Rational> coords(static_cast<std::size_t>(field.degree()));
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = r.coefficient(i);
  return make_number(field, coords);
}

}  // namespace

TEST_CASE("parse_field") {
  const FieldSpec f = parse_field({-1, -1, 0, 1});
  CHECK(f.degree() == 3);
  CHECK(kind_of([] { parse_field({1, 2, 1}); }) == ErrorKind::Reducible);
  CHECK(kind_of([] { parse_field({2, 0, 1}); }) == ErrorKind::DegreeTooSmall);
  CHECK(kind_of([] { parse_field({-1, -1, 0, 2}); }) == ErrorKind::NotMonic);
  CHECK(kind_of([] { parse_field({4, 0, 0, 0, 1}); }) == ErrorKind::Reducible);   // x^4 + 4 = (x^2+2x+2)(x^2-2x+2)
}

TEST_CASE("x^4 - 2 is accepted") { CHECK(parse_field({-2, 0, 0, 0, 1}).degree() == 4); }

TEST_CASE("embeddings") {
  const FieldSpec f = parse_field({-1, -1, 0, 1});
  const EmbeddingSet emb = compute_embeddings(f, 64);
  CHECK(emb.s == 1);
  CHECK(emb.t == 1);
  const double root = bisect({-1, -1, 0, 1}, 1.0, 2.0);
  CHECK(std::abs(emb.real_roots[0].midpoint() - root) < 1e-12);
  CHECK(emb.real_roots[0].width_log2() <= -60);
  CHECK(emb.complex_roots[0].im.is_positive());

  const FieldSpec gauss = parse_field({1, 0, 1}, DegreeRequirement::any);
  const EmbeddingSet g = compute_embeddings(gauss);
  CHECK(g.s == 0);
  CHECK(g.t == 1);
  CHECK(kind_of([&] { g.require_ot_signature(); }) == ErrorKind::SignatureUnsupported);
  const FieldSpec sqrt2 = parse_field({-2, 0, 1}, DegreeRequirement::any);
  CHECK(kind_of([&] { compute_embeddings(sqrt2).require_ot_signature(); }) == ErrorKind::SignatureUnsupported);
}

TEST_CASE("real roots of a degree-5 field match bisection") {
  // x^5 - 4x + 2 has three real roots (Eisenstein at 2).
  const FieldSpec f = parse_field({2, -4, 0, 0, 0, 1});
  const EmbeddingSet emb = compute_embeddings(f);
  REQUIRE(emb.s == 3);
  REQUIRE(emb.t == 1);
  const std::vector<double> p = {2, -4, 0, 0, 0, 1};
  CHECK(std::abs(emb.real_roots[0].midpoint() - bisect(p, -2.0, -1.0)) < 1e-12);
  CHECK(std::abs(emb.real_roots[1].midpoint() - bisect(p, 0.0, 1.0)) < 1e-12);
  CHECK(std::abs(emb.real_roots[2].midpoint() - bisect(p, 1.0, 1.5)) < 1e-12);
}

TEST_CASE("arithmetic") {
  const FieldSpec f = parse_field({-1, -1, 0, 1});
  const auto th = theta(f);
  CHECK(mul(f, th, power(f, th, 2)) == make_number(f, {1, 1, 0}));
  const auto a = make_number(f, {3, -2, 5});
  CHECK(mul(f, a, rational_number(f, 1)) == a);
  CHECK(mul(f, a, inv(f, a)) == rational_number(f, 1));
  CHECK(power(f, th, -2) == inv(f, mul(f, th, th)));
  const auto b = make_number(f, {-7, 0, 4});
  CHECK(mul(f, a, b) == product_by_division(f, a, b));
  CHECK(kind_of([&] { inv(f, rational_number(f, 0)); }) == ErrorKind::DivisionByZero);

  const FieldSpec gauss = parse_field({1, 0, 1}, DegreeRequirement::any);
  CHECK(mul(gauss, theta(gauss), theta(gauss)) == rational_number(gauss, -1));
}

TEST_CASE("norm equals the determinant of the multiplication matrix") {
  const FieldSpec f = parse_field({-1, -1, 0, 1});
  CHECK(norm(f, theta(f)) == 1);
  CHECK(norm(f, rational_number(f, 1)) == 1);
  CHECK(norm(f, rational_number(f, 2)) == 8);
  const FieldSpec g = parse_field({-1, -3, 3, 2, -3, 0, 1});
  for (const auto& a : {make_number(g, {1, 2, 0, -1, 0, 3}), make_number(g, {0, -1, -1, 1, 1, 0}),
                        make_number(g, {5, 0, 0, 0, 0, 0})})
    CHECK(norm(g, a) == determinant(multiplication_matrix(g, a)));
}

TEST_CASE("units") {
  const FieldSpec f = parse_field({-1, -1, 0, 1});
  const EmbeddingSet emb = compute_embeddings(f);
  CHECK(check_unit(emb, theta(f)) == UnitStatus::unit_totally_positive);
  CHECK(check_unit(emb, rational_number(f, 1)) == UnitStatus::unit_totally_positive);
  CHECK(check_unit(emb, rational_number(f, -1)) == UnitStatus::unit_not_totally_positive);
  CHECK(check_unit(emb, rational_number(f, 2)) == UnitStatus::not_unit);
  CHECK(kind_of([&] { check_unit(emb, make_number(f, std::vector<Rational>{Rational(1, 2), 0, 0})); }) == ErrorKind::NotIntegral);
}

TEST_CASE("log vector") {
  const FieldSpec f = parse_field({-1, -1, 0, 1});
  const EmbeddingSet emb = compute_embeddings(f);
  const LogVector one = log_vector(emb, rational_number(f, 1));
  for (const auto& e : one.entries) CHECK(e.contains(0));
  const LogVector l = log_vector(emb, theta(f));
  CHECK(std::abs(l.entries[0].midpoint() - std::log(bisect({-1, -1, 0, 1}, 1.0, 2.0))) < 1e-12);
  CHECK(l.sum_contains_zero());
  CHECK(kind_of([&] { log_vector(emb, rational_number(f, 2)); }) == ErrorKind::NotUnit);
}

TEST_CASE("search_units") {
  const FieldSpec f = parse_field({-1, -1, 0, 1});
  const auto found = search_units(compute_embeddings(f), 2);
  CHECK(std::find(found.begin(), found.end(), theta(f)) != found.end());
  for (const auto& u : found) CHECK(abs(norm(f, u)) == 1);

  const FieldSpec gauss = parse_field({1, 0, 1}, DegreeRequirement::any);
  for (const auto& u : search_units(compute_embeddings(gauss), 3)) {
    // Only torsion: u^4 = 1.
    CHECK(power(gauss, u, 4) == rational_number(gauss, 1));
  }
  const FieldSpec q3 = parse_field({-3, 0, 1}, DegreeRequirement::any);
  const auto pell = search_units(compute_embeddings(q3), 4);
  CHECK(std::find(pell.begin(), pell.end(), make_number(q3, {2, 1})) != pell.end());
}

TEST_CASE("refinement and cap") {
  const FieldSpec f = parse_field({-1, -1, 0, 1});
  const EmbeddingSet emb = compute_embeddings(f, 64, 128);
  CHECK(emb.can_refine());
  const EmbeddingSet r = emb.refined();
  CHECK(r.precision_bits == 128);
  CHECK_FALSE(r.can_refine());
  CHECK(kind_of([&] { r.refined(); }) == ErrorKind::PrecisionExhausted);
}
