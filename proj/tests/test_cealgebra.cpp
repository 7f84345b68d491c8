#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "otcalc/cealgebra.hpp"
#include "otcalc/cohomology.hpp"
#include "otcalc/error.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>

using namespace otcalc;

namespace {

using GR = GaussianRational;
using Form = InvariantForm<ExactScalar>;

// ---- oracle: forms as sorted generator lists ------------------------------

using Word = std::vector<int>;
using OracleForm = std::map<Word, GR>;

// Sort by adjacent swaps; 0 if a generator repeats.
int sort_sign(Word& w) {
  int sign = 1;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
      if (w[j] > w[j + 1]) {
        std::swap(w[j], w[j + 1]);
        sign = -sign;
      }
  return std::adjacent_find(w.begin(), w.end()) == w.end() ? sign : 0;
}

void accumulate(OracleForm& f, Word w, const GR& c) {
  const int sign = sort_sign(w);
  if (sign == 0 || c.is_zero()) return;
  GR& slot = f[w];
  slot = slot + (sign > 0 ? c : -c);
  if (slot.is_zero()) f.erase(w);
}

struct Oracle {
  int s, t;
  std::vector<std::vector<GR>> psi;

  int alpha(int i) const { return i; }
  int abar(int i) const { return s + i; }
  int beta(int k) const { return 2 * s + k; }
  int bbar(int k) const { return 2 * s + t + k; }

  // Generator rules, written out directly.
  OracleForm delbar_gen(int g) const {
    OracleForm out;
    const GR half(Rational(1, 2), 0);
    if (g < s) accumulate(out, {abar(g), alpha(g)}, -half);
    else if (g < 2 * s) {
    } else if (g < 2 * s + t) {
      const int k = g - 2 * s;
      for (int i = 0; i < s; ++i) accumulate(out, {abar(i), beta(k)}, -half * psi[i][k]);
    } else {
      const int k = g - 2 * s - t;
      for (int i = 0; i < s; ++i) accumulate(out, {abar(i), bbar(k)}, -half * psi[i][k].conj());
    }
    return out;
  }
  OracleForm del_gen(int g) const {
    OracleForm out;
    const GR half(Rational(1, 2), 0);
    if (g < s) {
    } else if (g < 2 * s) accumulate(out, {alpha(g - s), abar(g - s)}, -half);
    else if (g < 2 * s + t) {
      const int k = g - 2 * s;
      for (int i = 0; i < s; ++i) accumulate(out, {alpha(i), beta(k)}, -half * psi[i][k]);
    } else {
      const int k = g - 2 * s - t;
      for (int i = 0; i < s; ++i) accumulate(out, {alpha(i), bbar(k)}, -half * psi[i][k].conj());
    }
    return out;
  }
  // Leibniz rule on a monomial g_0 ^ ... ^ g_{k-1}.
  template <class Gen>
  OracleForm derive(const Word& w, Gen gen) const {
    OracleForm out;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const GR sign(j % 2 ? -1 : 1, 0);
      for (const auto& [piece, c] : gen(w[j])) {
        Word next(w.begin(), w.begin() + static_cast<long>(j));
        next.insert(next.end(), piece.begin(), piece.end());
        next.insert(next.end(), w.begin() + static_cast<long>(j) + 1, w.end());
        accumulate(out, next, sign * c);
      }
    }
    return out;
  }
  OracleForm delbar(const Word& w) const { return derive(w, [&](int g) { return delbar_gen(g); }); }
  OracleForm del(const Word& w) const { return derive(w, [&](int g) { return del_gen(g); }); }
};

Word word_of(Mask m) {
  Word w;
  for (int b = 0; b < 32; ++b)
    if (m >> b & 1u) w.push_back(b);
  return w;
}

Mask mask_of(const Word& w) {
  Mask m = 0;
  for (int g : w) m |= Mask{1} << g;
  return m;
}

bool same(const Form& f, const OracleForm& o) {
  if (f.terms().size() != o.size()) return false;
  for (const auto& [w, c] : o) {
    auto it = f.terms().find(mask_of(w));
    if (it == f.terms().end() || !(it->second == c)) return false;
  }
  return true;
}

// Dense Gaussian elimination.
std::size_t dense_rank(std::vector<std::vector<GR>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      const GR f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] = rows[r][k] - f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

struct OracleTables {
  Table dolbeault, bc;
};

// Rank-nullity over dense matrices built from the oracle operators.
OracleTables oracle_tables(const Oracle& o) {
  const FormLayout layout{o.s, o.t};
  const int n = o.s + o.t;
  auto index_of = [&](int p, int q) {
    std::map<Mask, std::size_t> idx;
    for (Mask m : layout.monomials(p, q)) idx.emplace(m, idx.size());
    return idx;
  };
  auto matrix = [&](int p, int q, int dp, int dq, auto op) {
    std::vector<std::vector<GR>> rows;
    if (p > n || q > n || p < 0 || q < 0) return rows;
    const auto target = index_of(p + dp, q + dq);
    for (Mask m : layout.monomials(p, q)) {
      std::vector<GR> row(target.size());
      for (const auto& [w, c] : op(word_of(m))) row[target.at(mask_of(w))] = c;
      rows.push_back(std::move(row));
    }
    return rows;
  };
  auto delbar = [&](const Word& w) { return o.delbar(w); };
  auto del_delbar = [&](const Word& w) {
    OracleForm out;
    for (const auto& [x, c] : o.delbar(w))
      for (const auto& [y, e] : o.del(x)) accumulate(out, y, c * e);
    return out;
  };
  auto rank_of = [&](int p, int q, int dp, int dq, auto op) {
    if (p < 0 || q < 0 || p + dp > n || q + dq > n || p > n || q > n) return std::size_t{0};
    return dense_rank(matrix(p, q, dp, dq, op));
  };
  OracleTables out;
  out.dolbeault.assign(static_cast<std::size_t>(n + 1), std::vector<std::size_t>(static_cast<std::size_t>(n + 1)));
  out.bc = out.dolbeault;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      const std::size_t dim = layout.monomials(p, q).size();
      out.dolbeault[p][q] = dim - rank_of(p, q, 0, 1, delbar) - rank_of(p, q - 1, 0, 1, delbar);
      // ker del cap ker delbar: rank of the stacked map into A^{p+1,q} + A^{p,q+1}.
      std::vector<std::vector<GR>> stacked;
      const auto up_p = index_of(p + 1, q), up_q = index_of(p, q + 1);
      for (Mask m : layout.monomials(p, q)) {
        std::vector<GR> row(up_p.size() + up_q.size());
        if (p + 1 <= n)
          for (const auto& [w, c] : o.del(word_of(m))) row[up_p.at(mask_of(w))] = c;
        if (q + 1 <= n)
          for (const auto& [w, c] : o.delbar(word_of(m))) row[up_p.size() + up_q.at(mask_of(w))] = c;
        stacked.push_back(std::move(row));
      }
      out.bc[p][q] = dim - dense_rank(stacked) - rank_of(p - 1, q - 1, 1, 1, del_delbar);
    }
  return out;
}

std::vector<std::vector<GR>> random_psi(int s, int t, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 17);
  std::vector<std::vector<GR>> psi(static_cast<std::size_t>(s), std::vector<GR>(static_cast<std::size_t>(t)));
  for (int k = 0; k < t; ++k) {
    Rational row_sum = 0;
    for (int i = 0; i < s; ++i) {
      // b with column sums fixed so that the top degree is closed
      const Rational b = i + 1 < s ? Rational(num(rng), den(rng)) : Rational(-1) - row_sum;
      row_sum += b;
      psi[i][k] = GR(b / 2, Rational(num(rng), den(rng)));
    }
  }
  return psi;
}

}  // namespace

TEST_CASE("wedge signs agree with counting transpositions") {
  const FormLayout layout{2, 1};
  for (Mask a = 0; a <= layout.full(); ++a)
    for (Mask b = 0; b <= layout.full(); ++b) {
      Word w = word_of(a);
      const Word wb = word_of(b);
      w.insert(w.end(), wb.begin(), wb.end());
      CHECK(wedge_sign(a, b) == sort_sign(w));
    }
}

TEST_CASE("wedge examples") {
  const FormLayout L{1, 1};
  const auto a1 = Form::monomial(L.alpha(0)), ab1 = Form::monomial(L.alpha_bar(0));
  const auto b1 = Form::monomial(L.beta(0)), bb1 = Form::monomial(L.beta_bar(0));
  CHECK(wedge(a1, a1).is_zero());
  CHECK(wedge(ab1, a1) == GR(-1, 0) * wedge(a1, ab1));
  CHECK(wedge(wedge(a1, b1), wedge(ab1, bb1)) == GR(-1, 0) * Form::monomial(L.full()));
  CHECK(L.name(L.full()) == "a1^ab1^b1^bb1");
}

TEST_CASE("generator rules") {
  const ComplexStructure<ExactScalar> cs = synthetic_structure_s1(2);
  const FormLayout& L = cs.layout();
  const GR half(Rational(1, 2), 0);
  // delbar alpha_1 = -1/2 abar_1 ^ alpha_1
  CHECK(cs.delbar(Form::monomial(L.alpha(0))) ==
        GR(-1, 0) * half * wedge(Form::monomial(L.alpha_bar(0)), Form::monomial(L.alpha(0))));
  CHECK(cs.delbar(Form::monomial(L.alpha_bar(0))).is_zero());
  CHECK(cs.del(Form::monomial(L.alpha(1))).is_zero());
  // t = 1, b = -1: delbar beta_1 = 1/4 sum abar_i ^ beta_1 - i/2 sum c_i abar_i ^ beta_1
  Form expected;
  for (int i = 0; i < 2; ++i) {
    const GR coeff(Rational(1, 4), -cs.psi()[i][0].im / 2);
    expected = expected + coeff * wedge(Form::monomial(L.alpha_bar(i)), Form::monomial(L.beta(0)));
  }
  CHECK(cs.delbar(Form::monomial(L.beta(0))) == expected);
  // del(alpha_1 ^ abar_2) = -1/2 alpha_2 ^ alpha_1 ^ abar_2 (sign from moving past alpha_1)
  const auto a1ab2 = Form::monomial(L.alpha(0) | L.alpha_bar(1));
  const auto expected_del = GR(-1, 0) * half * GR(-1, 0) *
                            wedge(Form::monomial(L.alpha(0)), wedge(Form::monomial(L.alpha(1)), Form::monomial(L.alpha_bar(1))));
  CHECK(cs.del(a1ab2) == expected_del);
}

TEST_CASE("operators match the oracle on every monomial") {
  for (auto [s, t] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    CAPTURE(s);
    CAPTURE(t);
    const auto psi = random_psi(s, t, static_cast<unsigned>(10 * s + t));
    const ComplexStructure<ExactScalar> cs(s, t, psi);
    const Oracle o{s, t, psi};
    for (Mask m = 0; m <= cs.layout().full(); ++m) {
      CHECK(same(cs.delbar(Form::monomial(m)), o.delbar(word_of(m))));
      CHECK(same(cs.del(Form::monomial(m)), o.del(word_of(m))));
    }
    CHECK(d_squared_scan(cs).ok());
  }
}

TEST_CASE("Leibniz rule on products of monomials") {
  const auto psi = random_psi(2, 1, 5);
  const ComplexStructure<ExactScalar> cs(2, 1, psi);
  const Mask full = cs.layout().full();
  for (Mask a = 0; a <= full; a += 3)
    for (Mask b = 0; b <= full; b += 5) {
      const auto fa = Form::monomial(a), fb = Form::monomial(b);
      const GR sign(std::popcount(a) % 2 ? -1 : 1, 0);
      CHECK(cs.delbar(wedge(fa, fb)) == wedge(cs.delbar(fa), fb) + sign * wedge(fa, cs.delbar(fb)));
    }
}

TEST_CASE("conjugate Hodge star") {
  const FormLayout L{1, 1};
  CHECK(conj_hodge_star(L, Form::monomial(0)) == Form::monomial(L.full()));
  for (Mask m = 0; m <= L.full(); ++m) {
    const auto f = Form::monomial(m, GR(2, 3));
    const auto st = conj_hodge_star(L, f);
    REQUIRE(st.terms().size() == 1);
    CHECK(st.terms().begin()->first == (L.full() & ~m));
    CHECK(st.terms().begin()->second == GR(wedge_sign(m, L.full() & ~m), 0) * GR(2, -3));
    const auto twice = conj_hodge_star(L, st);
    CHECK((twice == f || twice == GR(-1, 0) * f));
  }
}

TEST_CASE("cohomology dimensions") {
  const auto s1 = synthetic_structure_s1(1);
  CohomologyCalculator<ExactScalar> c1(s1);
  CHECK(c1.derham(1) == 1);
  CHECK(c1.dolbeault(0, 1) == 1);
  const auto s2 = synthetic_structure_s1(2);
  CohomologyCalculator<ExactScalar> c2(s2);
  CHECK(c2.bott_chern(1, 1) == 2);
}

TEST_CASE("Dolbeault and Bott-Chern tables match the dense oracle") {
  for (auto [s, t] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    CAPTURE(s);
    CAPTURE(t);
    const auto psi = random_psi(s, t, static_cast<unsigned>(7 * s + t));
    const ComplexStructure<ExactScalar> cs(s, t, psi);
    CohomologyCalculator<ExactScalar> calc(cs);
    const OracleTables o = oracle_tables(Oracle{s, t, psi});
    CHECK(calc.dolbeault_table() == o.dolbeault);
    CHECK(calc.bott_chern_table() == o.bc);
  }
}

TEST_CASE("numeric backend agrees with the exact one") {
  for (int s = 1; s <= 3; ++s) {
    const auto exact = synthetic_structure_s1(s);
    std::vector<std::vector<NumericScalar>> psi;
    for (const auto& row : exact.psi()) {
      psi.emplace_back();
      for (const auto& v : row) psi.back().emplace_back(v.re.get_d(), v.im.get_d());
    }
    const ComplexStructure<NumericScalar> numeric(s, 1, psi);
    CohomologyCalculator<ExactScalar> ce(exact);
    CohomologyCalculator<NumericScalar> cn(numeric);
    CHECK(ce.dolbeault_table() == cn.dolbeault_table());
    CHECK(ce.bott_chern_table() == cn.bott_chern_table());
    CHECK(ce.derham_vector() == cn.derham_vector());
    CHECK(d_squared_scan(numeric).ok());
  }
}

TEST_CASE("Bott-Chern harmonicity") {
  const auto cs = synthetic_structure_s1(2);
  const FormLayout& L = cs.layout();
  CHECK(is_bc_harmonic(cs, Form::monomial(0)));
  CHECK(is_bc_harmonic(cs, Form::monomial(L.alpha(0) | L.alpha_bar(0))));
  CHECK_FALSE(is_bc_harmonic(cs, Form::monomial(L.alpha(0) | L.alpha(1) | L.alpha_bar(0) | L.alpha_bar(1))));
}

TEST_CASE("rank helpers") {
  using V = SparseVector<ExactScalar>;
  const std::vector<V> rows = {{{0, GR(1, 0)}, {2, GR(0, 1)}}, {{0, GR(2, 0)}, {2, GR(0, 2)}}, {{1, GR(3, 1)}}};
  CHECK(exact_rank(rows) == 2);
  const std::vector<SparseVector<NumericScalar>> nrows = {{{0, {1, 0}}, {1, {1e-18, 0}}}, {{1, {1e-18, 0}}}};
  CHECK(numeric_rank(nrows) == 1);
  const std::vector<SparseVector<NumericScalar>> ambiguous = {{{0, {1, 0}}}, {{1, {1e-9, 0}}}};
  CHECK_THROWS_AS(numeric_rank(ambiguous), Error);
}
