#include "otcalc/linalg.hpp"

#include "otcalc/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>

namespace otcalc {

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  const Rational d = b.norm2();
  if (d == 0) throw Error(ErrorKind::DivisionByZero, "linalg", "divide", "division by zero in Q(i)");
  const GaussianRational n = a * b.conj();
  return {n.re / d, n.im / d};
}

std::string GaussianRational::to_string() const {
  if (im == 0) return re.get_str();
  if (re == 0) return im.get_str() + "i";
  return re.get_str() + (im > 0 ? "+" : "") + im.get_str() + "i";
}

namespace {

using ExactRow = SparseVector<ExactScalar>;

// row - factor * pivot, both sorted.
ExactRow eliminate(const ExactRow& row, const ExactScalar& factor, const ExactRow& pivot) {
  ExactRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t a = 0, b = 0;
  while (a < row.size() || b < pivot.size()) {
    if (b == pivot.size() || (a < row.size() && row[a].first < pivot[b].first)) {
      out.push_back(row[a++]);
    } else if (a == row.size() || pivot[b].first < row[a].first) {
      out.emplace_back(pivot[b].first, -(factor * pivot[b].second));
      ++b;
    } else {
      ExactScalar v = row[a].second - factor * pivot[b].second;
      if (!v.is_zero()) out.emplace_back(row[a].first, std::move(v));
      ++a;
      ++b;
    }
  }
  return out;
}

template <class Real>
std::size_t svd_rank(const std::vector<SparseVector<NumericScalar>>& vectors, const std::map<std::uint32_t, int>& cols,
                     double zero, double ambiguous, double reference, bool& is_ambiguous) {
  using Matrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(vectors.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < vectors.size(); ++r)
    for (const auto& [idx, v] : vectors[r])
      m(static_cast<Eigen::Index>(r), cols.at(idx)) = std::complex<Real>(static_cast<Real>(v.real()), static_cast<Real>(v.imag()));
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  is_ambiguous = false;
  if (sv.size() == 0) return 0;
  const Real scale = std::max(sv(0), static_cast<Real>(reference));
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double rel = static_cast<double>(sv(i) / scale);
    if (rel > ambiguous) ++rank;
    else if (rel > zero) is_ambiguous = true;
  }
  return rank;
}

}  // namespace

std::size_t exact_rank(const std::vector<SparseVector<ExactScalar>>& vectors) {
  std::map<std::uint32_t, ExactRow> pivots;  // leading index -> row with leading entry 1
  for (ExactRow row : vectors) {
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) {
        const ExactScalar lead = row.front().second;
        for (auto& [idx, v] : row) v = v / lead;
        const std::uint32_t key = row.front().first;
        pivots.emplace(key, std::move(row));
        break;
      }
      const ExactScalar factor = row.front().second;
      row = eliminate(row, factor, it->second);
    }
  }
  return pivots.size();
}

std::size_t numeric_rank(const std::vector<SparseVector<NumericScalar>>& vectors, const NumericRankOptions& options) {
  std::map<std::uint32_t, int> cols;
  for (const auto& v : vectors)
    for (const auto& e : v) cols.emplace(e.first, 0);
  if (cols.empty()) return 0;
  int next = 0;
  for (auto& [idx, c] : cols) c = next++;
  const double zero = std::ldexp(1.0, options.zero_log2);
  const double ambiguous = std::ldexp(1.0, options.ambiguous_log2);
  bool is_ambiguous = false;
  std::size_t rank = svd_rank<double>(vectors, cols, zero, ambiguous, options.reference, is_ambiguous);
  if (!is_ambiguous) return rank;
  rank = svd_rank<long double>(vectors, cols, zero, ambiguous, options.reference, is_ambiguous);
  if (!is_ambiguous) return rank;
  throw Error(ErrorKind::PrecisionExhausted, "cealgebra", "numeric_rank",
              "singular value inside the ambiguity zone after escalation");
}

}  // namespace otcalc
