#include "l2dict/frames.hpp"

#include <cmath>

namespace l2dict {

namespace {
constexpr double kUnitNormTol = 1e-8;
}

FrameReport analyze_frame(const std::vector<Vec>& vectors) {
  if (vectors.empty()) fail(errc::invalid_input, "empty vector collection");
  const int n = static_cast<int>(vectors.front().size());
  Matrix s(n, n);
  bool unit = true;
  for (const Vec& x : vectors) {
    if (static_cast<int>(x.size()) != n) fail(errc::invalid_input, "vectors have mixed dimensions");
    if (std::abs(norm(x) - 1.0) > kUnitNormTol) unit = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s(i, j) += x[i] * x[j];
  }
  const SymMatrix op(s);
  const double upper = op.eigenvalues().front();
  const double lower = op.eigenvalues().back();
  const bool tight = (upper - lower) <= 1e-8 * std::max(1.0, upper);
  FrameReport report{static_cast<int>(vectors.size()), n, lower, upper, tight, unit, std::nullopt};
  if (tight && unit) report.untf_constant = 0.5 * (lower + upper);
  return report;
}

bool verify_sphere_optimality(const Dictionary& dictionary) {
  const int n = dictionary.vectors.rows();
  const int count = dictionary.size;
  for (int j = 0; j < count; ++j)
    if (std::abs(norm(dictionary.vectors.column(j)) - 1.0) > kUnitNormTol) return false;
  Matrix s = dictionary.vectors.multiply_transposed(dictionary.vectors);
  const double scale = static_cast<double>(count) / n;
  for (int i = 0; i < n; ++i) s(i, i) -= scale;
  return s.frobenius_norm() <= 1e-8 * count;
}

}  // namespace l2dict
