#pragma once

#include "l2dict/matrix.hpp"

namespace l2dict {

/// Orthonormal basis x_1..x_n whose quadratic-form values x_i^T L x_i all
/// equal trace(L)/n.
struct BalancedBasis {
  int dim;
  Matrix vectors;  // n x n, columns x_i
  SymMatrix form_matrix;
  double target;  // trace(form_matrix)/dim
};

/// K vectors y_i with sum_i y_i y_i^T = source and every y_i^T A y_i equal
/// to trace(source * A)/K.
struct Rank1Decomposition {
  SymMatrix source;
  int count;
  Matrix vectors;  // n x K, columns y_i
  SymMatrix weight_form;
  double common_value;
};

/// Builds the balanced orthonormal basis for a symmetric form by repeatedly
/// completing the partial basis with standard vectors, picking the extremal
/// candidates and blending them to hit the trace average.
BalancedBasis balanced_orthonormal(const SymMatrix& form);

/// Root in [0,1] of
///   ((1-t)^2 a + 2 t (1-t) b + t^2 c) - target ((1-t)^2 + t^2) = 0.
/// Requires a <= target <= c; solved analytically with a bisection
/// fallback, smallest valid root wins.
double solve_theta(double a, double b, double c, double target);

/// Rank-1 decomposition with K = numeric_rank(x) vectors.
Rank1Decomposition decompose_exact_rank(const SymMatrix& x, const SymMatrix& t);

/// Rank-1 decomposition padded to K >= rank(m) vectors via the block
/// embedding diag(m, I_{K-r}) / diag(a, 0) in dimension n + K - r, truncated
/// back to the first n coordinates.
Rank1Decomposition decompose_padded(const SymMatrix& m, const SymMatrix& a, int count);

}  // namespace l2dict
