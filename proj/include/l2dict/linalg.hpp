#pragma once

#include <cstddef>
#include <vector>

#include "l2dict/matrix.hpp"

namespace l2dict {

struct EigenPair {
  Vec values;      // descending
  Matrix vectors;  // orthogonal, columns are eigenvectors
};

struct OrthoResult {
  std::vector<Vec> kept;                // orthonormal, input order preserved
  std::vector<std::size_t> dropped_indices;  // inputs discarded as dependent
};

/// Spectral decomposition of a symmetric matrix; eigenvalues descending,
/// eigenvector signs canonicalized. Deterministic for fixed input.
EigenPair sym_eig(const SymMatrix& m);

/// Unique psd square root. Requires m psd (after clamping).
SymMatrix matrix_sqrt(const SymMatrix& m);

/// n x k factor C with C C^T = m; columns ordered by descending eigenvalue,
/// zero-padded past the numeric rank. Requires k >= numeric_rank(m).
Matrix factor_ggt(const SymMatrix& m, int target_cols);

/// Modified Gram-Schmidt with one re-orthogonalization pass. The first
/// fixed_prefix vectors must already be orthonormal and pass through
/// untouched. Vectors whose post-projection norm falls below
/// 1e-10 * (their input norm) are dropped and recorded.
OrthoResult gram_schmidt(const std::vector<Vec>& vectors, std::size_t fixed_prefix = 0);

/// Moore-Penrose pseudo-inverse of a rectangular matrix.
Matrix pinv(const Matrix& d);

/// Orthonormal basis of range(m) as columns: the eigenvectors whose
/// eigenvalues clear the rank threshold. Errors with empty_range on the
/// zero matrix.
Matrix range_basis(const SymMatrix& m);

/// Spectral helpers shared by the solver modules. f is applied to the
/// eigenvalues above the rank threshold; the rest map to zero.
SymMatrix spectral_map(const SymMatrix& m, double (*f)(double));

/// inv(m) restricted to the numeric range (pseudo-inverse of a psd matrix).
SymMatrix psd_pinv(const SymMatrix& m);

}  // namespace l2dict
