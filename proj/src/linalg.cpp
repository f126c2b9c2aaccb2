#include "l2dict/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace l2dict {

namespace {

constexpr double kDependenceTol = 1e-10;

// Scale eigenvector columns by f(lambda): Q f(Lambda) Q^T.
Matrix assemble(const Matrix& q, const Vec& diag) {
  const int n = q.rows();
  Matrix scaled = q;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) scaled(i, j) *= diag[j];
  return scaled.multiply_transposed(q);
}

}  // namespace

EigenPair sym_eig(const SymMatrix& m) { return {m.eigenvalues(), m.eigenvectors()}; }

SymMatrix matrix_sqrt(const SymMatrix& m) {
  if (m.definiteness() == Definiteness::indefinite)
    fail(errc::not_psd, "matrix square root requires a positive semidefinite matrix");
  Vec roots = m.eigenvalues();
  for (double& v : roots) v = std::sqrt(v);
  return SymMatrix(assemble(m.eigenvectors(), roots));
}

Matrix factor_ggt(const SymMatrix& m, int target_cols) {
  if (m.definiteness() == Definiteness::indefinite)
    fail(errc::not_psd, "factorization M = C C^T requires a positive semidefinite matrix");
  const int rank = m.numeric_rank();
  if (target_cols < rank)
    fail(errc::rank_too_low, "requested " + std::to_string(target_cols) + " columns for a rank-" +
                                 std::to_string(rank) + " matrix");
  const int n = m.dim();
  const Matrix& q = m.eigenvectors();
  Matrix c(n, target_cols);
  for (int j = 0; j < rank; ++j) {
    const double s = std::sqrt(m.eigenvalues()[j]);
    for (int i = 0; i < n; ++i) c(i, j) = s * q(i, j);
  }
  return c;
}

OrthoResult gram_schmidt(const std::vector<Vec>& vectors, std::size_t fixed_prefix) {
  OrthoResult out;
  if (vectors.empty()) return out;
  const size_t n = vectors.front().size();
  for (const Vec& v : vectors)
    if (v.size() != n) fail(errc::invalid_input, "gram_schmidt: inputs have mixed dimensions");

  out.kept.reserve(vectors.size());
  for (std::size_t idx = 0; idx < vectors.size(); ++idx) {
    if (idx < fixed_prefix) {
      out.kept.push_back(vectors[idx]);
      continue;
    }
    Vec r = vectors[idx];
    const double input_norm = norm(r);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& b : out.kept) {
        const double proj = dot(b, r);
        for (size_t i = 0; i < n; ++i) r[i] -= proj * b[i];
      }
    }
    const double residual = norm(r);
    if (residual <= kDependenceTol * input_norm) {
      out.dropped_indices.push_back(idx);
      continue;
    }
    for (double& x : r) x /= residual;
    out.kept.push_back(std::move(r));
  }
  return out;
}

Matrix pinv(const Matrix& d) {
  if (d.empty()) return d.transposed();
  // D+ = D^T (D D^T)+ when rows <= cols, else (D^T D)+ D^T; the Gram factor
  // is inverted on its numeric range.
  if (d.rows() <= d.cols()) {
    const SymMatrix gram(d.multiply_transposed(d));
    return d.transposed().multiply(psd_pinv(gram).entries());
  }
  const SymMatrix gram(d.transposed().multiply(d));
  return psd_pinv(gram).entries().multiply(d.transposed());
}

Matrix range_basis(const SymMatrix& m) {
  const int rank = m.numeric_rank();
  if (rank == 0) fail(errc::empty_range, "matrix has no numeric range");
  Matrix b(m.dim(), rank);
  for (int j = 0; j < rank; ++j)
    for (int i = 0; i < m.dim(); ++i) b(i, j) = m.eigenvectors()(i, j);
  return b;
}

SymMatrix spectral_map(const SymMatrix& m, double (*f)(double)) {
  const int rank = m.numeric_rank();
  Vec mapped(m.dim(), 0.0);
  for (int j = 0; j < rank; ++j) mapped[j] = f(m.eigenvalues()[j]);
  return SymMatrix(assemble(m.eigenvectors(), mapped));
}

SymMatrix psd_pinv(const SymMatrix& m) {
  // Inversion threshold sits above Jacobi roundoff but far below any
  // genuinely kept spectrum.
  const double lambda_max = std::abs(m.eigenvalues().front());
  const double cut = m.dim() * 1e-14 * lambda_max;
  Vec inverted(m.dim(), 0.0);
  for (int j = 0; j < m.dim(); ++j) {
    const double v = m.eigenvalues()[j];
    if (v > cut) inverted[j] = 1.0 / v;
  }
  return SymMatrix(assemble(m.eigenvectors(), inverted));
}

}  // namespace l2dict
