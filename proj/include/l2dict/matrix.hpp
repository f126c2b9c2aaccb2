#pragma once

#include <memory>
#include <span>
#include <vector>

#include "l2dict/errors.hpp"

namespace l2dict {

using Vec = std::vector<double>;

double dot(std::span<const double> x, std::span<const double> y);
double norm(std::span<const double> x);

/// Dense row-major matrix of doubles. Products go through the kernels layer.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);  // zero-filled
  Matrix(int rows, int cols, Vec data);

  static Matrix identity(int n);
  static Matrix from_columns(const std::vector<Vec>& cols);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }
  const Vec& storage() const noexcept { return data_; }

  Matrix transposed() const;
  Matrix multiply(const Matrix& rhs) const;             // this * rhs
  Matrix multiply_transposed(const Matrix& rhs) const;  // this * rhs^T
  Vec apply(std::span<const double> x) const;           // this * x

  Vec column(int j) const;
  std::vector<Vec> columns() const;
  Matrix top_rows(int count) const;

  double trace() const;
  double frobenius_norm() const;
  bool all_finite() const;

  Matrix& operator*=(double s);
  friend Matrix operator*(double s, Matrix m) {
    m *= s;
    return m;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  Vec data_;
};

enum class Definiteness { indefinite, psd, pd };

/// Symmetric matrix with its spectral decomposition computed on construction.
/// Inputs are symmetrized as (A + A^T)/2. Eigenvalues are held in descending
/// order; for psd/pd matrices, roundoff-negative eigenvalues are clamped to
/// zero. Eigenvector columns have their largest-magnitude component positive.
///
/// Classification rules:
///   psd   : lambda_min >= -eps_psd, eps_psd = 1e-10 * max(1, lambda_max)
///   pd    : psd and numeric_rank == dim
///   rank  : #{ |lambda_i| > dim * 1e-12 * max_i |lambda_i| }
class SymMatrix {
 public:
  explicit SymMatrix(const Matrix& raw);
  SymMatrix(int dim, Vec entries);

  static SymMatrix identity(int n);
  static SymMatrix diagonal(const Vec& d);
  /// Embeds blocks on the diagonal: result = diag(top, bottom).
  static SymMatrix block_diag(const SymMatrix& top, const SymMatrix& bottom);

  int dim() const noexcept { return entries_.rows(); }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Matrix& entries() const noexcept { return entries_; }

  Definiteness definiteness() const noexcept;
  int numeric_rank() const noexcept;
  /// Descending; clamped at zero for psd/pd classification.
  const Vec& eigenvalues() const noexcept;
  /// Columns are eigenvectors matching eigenvalues(); orthogonal.
  const Matrix& eigenvectors() const noexcept;

  double trace() const { return entries_.trace(); }
  double frobenius_norm() const { return entries_.frobenius_norm(); }
  Vec apply(std::span<const double> x) const { return entries_.apply(x); }

 private:
  struct Spectrum {
    Vec values;
    Matrix vectors;
    Definiteness cls = Definiteness::indefinite;
    int rank = 0;
  };

  Matrix entries_;
  std::shared_ptr<const Spectrum> spectrum_;

  void decompose();
};

/// trace(A * B) for symmetric A, B of equal dimension.
double trace_product(const SymMatrix& a, const SymMatrix& b);

}  // namespace l2dict
