#include "l2dict/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "l2dict/kernels.hpp"

namespace l2dict {

double dot(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

double norm(std::span<const double> x) { return std::sqrt(dot(x, x)); }

Matrix::Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0.0) {
  if (rows < 0 || cols < 0) fail(errc::invalid_input, "negative matrix dimension");
}

Matrix::Matrix(int rows, int cols, Vec data) : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows < 0 || cols < 0 || data_.size() != static_cast<size_t>(rows) * cols)
    fail(errc::invalid_input, "matrix storage does not match its dimensions");
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols) {
  if (cols.empty()) fail(errc::invalid_input, "no columns given");
  const int n = static_cast<int>(cols.front().size());
  Matrix m(n, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    if (static_cast<int>(cols[j].size()) != n) fail(errc::invalid_input, "ragged column list");
    for (int i = 0; i < n; ++i) m(i, static_cast<int>(j)) = cols[j][i];
  }
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::multiply(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) fail(errc::invalid_input, "matrix product dimension mismatch");
  Matrix c(rows_, rhs.cols_);
  kernels::matmul(data(), rhs.data(), c.data(), rows_, cols_, rhs.cols_);
  return c;
}

Matrix Matrix::multiply_transposed(const Matrix& rhs) const {
  if (cols_ != rhs.cols_) fail(errc::invalid_input, "matrix product dimension mismatch");
  if (this == &rhs) {
    Matrix c(rows_, rows_);
    kernels::syrk(data(), c.data(), rows_, cols_);
    return c;
  }
  return multiply(rhs.transposed());
}

Vec Matrix::apply(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != cols_) fail(errc::invalid_input, "matrix-vector dimension mismatch");
  Vec y(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) y[i] = dot(std::span(data_).subspan(static_cast<size_t>(i) * cols_, cols_), x);
  return y;
}

Vec Matrix::column(int j) const {
  Vec c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<Vec> Matrix::columns() const {
  std::vector<Vec> cs(cols_);
  for (int j = 0; j < cols_; ++j) cs[j] = column(j);
  return cs;
}

Matrix Matrix::top_rows(int count) const {
  Matrix t(count, cols_);
  std::copy(data_.begin(), data_.begin() + static_cast<size_t>(count) * cols_, t.data_.begin());
  return t;
}

double Matrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const { return norm(data_); }

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(errc::invalid_input, "matrix sum dimension mismatch");
  Matrix c = a;
  for (size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(errc::invalid_input, "matrix difference dimension mismatch");
  Matrix c = a;
  for (size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

SymMatrix::SymMatrix(const Matrix& raw) {
  if (raw.rows() != raw.cols()) fail(errc::invalid_input, "symmetric matrix must be square");
  if (raw.rows() == 0) fail(errc::invalid_input, "symmetric matrix must have positive dimension");
  if (!raw.all_finite()) fail(errc::invalid_input, "matrix has non-finite entries");
  const int n = raw.rows();
  entries_ = Matrix(n, n);
  for (int i = 0; i < n; ++i) {
    entries_(i, i) = raw(i, i);
    for (int j = i + 1; j < n; ++j) entries_(i, j) = entries_(j, i) = 0.5 * (raw(i, j) + raw(j, i));
  }
  decompose();
}

SymMatrix::SymMatrix(int dim, Vec entries) : SymMatrix(Matrix(dim, dim, std::move(entries))) {}

SymMatrix SymMatrix::identity(int n) { return SymMatrix(Matrix::identity(n)); }

SymMatrix SymMatrix::diagonal(const Vec& d) {
  Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return SymMatrix(m);
}

SymMatrix SymMatrix::block_diag(const SymMatrix& top, const SymMatrix& bottom) {
  const int n = top.dim() + bottom.dim();
  Matrix m(n, n);
  for (int i = 0; i < top.dim(); ++i)
    for (int j = 0; j < top.dim(); ++j) m(i, j) = top(i, j);
  for (int i = 0; i < bottom.dim(); ++i)
    for (int j = 0; j < bottom.dim(); ++j) m(top.dim() + i, top.dim() + j) = bottom(i, j);
  return SymMatrix(m);
}

void SymMatrix::decompose() {
  const int n = dim();
  kernels::EigResult raw = kernels::jacobi_eig(entries_.data(), n, true);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return raw.values[a] > raw.values[b]; });

  auto spec = std::make_shared<Spectrum>();
  spec->values.resize(n);
  spec->vectors = Matrix(n, n);
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    spec->values[k] = raw.values[src];
    // Largest-magnitude component positive, first index winning ties.
    int pivot = 0;
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = std::abs(raw.vectors[static_cast<size_t>(i) * n + src]);
      if (x > best) {
        best = x;
        pivot = i;
      }
    }
    const double sign = raw.vectors[static_cast<size_t>(pivot) * n + src] < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) spec->vectors(i, k) = sign * raw.vectors[static_cast<size_t>(i) * n + src];
  }

  double max_abs = 0.0;
  for (double v : spec->values) max_abs = std::max(max_abs, std::abs(v));
  const double eps_rank = n * 1e-12 * max_abs;
  spec->rank = static_cast<int>(
      std::count_if(spec->values.begin(), spec->values.end(), [&](double v) { return std::abs(v) > eps_rank; }));

  const double lambda_max = spec->values.front();
  const double lambda_min = spec->values.back();
  const double eps_psd = 1e-10 * std::max(1.0, lambda_max);
  if (lambda_min < -eps_psd) {
    spec->cls = Definiteness::indefinite;
  } else {
    for (double& v : spec->values) v = std::max(v, 0.0);
    spec->cls = (spec->rank == n) ? Definiteness::pd : Definiteness::psd;
  }
  spectrum_ = std::move(spec);
}

Definiteness SymMatrix::definiteness() const noexcept { return spectrum_->cls; }
int SymMatrix::numeric_rank() const noexcept { return spectrum_->rank; }
const Vec& SymMatrix::eigenvalues() const noexcept { return spectrum_->values; }
const Matrix& SymMatrix::eigenvectors() const noexcept { return spectrum_->vectors; }

double trace_product(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) fail(errc::invalid_input, "trace product dimension mismatch");
  double sum = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) sum += a(i, j) * b(j, i);
  return sum;
}

}  // namespace l2dict
