#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace l2dict::kernels {

// Dense compute kernels used throughout the library. The functions in this
// namespace are OpenMP-parallel; each output element is produced by exactly
// one thread from a consistent snapshot, so results are bit-identical for
// any thread count (including 1). The serial namespace below holds plain
// reference implementations kept for testing and benchmarking.

/// C (m x n) = A (m x k) * B (k x n), row-major. C must not alias A or B.
void matmul(const double* a, const double* b, double* c, int m, int k, int n);

/// C (m x m) = A (m x k) * A^T, row-major.
void syrk(const double* a, double* c, int m, int k);

struct EigResult {
  std::vector<double> values;   // unsorted (diagonal of the rotated matrix)
  std::vector<double> vectors;  // n x n row-major, columns are eigenvectors
  int sweeps = 0;
};

/// Symmetric eigendecomposition by Jacobi rotations using a round-robin
/// parallel ordering: every round applies a set of pairwise-disjoint
/// rotations in two column/row phases computed from snapshots.
EigResult jacobi_eig(const double* a, int n, bool want_vectors = true);

/// out (dim x dim) = sum over samples of v v^T; samples row-major
/// (count x dim). Each entry is a pairwise reduction over the sample index.
void second_moment(const double* samples, std::size_t count, int dim, double* out);

/// Pairwise (cascade) summation. This is the canonical reduction order for
/// all sample statistics in the library; the parallel evaluation reproduces
/// the serial recursion tree exactly.
double pairwise_sum(std::span<const double> xs);

namespace serial {

void matmul(const double* a, const double* b, double* c, int m, int k, int n);
void syrk(const double* a, double* c, int m, int k);
/// Classic cyclic Jacobi, rotations applied in place one at a time.
EigResult jacobi_eig(const double* a, int n, bool want_vectors = true);
/// Running rank-1 accumulation in sample order.
void second_moment(const double* samples, std::size_t count, int dim, double* out);
double naive_sum(std::span<const double> xs);

}  // namespace serial

}  // namespace l2dict::kernels
