#include "l2dict/dictionary.hpp"

#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "l2dict/kernels.hpp"
#include "l2dict/linalg.hpp"
#include "l2dict/rank1.hpp"

namespace l2dict {

namespace {

constexpr double kRepresentTol = 1e-6;

double inv_sqrt(double x) { return 1.0 / std::sqrt(x); }

double sqrt_trace_of_support(const SymMatrix& sigma) {
  double sum = 0.0;
  for (int i = 0; i < sigma.numeric_rank(); ++i) sum += std::sqrt(sigma.eigenvalues()[i]);
  return sum;
}

Scheme make_scheme(Dictionary dict) {
  Matrix p = pinv(dict.vectors);
  return {std::move(dict), std::move(p)};
}

double relative_residual(const Matrix& d, std::span<const double> alpha, std::span<const double> v) {
  Vec rec = d.apply(alpha);
  double err = 0.0;
  for (size_t i = 0; i < rec.size(); ++i) {
    const double diff = rec[i] - v[i];
    err += diff * diff;
  }
  const double ref = norm(v);
  return ref > 0.0 ? std::sqrt(err) / ref : std::sqrt(err);
}

// Uniform in [0,1) from the high 53 bits; avoids distribution objects so
// streams are identical across standard libraries.
double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

}  // namespace

MomentSpec::MomentSpec(SymMatrix second_moment)
    : sigma_v(std::move(second_moment)), ambient_dim(sigma_v.dim()), support_rank(sigma_v.numeric_rank()) {
  if (sigma_v.definiteness() == Definiteness::indefinite)
    fail(errc::not_psd, "second moment must be positive semidefinite");
  if (support_rank < 1) fail(errc::invalid_input, "second moment is zero; nothing to represent");
}

SymMatrix optimal_gram_full_rank(const MomentSpec& spec, int count) {
  if (spec.support_rank < spec.ambient_dim)
    fail(errc::use_general_path, "second moment is singular; use the rank-deficient path");
  if (count < spec.ambient_dim)
    fail(errc::k_too_small, "dictionary size " + std::to_string(count) + " below dimension " +
                                std::to_string(spec.ambient_dim));
  SymMatrix root = matrix_sqrt(spec.sigma_v);
  return SymMatrix((count / root.trace()) * root.entries());
}

GramGeneral optimal_gram_general(const MomentSpec& spec, int count) {
  if (count < spec.support_rank)
    fail(errc::k_too_small, "dictionary size " + std::to_string(count) + " below support rank " +
                                std::to_string(spec.support_rank));
  Matrix b = range_basis(spec.sigma_v);
  SymMatrix sigma(b.transposed().multiply(spec.sigma_v.entries()).multiply(b));
  SymMatrix root = matrix_sqrt(sigma);
  SymMatrix h_star((count / root.trace()) * root.entries());
  return {std::move(b), std::move(h_star), std::move(sigma)};
}

GramGeneral optimal_gram_with_basis(const MomentSpec& spec, const Matrix& basis, int count) {
  if (basis.rows() != spec.ambient_dim) fail(errc::invalid_input, "basis rows must match the ambient dimension");
  if (basis.cols() != spec.support_rank) fail(errc::invalid_input, "basis must have support-rank many columns");
  if (count < spec.support_rank)
    fail(errc::k_too_small, "dictionary size " + std::to_string(count) + " below support rank " +
                                std::to_string(spec.support_rank));
  const SymMatrix gram_b(basis.transposed().multiply(basis));
  if (gram_b.definiteness() != Definiteness::pd)
    fail(errc::invalid_input, "basis columns are not linearly independent");
  const Matrix half_inv = spectral_map(gram_b, inv_sqrt).entries();
  SymMatrix sigma(
      half_inv.multiply(basis.transposed().multiply(spec.sigma_v.entries()).multiply(basis)).multiply(half_inv));
  const SymMatrix root = matrix_sqrt(sigma);
  SymMatrix h_star((count / root.trace()) * half_inv.multiply(root.entries()).multiply(half_inv));
  return {basis, std::move(h_star), std::move(sigma)};
}

OptimalSolution synthesize_full_rank(const MomentSpec& spec, int count) {
  SymMatrix m_star = optimal_gram_full_rank(spec, count);
  Rank1Decomposition dec = decompose_padded(m_star, SymMatrix::identity(spec.ambient_dim), count);
  Dictionary dict{count, std::move(dec.vectors), Matrix::identity(spec.ambient_dim)};
  const double value = closed_form_value(spec, count);
  return {dict, make_scheme(dict), std::move(m_star), value};
}

OptimalSolution synthesize_general(const MomentSpec& spec, int count) {
  if (spec.support_rank == spec.ambient_dim) return synthesize_full_rank(spec, count);
  GramGeneral gg = optimal_gram_general(spec, count);
  Rank1Decomposition dec = decompose_padded(gg.h_star, SymMatrix::identity(spec.support_rank), count);
  Matrix vectors = gg.basis.multiply(dec.vectors);
  Dictionary dict{count, std::move(vectors), gg.basis};
  SymMatrix gram(gg.basis.multiply(gg.h_star.entries()).multiply(gg.basis.transposed()));
  const double value = closed_form_value(spec, count);
  return {dict, make_scheme(dict), std::move(gram), value};
}

OptimalSolution synthesize_with_basis(const MomentSpec& spec, const Matrix& basis, int count) {
  GramGeneral gg = optimal_gram_with_basis(spec, basis, count);
  const SymMatrix gram_b(basis.transposed().multiply(basis));
  Rank1Decomposition dec = decompose_padded(gg.h_star, gram_b, count);
  Matrix vectors = basis.multiply(dec.vectors);
  // The stored basis is always the orthonormal one, so span checks read
  // uniformly downstream.
  Matrix ortho = spec.support_rank == spec.ambient_dim ? Matrix::identity(spec.ambient_dim)
                                                       : range_basis(spec.sigma_v);
  Dictionary dict{count, std::move(vectors), std::move(ortho)};
  SymMatrix gram(basis.multiply(gg.h_star.entries()).multiply(basis.transposed()));
  const double sq = sqrt_trace_of_support(gg.sigma_reduced);
  return {dict, make_scheme(dict), std::move(gram), sq * sq / count};
}

Vec represent(const Scheme& scheme, std::span<const double> v) {
  if (static_cast<int>(v.size()) != scheme.dictionary.vectors.rows())
    fail(errc::invalid_input, "sample dimension does not match the dictionary");
  Vec alpha = scheme.pinv_matrix.apply(v);
  const double rel = relative_residual(scheme.dictionary.vectors, alpha, v);
  if (rel > kRepresentTol)
    throw NotRepresentable(rel, "sample leaves the dictionary span (relative residual " + std::to_string(rel) + ")");
  return alpha;
}

double closed_form_value(const MomentSpec& spec, int count) {
  if (count < spec.support_rank)
    fail(errc::k_too_small, "dictionary size " + std::to_string(count) + " below support rank " +
                                std::to_string(spec.support_rank));
  const double sq = sqrt_trace_of_support(spec.sigma_v);
  return sq * sq / count;
}

double representation_cost(const MomentSpec& spec, const SymMatrix& surrogate, int count) {
  if (count < spec.support_rank)
    fail(errc::k_too_small, "dictionary size below support rank");
  if (surrogate.definiteness() == Definiteness::indefinite)
    fail(errc::not_psd, "surrogate moment must be positive semidefinite");
  if (surrogate.dim() != spec.ambient_dim) fail(errc::invalid_input, "surrogate dimension mismatch");
  if (surrogate.numeric_rank() != spec.support_rank)
    fail(errc::range_mismatch, "surrogate rank " + std::to_string(surrogate.numeric_rank()) +
                                   " differs from support rank " + std::to_string(spec.support_rank));
  const Matrix b = range_basis(surrogate);
  const Matrix b_true = range_basis(spec.sigma_v);
  // Principal-angle check: projecting the true range onto the surrogate
  // range must leave no residual.
  const Matrix overlap = b.transposed().multiply(b_true);
  const Matrix defect = b_true - b.multiply(overlap);
  for (int j = 0; j < defect.cols(); ++j)
    if (norm(defect.column(j)) > 1e-6)
      fail(errc::range_mismatch, "surrogate range differs from the support of the distribution");

  const SymMatrix sigma_m(b.transposed().multiply(surrogate.entries()).multiply(b));
  const SymMatrix sigma(b.transposed().multiply(spec.sigma_v.entries()).multiply(b));
  const double first = matrix_sqrt(sigma_m).trace();
  const SymMatrix inv_root = spectral_map(sigma_m, inv_sqrt);
  return first * trace_product(inv_root, sigma) / count;
}

MomentSpec estimate_moment(const std::vector<Vec>& samples) {
  if (samples.empty()) fail(errc::invalid_input, "no samples given");
  const int dim = static_cast<int>(samples.front().size());
  if (dim == 0) fail(errc::invalid_input, "samples must have positive dimension");
  Vec flat(samples.size() * dim);
  for (size_t k = 0; k < samples.size(); ++k) {
    if (static_cast<int>(samples[k].size()) != dim) fail(errc::invalid_input, "samples have mixed dimensions");
    for (int i = 0; i < dim; ++i) {
      const double x = samples[k][i];
      if (!std::isfinite(x)) fail(errc::invalid_input, "sample " + std::to_string(k) + " has a non-finite entry");
      flat[k * dim + i] = x;
    }
  }
  Matrix acc(dim, dim);
  kernels::second_moment(flat.data(), samples.size(), dim, acc.data());
  acc *= 1.0 / static_cast<double>(samples.size());
  return MomentSpec(SymMatrix(acc));
}

double empirical_cost(const Scheme& scheme, const std::vector<Vec>& samples) {
  if (samples.empty()) fail(errc::invalid_input, "no samples given");
  const int n = scheme.dictionary.vectors.rows();
  const long count = static_cast<long>(samples.size());
  Vec costs(samples.size());
  Vec relres(samples.size());
#pragma omp parallel for schedule(static) if (count > 256)
  for (long k = 0; k < count; ++k) {
    const Vec& v = samples[k];
    if (static_cast<int>(v.size()) != n) {
      costs[k] = -1.0;  // dimension flag, reported below
      relres[k] = -1.0;
      continue;
    }
    Vec alpha = scheme.pinv_matrix.apply(v);
    costs[k] = dot(alpha, alpha);
    relres[k] = relative_residual(scheme.dictionary.vectors, alpha, v);
  }
  for (long k = 0; k < count; ++k) {
    if (relres[k] < 0.0) fail(errc::invalid_input, "sample " + std::to_string(k) + " has the wrong dimension");
    if (relres[k] > kRepresentTol)
      throw NotRepresentable(relres[k], "sample " + std::to_string(k) + " leaves the dictionary span (residual " +
                                            std::to_string(relres[k]) + ")");
  }
  return kernels::pairwise_sum(costs) / static_cast<double>(samples.size());
}

std::vector<Vec> example_density_samples(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec> samples(count, Vec(2));
  for (std::size_t k = 0; k < count; ++k) {
    samples[k][0] = 1.0 + std::sqrt(uniform01(rng));
    samples[k][1] = 2.0 - std::sqrt(1.0 - uniform01(rng));
  }
  return samples;
}

}  // namespace l2dict
