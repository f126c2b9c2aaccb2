#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "l2dict/matrix.hpp"

namespace l2dict {

/// Second-moment description of the random vector to be represented.
/// support_rank is the dimension of range(sigma_v), the smallest subspace
/// carrying the distribution.
struct MomentSpec {
  explicit MomentSpec(SymMatrix second_moment);

  SymMatrix sigma_v;
  int ambient_dim;
  int support_rank;
};

/// K unit-norm vectors spanning range(sigma_v), stored as columns, together
/// with an orthonormal basis of that range (identity block when full rank).
struct Dictionary {
  int size;
  Matrix vectors;  // n x K
  Matrix basis;    // n x m, orthonormal columns
};

/// Least-squares representation map v -> D+ v.
struct Scheme {
  Dictionary dictionary;
  Matrix pinv_matrix;  // K x n
};

struct OptimalSolution {
  Dictionary dictionary;
  Scheme scheme;
  SymMatrix gram;  // sum of d_i d_i^T the dictionary realizes
  double optimal_value;
};

/// Reduced quantities behind the rank-deficient synthesis: basis B of the
/// support, the reduced second moment, and the optimal coefficient Gram H*.
struct GramGeneral {
  Matrix basis;            // n x m
  SymMatrix h_star;        // m x m
  SymMatrix sigma_reduced;  // m x m
};

/// Optimal dictionary Gram M* = K/trace(S^(1/2)) * S^(1/2) for the
/// full-rank case. Errors: use_general_path when sigma_v is singular,
/// k_too_small when K < n.
SymMatrix optimal_gram_full_rank(const MomentSpec& spec, int count);

/// Reduced-basis form valid for any support rank; uses the orthonormal
/// eigenvector basis, collapsing the (B^T B)^(+-1/2) factors to identity.
GramGeneral optimal_gram_general(const MomentSpec& spec, int count);

/// Same, for an arbitrary full-column-rank basis of range(sigma_v); kept to
/// cross-check basis independence of the optimum.
GramGeneral optimal_gram_with_basis(const MomentSpec& spec, const Matrix& basis, int count);

OptimalSolution synthesize_full_rank(const MomentSpec& spec, int count);
OptimalSolution synthesize_general(const MomentSpec& spec, int count);
OptimalSolution synthesize_with_basis(const MomentSpec& spec, const Matrix& basis, int count);

/// Minimum-norm coefficients for v; errors with not_representable when v
/// leaves the dictionary span by more than 1e-6 relative.
Vec represent(const Scheme& scheme, std::span<const double> v);

/// (trace Sigma^(1/2))^2 / K with Sigma the reduced second moment.
double closed_form_value(const MomentSpec& spec, int count);

/// Average representation cost J(M) when the dictionary is synthesized from
/// the surrogate moment M but samples follow spec. Requires
/// range(M) = range(sigma_v).
double representation_cost(const MomentSpec& spec, const SymMatrix& surrogate, int count);

/// Second moment about zero (1/N) sum v v^T.
MomentSpec estimate_moment(const std::vector<Vec>& samples);

/// Mean of ||represent(v)||^2 over the samples (pairwise summation order).
double empirical_cost(const Scheme& scheme, const std::vector<Vec>& samples);

/// Built-in example distribution on [1,2]^2: independent coordinates with
/// triangular densities 2(v-1) and 2(2-v), drawn by inverse CDF. Its second
/// moment is [[17/6, 20/9], [20/9, 11/6]].
std::vector<Vec> example_density_samples(std::size_t count, std::uint64_t seed);

}  // namespace l2dict
