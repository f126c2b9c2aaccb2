#include "l2dict/control.hpp"

#include <algorithm>
#include <utility>

#include "l2dict/linalg.hpp"

namespace l2dict {

namespace {

int reach_rank(const LtiSystem& sys, int horizon) {
  const Matrix r = reachability_matrix(sys, horizon);
  return SymMatrix(r.multiply_transposed(r)).numeric_rank();
}

}  // namespace

LtiSystem::LtiSystem(Matrix a, Matrix b, std::string id)
    : a_(std::move(a)), b_(std::move(b)), id_(std::move(id)), reach_index_(0) {
  if (a_.rows() != a_.cols()) fail(errc::invalid_input, "system matrix A must be square");
  if (a_.rows() == 0) fail(errc::invalid_input, "system has no states");
  if (b_.rows() != a_.rows()) fail(errc::invalid_input, "control matrix B must have one row per state");
  if (b_.cols() == 0) fail(errc::invalid_input, "control matrix B has no inputs");
  if (!a_.all_finite() || !b_.all_finite()) fail(errc::invalid_input, "system matrices have non-finite entries");

  const int n = state_dim();
  const int full = reach_rank(*this, n);
  reach_index_ = n;
  for (int k = 1; k <= n; ++k) {
    if (reach_rank(*this, k) == full) {
      reach_index_ = k;
      break;
    }
  }
}

Matrix reachability_matrix(const LtiSystem& sys, int horizon) {
  if (horizon < 1) fail(errc::invalid_input, "reachability horizon must be at least 1");
  const int n = sys.state_dim();
  const int m = sys.input_dim();
  Matrix r(n, horizon * m);
  Matrix block = sys.b();
  for (int k = 0; k < horizon; ++k) {
    if (k > 0) block = sys.a().multiply(block);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) r(i, k * m + j) = block(i, j);
  }
  return r;
}

GrammianReport expected_transfer_cost(const LtiSystem& sys, const SymMatrix& sigma, std::optional<int> horizon) {
  const int n = sys.state_dim();
  if (sigma.dim() != n) fail(errc::invalid_input, "target moment dimension does not match the state");
  if (sigma.definiteness() == Definiteness::indefinite)
    fail(errc::not_psd, "target second moment must be positive semidefinite");
  const int h = horizon.value_or(sys.reach_index());
  const Matrix r = reachability_matrix(sys, h);
  SymMatrix w(r.multiply_transposed(r));
  const bool controllable = w.numeric_rank() == n;
  std::optional<double> cost;
  if (controllable) cost = trace_product(sigma, psd_pinv(w));
  return {std::move(w), controllable, cost, h};
}

std::vector<RankedDesign> rank_designs(const std::vector<LtiSystem>& candidates, const SymMatrix& sigma) {
  if (candidates.empty()) fail(errc::invalid_input, "no candidate systems given");
  for (const LtiSystem& sys : candidates)
    if (sys.state_dim() != candidates.front().state_dim())
      fail(errc::invalid_input, "candidate systems have mixed state dimensions");
  if (sigma.dim() != candidates.front().state_dim())
    fail(errc::invalid_input, "target moment dimension does not match the candidates");
  if (sigma.definiteness() == Definiteness::indefinite)
    fail(errc::not_psd, "target second moment must be positive semidefinite");

  std::vector<RankedDesign> ranked(candidates.size());
  const long count = static_cast<long>(candidates.size());
#pragma omp parallel for schedule(dynamic) if (count > 1)
  for (long i = 0; i < count; ++i) {
    GrammianReport report = expected_transfer_cost(candidates[i], sigma);
    ranked[i] = {static_cast<std::size_t>(i), candidates[i].id(), report.controllable, report.energy_cost};
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedDesign& x, const RankedDesign& y) {
    if (x.controllable != y.controllable) return x.controllable;
    if (x.controllable && *x.cost != *y.cost) return *x.cost < *y.cost;
    return x.input_index < y.input_index;
  });
  return ranked;
}

}  // namespace l2dict
