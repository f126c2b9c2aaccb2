#pragma once

#include <optional>
#include <string>
#include <vector>

#include "l2dict/matrix.hpp"

namespace l2dict {

/// Discrete-time linear system x(t+1) = A x(t) + B u(t). The reachability
/// index (smallest horizon at which the reachability matrix attains its
/// maximal rank; at most the state dimension) is computed on construction.
class LtiSystem {
 public:
  LtiSystem(Matrix a, Matrix b, std::string id = "");

  const Matrix& a() const noexcept { return a_; }
  const Matrix& b() const noexcept { return b_; }
  const std::string& id() const noexcept { return id_; }
  int state_dim() const noexcept { return a_.rows(); }
  int input_dim() const noexcept { return b_.cols(); }
  int reach_index() const noexcept { return reach_index_; }

 private:
  Matrix a_;
  Matrix b_;
  std::string id_;
  int reach_index_;
};

/// [B, AB, ..., A^(K-1) B], the n x (K m) reachability matrix.
Matrix reachability_matrix(const LtiSystem& sys, int horizon);

struct GrammianReport {
  SymMatrix grammian;  // W = R R^T
  bool controllable;   // rank(W) == state dimension
  std::optional<double> energy_cost;  // trace(Sigma W^-1), absent if uncontrollable
  int horizon;
};

/// Expected minimum energy trace(Sigma W^-1) to steer the state from the
/// origin to a random target with second moment Sigma. Horizon defaults to
/// the reachability index.
GrammianReport expected_transfer_cost(const LtiSystem& sys, const SymMatrix& sigma,
                                      std::optional<int> horizon = std::nullopt);

struct RankedDesign {
  std::size_t input_index;
  std::string id;
  bool controllable;
  std::optional<double> cost;
};

/// Candidates ordered by ascending transfer cost, ties broken by input
/// index; uncontrollable systems are listed last and flagged.
std::vector<RankedDesign> rank_designs(const std::vector<LtiSystem>& candidates, const SymMatrix& sigma);

}  // namespace l2dict
