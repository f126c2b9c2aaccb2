#pragma once

#include <optional>
#include <vector>

#include "l2dict/dictionary.hpp"
#include "l2dict/matrix.hpp"

namespace l2dict {

/// Frame bounds and tightness flags for a vector collection. The bounds are
/// the extreme eigenvalues of the frame operator S = sum x_i x_i^T; the
/// collection is a frame (spans) exactly when lower_bound > 0.
struct FrameReport {
  int count;
  int dim;
  double lower_bound;
  double upper_bound;
  bool is_tight;
  bool is_unit_norm;
  std::optional<double> untf_constant;  // present for unit-norm tight frames
};

FrameReport analyze_frame(const std::vector<Vec>& vectors);

/// True exactly when the dictionary is optimal for the uniform distribution
/// on the unit sphere: sum d_i d_i^T = (K/n) I and all norms are 1.
bool verify_sphere_optimality(const Dictionary& dictionary);

}  // namespace l2dict
