#pragma once

#include <vector>

namespace hardy {

/// Numerical knobs shared by every module.
///
/// `grid_size` is the number of boundary samples used for pointwise work on
/// the circle. It must be a power of two and at least 4(N+1) so that products
/// of two degree-N factors are not aliased.
struct ToleranceConfig {
  int trunc_degree = 64;
  int grid_size = 512;
  double rank_tol = 1e-8;
  double residual_tol = 1e-8;
  std::vector<int> ladder = {16, 32, 64};

  /// Throws PreconditionError when the invariants above do not hold.
  void validate() const;

  /// Copy with `trunc_degree = n` and the grid grown (never shrunk) to the
  /// smallest admissible power of two.
  ToleranceConfig with_degree(int n) const;
};

/// Smallest power of two >= max(current, 4(n+1)).
int admissible_grid(int n, int current);

}  // namespace hardy
