#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace windbid {

struct LpResult {
  std::vector<double> solution;
  double objective = 0.0;
  /// False when the bounding box clipped the solution, which signals a
  /// numerically unbounded direction that survived preprocessing.
  bool interior = true;
};

/// Maximize c.q subject to rows[i].q <= rhs[i] and |q_j| <= box, by
/// randomized incremental LP (expected O(d! n) for fixed dimension).
/// Deterministic for a fixed seed. Intended for d <= 8.
LpResult solve_lp_max(std::span<const double> objective,
                      std::span<const std::vector<double>> rows,
                      std::span<const double> rhs, double box, std::uint64_t seed);

}  // namespace windbid
