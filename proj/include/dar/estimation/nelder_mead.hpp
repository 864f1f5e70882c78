#pragma once

#include <functional>
#include <vector>

namespace dar::estimation {

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int evals = 0;
  bool converged = false;
};

/// Nelder-Mead simplex minimization (reflection 1, expansion 2, contraction
/// 1/2, shrink 1/2) from an axis-aligned simplex of edge `step` around x0.
///
/// Converged when every vertex lies within `xtol` (max-norm) of the best
/// vertex and the value spread is below `ftol`.
[[nodiscard]] SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                        std::vector<double> x0, double step, double xtol,
                                        double ftol, int max_evals);

}  // namespace dar::estimation
