#pragma once

#include <optional>

#include "dar/estimation/objective.hpp"

namespace dar::estimation {

/// Compact parameter box Theta.
struct ThetaBox {
  double phi_lo = -5.0;
  double phi_hi = 5.0;
  double alpha_lo = 1e-6;
  double alpha_hi = 50.0;
  double omega_lo = 1e-6;
  double omega_hi = 50.0;

  void validate() const;
  [[nodiscard]] bool contains(const DarParams& p) const noexcept;
  /// The box with omega bounds multiplied by c^2 (the image of Theta under y -> c y).
  [[nodiscard]] ThetaBox rescaled(double c) const;

  /// phi in [-5, 5], alpha in [1e-6, 50], omega in [1e-6 min(1, s^2), 50 max(s^2, 1e-6)]
  /// with s^2 the median of y_t^2.
  [[nodiscard]] static ThetaBox default_for(const SignedLogSeries& series);
};

struct OptimizerSettings {
  double xtol = 1e-8;  ///< simplex diameter in transformed coordinates
  double ftol = 1e-10;
  int max_evals = 20000;  ///< per start
  int n_starts = 5;
  /// Simplex edge in transformed coordinates.
  double initial_step = 0.5;
  /// When set, the search runs a single start from this point instead of the
  /// deterministic multi-start set.
  std::optional<DarParams> initial_point;
};

struct FitResult {
  DarParams theta_hat;
  double objective_value = 0.0;
  bool converged = false;
  int n_evals = 0;
  bool at_boundary = false;
  int best_start = 0;
};

/// Global LAD estimate: argmin over the box of objective(series, theta).
///
/// For fixed (alpha, omega) the LAD criterion is convex and piecewise linear
/// in phi, minimized by a weighted median of the ratios y_t / y_{t-1}
/// (clamped to the box). The search therefore runs Nelder-Mead over
/// (alpha, omega) only, each mapped log-sigmoidally onto its box interval,
/// with phi profiled out exactly.
///
/// Throws DegenerateSeries for fewer than 3 distinct values, Precondition for
/// n < 10, NonConvergence when no start converges within its budget.
[[nodiscard]] FitResult glade(const SignedLogSeries& series, const ThetaBox& box,
                              const OptimizerSettings& opts = {});

/// Minimizer of weighted_objective; same algorithm and starts as glade.
[[nodiscard]] FitResult weighted_glade(const SignedLogSeries& series, const ThetaBox& box,
                                       const WeightVector& w, const OptimizerSettings& opts = {});

/// Gaussian QMLE over the same box; phi is profiled out by weighted least squares.
[[nodiscard]] FitResult qmle(const SignedLogSeries& series, const ThetaBox& box,
                             const OptimizerSettings& opts = {});

/// 1/2 (|phi_hat - phi_0| + |alpha_hat / alpha_0 - 1|)
[[nodiscard]] double aae(const FitResult& fit, const DarParams& truth);
[[nodiscard]] double aae(const DarParams& estimate, const DarParams& truth);

}  // namespace dar::estimation
