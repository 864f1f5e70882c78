#pragma once

#include <functional>
#include <span>

namespace dar::numerics {

inline constexpr double kDefaultQuadTol = 1e-8;

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // sum of Gauss-Kronrod error estimates over the final partition
  int intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over the whole
/// real line. The line is cut at each breakpoint; the two unbounded pieces
/// are mapped onto (0, 1] by x = p +/- (1 - t)/t. Integrable endpoint
/// singularities (log, kinks) are handled by bisection toward the breakpoint.
///
/// Throws dar::Error(NonConvergence) when `max_intervals` subintervals do
/// not bring the summed error estimate under `tol`.
[[nodiscard]] QuadratureResult integrate_real_line(const std::function<double(double)>& f,
                                                   std::span<const double> breakpoints,
                                                   double tol = kDefaultQuadTol,
                                                   int max_intervals = 5000);

/// Same scheme on a finite interval [a, b].
[[nodiscard]] QuadratureResult integrate_interval(const std::function<double(double)>& f, double a,
                                                  double b, double tol = kDefaultQuadTol,
                                                  int max_intervals = 5000);

/// Integral of log|phi + x sqrt(alpha)| density(x) dx over the real line,
/// split at the singularity x* = -phi/sqrt(alpha) and at 0. Assumes a
/// density of roughly unit scale.
[[nodiscard]] double integrate_log_kernel(const std::function<double(double)>& density, double phi,
                                          double alpha, double tol = kDefaultQuadTol);

}  // namespace dar::numerics
