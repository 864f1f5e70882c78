#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dar/model/innovation.hpp"
#include "dar/model/params.hpp"
#include "dar/numerics/rng.hpp"
#include "dar/numerics/signed_log.hpp"

namespace dar::model {

using numerics::SignedLog;

/// Observations y_0 ... y_n in signed-log form.
struct SignedLogSeries {
  std::vector<SignedLog> obs;

  /// Number of transitions (observations minus one).
  [[nodiscard]] std::size_t n() const noexcept { return obs.empty() ? 0 : obs.size() - 1; }

  [[nodiscard]] static SignedLogSeries from_reals(std::span<const double> values);
  [[nodiscard]] SignedLogSeries negated() const;
  [[nodiscard]] SignedLogSeries scaled(double c) const;
  /// Plain doubles; throws Overflow if any observation is out of range.
  [[nodiscard]] std::vector<double> to_reals() const;
};

struct SimulatedPath {
  SignedLogSeries series;
  /// innovations[t-1] drove the step y_{t-1} -> y_t, t = 1..n.
  std::vector<double> innovations;
};

/// Simulates from y_start = 0, discards `burn_in` steps, and returns y_0 ... y_n.
///
/// Magnitudes below 2^400 step with plain doubles. Beyond that the step is
/// y_t = y_{t-1} (phi + sign(y_{t-1}) eta_t sqrt(alpha + omega e^{-2 l})),
/// l = log|y_{t-1}|, so the exponent accumulates additively and never overflows.
[[nodiscard]] SimulatedPath simulate_with_innovations(const DarParams& params,
                                                      const InnovationSpec& spec, std::size_t n,
                                                      std::size_t burn_in,
                                                      numerics::RngStream& stream);

[[nodiscard]] SignedLogSeries simulate(const DarParams& params, const InnovationSpec& spec,
                                       std::size_t n, std::size_t burn_in,
                                       numerics::RngStream& stream);

/// Same recursion driven by caller-provided innovations (n = innovations.size()).
[[nodiscard]] SignedLogSeries simulate_from_innovations(const DarParams& params,
                                                        std::span<const double> innovations,
                                                        SignedLog start = {});

/// Transitions y_{t-1} -> y_t rescaled by 2^{-k_t}, k_t = max(exponent(y_{t-1}) + 1, 0),
/// so |x_t| < 1 and every conditional-variance quantity stays in range:
///   omega + alpha y_{t-1}^2 = 4^{k_t} (omega e_t + alpha x_t^2),  e_t = 4^{-k_t}
///   y_t - phi y_{t-1}       = 2^{k_t} (z_t - phi x_t)
struct LaggedPairs {
  std::vector<double> x;
  std::vector<double> z;
  std::vector<double> e;
  std::vector<double> log_scale;  ///< k_t ln 2

  [[nodiscard]] std::size_t size() const noexcept { return x.size(); }
};

[[nodiscard]] LaggedPairs make_lagged_pairs(const SignedLogSeries& series);

/// Rescaled residuals eta_t(theta), t = 1..n. Finite even when y_t overflows a double.
[[nodiscard]] std::vector<double> residuals(const SignedLogSeries& series, const DarParams& theta);
[[nodiscard]] std::vector<double> residuals(const LaggedPairs& pairs, const DarParams& theta);

}  // namespace dar::model
