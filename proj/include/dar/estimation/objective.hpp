#pragma once

#include <cstddef>
#include <vector>

#include "dar/model/params.hpp"
#include "dar/model/series.hpp"
#include "dar/numerics/rng.hpp"

namespace dar::estimation {

using model::DarParams;
using model::LaggedPairs;
using model::SignedLogSeries;

/// Resampling weights, one per transition t = 1..n.
struct WeightVector {
  std::vector<double> w;

  [[nodiscard]] std::size_t size() const noexcept { return w.size(); }
  [[nodiscard]] static WeightVector ones(std::size_t n) { return {std::vector<double>(n, 1.0)}; }
};

/// n i.i.d. unit-exponential weights (mean 1, variance 1).
[[nodiscard]] WeightVector draw_exponential_weights(std::size_t n, numerics::RngStream& stream);

/// L_n(theta)/n: mean over t of
///   1/2 log(omega + alpha y_{t-1}^2) + |y_t - phi y_{t-1}| / sqrt(omega + alpha y_{t-1}^2).
[[nodiscard]] double objective(const SignedLogSeries& series, const DarParams& theta);

/// Weighted version; throws LengthMismatch unless w.size() == n.
[[nodiscard]] double weighted_objective(const SignedLogSeries& series, const DarParams& theta,
                                        const WeightVector& w);

/// Gaussian quasi-likelihood, mean over t of
///   1/2 log(omega + alpha y_{t-1}^2) + (y_t - phi y_{t-1})^2 / (2 (omega + alpha y_{t-1}^2)).
[[nodiscard]] double gaussian_objective(const SignedLogSeries& series, const DarParams& theta);

// Pair-level versions used by the optimizers; `w` may be empty (unit weights).
[[nodiscard]] double lad_objective(const LaggedPairs& pairs, const DarParams& theta,
                                   const std::vector<double>& w = {});
[[nodiscard]] double gaussian_objective(const LaggedPairs& pairs, const DarParams& theta,
                                        const std::vector<double>& w = {});

}  // namespace dar::estimation
