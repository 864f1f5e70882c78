#pragma once

#include <cstddef>
#include <span>

#include "dar/estimation/glade.hpp"
#include "dar/model/innovation.hpp"
#include "dar/model/params.hpp"
#include "dar/model/series.hpp"
#include "dar/numerics/quadrature.hpp"

namespace dar::lyapunov {

/// I_n = [-n^2, -n^-2] U [n^-2, n^2]
struct TruncationWindow {
  std::size_t n = 0;
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] static TruncationWindow for_sample_size(std::size_t n);
  [[nodiscard]] bool contains(double v) const noexcept;
};

struct GammaEstimate {
  double gamma_hat = 0.0;
  std::size_t n_a1 = 0;  ///< terms phi + eta sqrt(alpha) inside the window
  std::size_t n_a2 = 0;  ///< terms phi - eta sqrt(alpha) inside the window
  std::size_t truncated_count = 0;
};

/// (1/2n) sum_t (log|phi + eta_t sqrt(alpha)| + log|phi - eta_t sqrt(alpha)|).
/// Throws SingularTerm if any modulus is exactly zero.
[[nodiscard]] double gamma_natural(double phi_hat, double alpha_hat,
                                   std::span<const double> residuals);

/// Same sum restricted to terms inside the window, still divided by 2n.
[[nodiscard]] GammaEstimate gamma_truncated(double phi_hat, double alpha_hat,
                                            std::span<const double> residuals,
                                            const TruncationWindow& window);

/// Random-weighting replicate of the truncated estimator: residuals at the
/// weighted fit, the two half-sums each averaged with weights w_t over their
/// in-window sets, then averaged. Throws EmptySet if a set has zero weight.
[[nodiscard]] double gamma_resampled(const model::SignedLogSeries& series,
                                     const estimation::FitResult& fit_star,
                                     const estimation::WeightVector& w,
                                     const TruncationWindow& window);

/// Pair-level form used inside resampling loops.
[[nodiscard]] double gamma_resampled(const model::LaggedPairs& pairs,
                                     const model::DarParams& theta_star,
                                     std::span<const double> w, const TruncationWindow& window);

/// gamma_0 = E log|phi + eta sqrt(alpha)| by quadrature.
[[nodiscard]] double true_gamma(const model::DarParams& params, const model::InnovationSpec& spec,
                                double tol = numerics::kDefaultQuadTol);

/// The alpha with true_gamma((phi, alpha), spec) = 0, by bisection in log alpha.
/// Throws NoRoot when no sign change can be bracketed in [1e-6, 1e6] (expanded
/// geometrically), e.g. when |phi| >= 1 makes gamma positive for every alpha.
[[nodiscard]] double boundary_alpha(const model::InnovationSpec& spec, double phi,
                                    double tol = 1e-6);

}  // namespace dar::lyapunov
