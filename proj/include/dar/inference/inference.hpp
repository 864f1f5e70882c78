#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dar/estimation/glade.hpp"
#include "dar/lyapunov/gamma.hpp"
#include "dar/model/innovation.hpp"

namespace dar::inference {

/// One random-weighting replicate (phi*, alpha*, omega*, gamma*).
struct Replicate {
  double phi = 0.0;
  double alpha = 0.0;
  double omega = 0.0;
  double gamma = 0.0;
};

/// Random-weighting summary. Standard errors are replicate-column standard
/// deviations (divisor B - 1): the per-sample scale of the estimator itself,
/// i.e. the sqrt(n)-scale sigma-hat divided by sqrt(n).
struct ResampleSummary {
  std::size_t B = 0;  ///< requested replicates
  std::vector<Replicate> replicates;
  double se_phi = 0.0;
  double se_alpha = 0.0;
  double se_omega = 0.0;
  double se_gamma = 0.0;
  std::size_t redrawn = 0;   ///< replicates that failed once and were redrawn
  std::size_t shortfall = 0; ///< replicates dropped after a failed redraw
};

/// Draws one weight vector of length n.
using WeightLaw = std::function<estimation::WeightVector(std::size_t, numerics::RngStream&)>;

struct ResampleOptions {
  std::size_t B = 500;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Settings for the weighted refits.
  estimation::OptimizerSettings optimizer{};
  /// Start each refit from the base estimate alone. When false the refits use
  /// `optimizer` unchanged, i.e. the same starts as the base fit.
  bool warm_start = true;
  double warm_start_step = 0.05;
  /// Defaults to unit-exponential weights.
  WeightLaw weight_law;
};

inline constexpr std::size_t kMinResamples = 50;

/// Draws B weight vectors (stream b of `seed` for replicate b), refits the
/// weighted criterion, computes the resampled gamma, and summarizes.
/// A replicate whose fit fails is redrawn once from an independent stream and
/// dropped if that fails too. B < 50 is a Precondition error.
[[nodiscard]] ResampleSummary rw_variance(const model::SignedLogSeries& series,
                                          const estimation::FitResult& fit,
                                          const estimation::ThetaBox& box,
                                          const lyapunov::TruncationWindow& window,
                                          const ResampleOptions& options);

/// Column standard deviations (divisor B - 1) of a set of replicates.
void summarize(ResampleSummary& summary);

struct AsymptoticSe {
  double phi = 0.0;
  double alpha = 0.0;
  double omega = 0.0;  ///< only set by the stationary formula
};

/// Explosive-regime standard errors sqrt(J_N,kk / n), J_N = diag{alpha/(4 f(0)^2), 4 (kappa - 1) alpha^2}.
[[nodiscard]] AsymptoticSe asymptotic_se_explosive(const model::DarParams& params,
                                                   const model::InnovationSpec& spec,
                                                   std::size_t n);

/// Plug-in moments sigma_ij = (1/n) sum_t y^{2i} / (omega + alpha y^2)^j over the lagged values y_0..y_{n-1}.
[[nodiscard]] double sigma_moment(const model::SignedLogSeries& series,
                                  const model::DarParams& theta, int i, int j);

/// Stationary-regime plug-in standard errors sqrt(J_S,kk / n) with
/// J_S = diag{1/(4 sigma_11 f(0)^2), 4 (kappa - 1) Sigma^{-1}},
/// Sigma = [[sigma_22, sigma_12], [sigma_12, sigma_02]]. Throws SingularSigma.
[[nodiscard]] AsymptoticSe asymptotic_se_stationary(const model::SignedLogSeries& series,
                                                    const model::DarParams& theta,
                                                    const model::InnovationSpec& spec);

/// T_n = gamma_hat / se_gamma with se_gamma on the per-sample scale.
[[nodiscard]] double t_statistic(double gamma_hat, double se_gamma);

struct TestReport {
  double gamma_hat = 0.0;
  double se_gamma = 0.0;
  std::size_t n = 0;
  double t_stat = 0.0;
  double level = 0.05;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  bool st_reject = false;  ///< reject H0: gamma < 0 (T_n > z_{1-level})
  bool ns_reject = false;  ///< reject H0: gamma > 0 (T_n < z_{level})
  double p_st = 0.0;       ///< 1 - Phi(T_n)
  double p_ns = 0.0;       ///< Phi(T_n)
};

[[nodiscard]] TestReport test_stationarity(double gamma_hat, double se_gamma, std::size_t n,
                                           double level = 0.05);

[[nodiscard]] double normal_cdf(double x);
[[nodiscard]] double normal_quantile(double p);

/// key = value lines, fields in declaration order.
[[nodiscard]] std::string to_key_value(const TestReport& report);
[[nodiscard]] std::string csv_header(const TestReport&);
[[nodiscard]] std::string to_csv_row(const TestReport& report);

}  // namespace dar::inference
