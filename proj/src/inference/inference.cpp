#include "dar/inference/inference.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "dar/error.hpp"
#include "dar/format.hpp"
#include "dar/numerics/parallel.hpp"

namespace dar::inference {

namespace {

double column_sd(const std::vector<Replicate>& reps, double Replicate::*field) {
  // Shifted by the first replicate so that identical replicates give exactly zero.
  const double count = static_cast<double>(reps.size());
  const double shift = reps.front().*field;
  double mean = 0.0;
  for (const auto& r : reps) mean += r.*field - shift;
  mean /= count;
  double ss = 0.0;
  for (const auto& r : reps) ss += (r.*field - shift - mean) * (r.*field - shift - mean);
  return std::sqrt(ss / (count - 1.0));
}

// log(omega + alpha y^2) for y = sign e^{l}, without forming y^2.
double log_conditional_variance(const model::DarParams& theta, double log_abs_y) {
  if (log_abs_y == -std::numeric_limits<double>::infinity()) return std::log(theta.omega);
  const double l2 = 2.0 * log_abs_y;
  if (l2 > 0.0) return l2 + std::log(theta.alpha + theta.omega * std::exp(-l2));
  return std::log(theta.omega + theta.alpha * std::exp(l2));
}

}  // namespace

void summarize(ResampleSummary& summary) {
  if (summary.replicates.size() < 2) {
    throw Error(ErrorKind::NonConvergence, "rw_variance: fewer than two usable replicates");
  }
  summary.se_phi = column_sd(summary.replicates, &Replicate::phi);
  summary.se_alpha = column_sd(summary.replicates, &Replicate::alpha);
  summary.se_omega = column_sd(summary.replicates, &Replicate::omega);
  summary.se_gamma = column_sd(summary.replicates, &Replicate::gamma);
}

ResampleSummary rw_variance(const model::SignedLogSeries& series, const estimation::FitResult& fit,
                            const estimation::ThetaBox& box,
                            const lyapunov::TruncationWindow& window,
                            const ResampleOptions& options) {
  if (options.B < kMinResamples) {
    throw Error(ErrorKind::Precondition, "rw_variance: B = " + std::to_string(options.B) +
                                             " is below the minimum of " +
                                             std::to_string(kMinResamples));
  }
  const std::size_t n = series.n();
  const model::LaggedPairs pairs = model::make_lagged_pairs(series);
  estimation::OptimizerSettings refit = options.optimizer;
  if (options.warm_start) {
    refit.initial_point = fit.theta_hat;
    refit.initial_step = options.warm_start_step;
  }
  const WeightLaw law = options.weight_law ? options.weight_law : estimation::draw_exponential_weights;
  const std::uint64_t redraw_root = numerics::derive_seed(options.seed, ~std::uint64_t{0});

  const auto replicate = [&](numerics::RngStream stream) -> Replicate {
    const estimation::WeightVector w = law(n, stream);
    const auto star = estimation::weighted_glade(series, box, w, refit);
    const double gamma = lyapunov::gamma_resampled(pairs, star.theta_hat, w.w, window);
    return {star.theta_hat.phi, star.theta_hat.alpha, star.theta_hat.omega, gamma};
  };

  struct Slot {
    std::optional<Replicate> value;
    bool redrawn = false;
  };
  std::vector<Slot> slots(options.B);
  numerics::parallel_for(options.B, options.threads, [&](std::size_t b) {
    try {
      slots[b].value = replicate(numerics::derive_stream(options.seed, b));
      return;
    } catch (const Error&) {
      slots[b].redrawn = true;
    }
    try {
      slots[b].value = replicate(numerics::derive_stream(redraw_root, b));
    } catch (const Error&) {
    }
  });

  ResampleSummary summary;
  summary.B = options.B;
  summary.replicates.reserve(options.B);
  for (const auto& slot : slots) {
    if (slot.redrawn) ++summary.redrawn;
    if (slot.value) {
      summary.replicates.push_back(*slot.value);
    } else {
      ++summary.shortfall;
    }
  }
  summarize(summary);
  return summary;
}

AsymptoticSe asymptotic_se_explosive(const model::DarParams& params,
                                     const model::InnovationSpec& spec, std::size_t n) {
  if (!(params.alpha > 0.0) || n == 0) {
    throw Error(ErrorKind::Precondition, "asymptotic_se_explosive: need alpha > 0 and n > 0");
  }
  const double f0 = spec.f0();
  const double nn = static_cast<double>(n);
  AsymptoticSe out;
  out.phi = std::sqrt(params.alpha / (4.0 * f0 * f0 * nn));
  out.alpha = std::sqrt(4.0 * (spec.kappa() - 1.0) * params.alpha * params.alpha / nn);
  out.omega = std::numeric_limits<double>::quiet_NaN();
  return out;
}

double sigma_moment(const model::SignedLogSeries& series, const model::DarParams& theta, int i,
                    int j) {
  model::validate(theta);
  const std::size_t n = series.n();
  if (n == 0) throw Error(ErrorKind::Precondition, "sigma_moment: empty series");
  double sum = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const auto& y = series.obs[t];
    if (y.is_zero()) {
      if (i == 0) sum += std::exp(-j * std::log(theta.omega));
      continue;
    }
    const double l = y.logmag();
    sum += std::exp(2.0 * i * l - j * log_conditional_variance(theta, l));
  }
  return sum / static_cast<double>(n);
}

AsymptoticSe asymptotic_se_stationary(const model::SignedLogSeries& series,
                                      const model::DarParams& theta,
                                      const model::InnovationSpec& spec) {
  const double s11 = sigma_moment(series, theta, 1, 1);
  const double s22 = sigma_moment(series, theta, 2, 2);
  const double s12 = sigma_moment(series, theta, 1, 2);
  const double s02 = sigma_moment(series, theta, 0, 2);
  const double det = s22 * s02 - s12 * s12;
  if (!(det > 1e-12 * s22 * s02) || !(s11 > 0.0)) {
    throw Error(ErrorKind::SingularSigma, "asymptotic_se_stationary: Sigma is numerically singular");
  }
  const double f0 = spec.f0();
  const double scale = 4.0 * (spec.kappa() - 1.0);
  const double nn = static_cast<double>(series.n());
  AsymptoticSe out;
  out.phi = std::sqrt(1.0 / (4.0 * s11 * f0 * f0) / nn);
  out.alpha = std::sqrt(scale * s02 / det / nn);
  out.omega = std::sqrt(scale * s22 / det / nn);
  return out;
}

double t_statistic(double gamma_hat, double se_gamma) {
  if (!(se_gamma > 0.0)) throw Error(ErrorKind::Precondition, "t_statistic: se_gamma must be > 0");
  return gamma_hat / se_gamma;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::Precondition, "normal_quantile: p outside (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

TestReport test_stationarity(double gamma_hat, double se_gamma, std::size_t n, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorKind::Precondition, "test_stationarity: level must lie in (0, 1)");
  }
  TestReport r;
  r.gamma_hat = gamma_hat;
  r.se_gamma = se_gamma;
  r.n = n;
  r.level = level;
  r.t_stat = t_statistic(gamma_hat, se_gamma);
  const double half_width = se_gamma * normal_quantile(1.0 - level / 2.0);
  r.ci_lo = gamma_hat - half_width;
  r.ci_hi = gamma_hat + half_width;
  r.st_reject = r.t_stat > normal_quantile(1.0 - level);
  r.ns_reject = r.t_stat < normal_quantile(level);
  r.p_st = 1.0 - normal_cdf(r.t_stat);
  r.p_ns = normal_cdf(r.t_stat);
  return r;
}

std::string to_key_value(const TestReport& r) {
  std::ostringstream out;
  out << "gamma_hat = " << format_real(r.gamma_hat) << '\n'
      << "se_gamma = " << format_real(r.se_gamma) << '\n'
      << "n = " << r.n << '\n'
      << "t_stat = " << format_real(r.t_stat) << '\n'
      << "level = " << format_real(r.level) << '\n'
      << "ci_lo = " << format_real(r.ci_lo) << '\n'
      << "ci_hi = " << format_real(r.ci_hi) << '\n'
      << "st_reject = " << (r.st_reject ? "true" : "false") << '\n'
      << "ns_reject = " << (r.ns_reject ? "true" : "false") << '\n'
      << "p_st = " << format_real(r.p_st) << '\n'
      << "p_ns = " << format_real(r.p_ns) << '\n';
  return out.str();
}

std::string csv_header(const TestReport&) {
  return "gamma_hat,se_gamma,n,t_stat,level,ci_lo,ci_hi,st_reject,ns_reject,p_st,p_ns";
}

std::string to_csv_row(const TestReport& r) {
  std::ostringstream out;
  out << format_real(r.gamma_hat) << ',' << format_real(r.se_gamma) << ',' << r.n << ','
      << format_real(r.t_stat) << ',' << format_real(r.level) << ',' << format_real(r.ci_lo) << ','
      << format_real(r.ci_hi) << ',' << (r.st_reject ? 1 : 0) << ',' << (r.ns_reject ? 1 : 0) << ','
      << format_real(r.p_st) << ',' << format_real(r.p_ns);
  return out.str();
}

}  // namespace dar::inference
