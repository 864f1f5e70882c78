#include "dar/estimation/glade.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "dar/error.hpp"
#include "dar/estimation/nelder_mead.hpp"

namespace dar::estimation {

namespace {

enum class Criterion { Lad, Gaussian };

constexpr double kCoordLimit = 30.0;      // |u| cap in transformed coordinates
constexpr double kStartLimit = 8.0;       // starts are kept off the saturated ends
constexpr double kBoundaryCoord = 20.0;   // |u| beyond this counts as an active bound
constexpr int kMaxRestarts = 3;

double sigmoid(double u) { return 1.0 / (1.0 + std::exp(-u)); }

/// log-sigmoid map of one positive coordinate onto [lo, hi]
class LogSigmoidAxis {
 public:
  LogSigmoidAxis(double lo, double hi) : log_lo_(std::log(lo)), span_(std::log(hi) - std::log(lo)) {}

  [[nodiscard]] double to_value(double u) const {
    return std::exp(log_lo_ + span_ * sigmoid(std::clamp(u, -kCoordLimit, kCoordLimit)));
  }
  [[nodiscard]] double to_coord(double value, double limit) const {
    const double s = std::clamp((std::log(value) - log_lo_) / span_, 1e-12, 1.0 - 1e-12);
    return std::clamp(std::log(s / (1.0 - s)), -limit, limit);
  }

 private:
  double log_lo_;
  double span_;
};

double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

/// The criterion with phi minimized out in closed form for given (alpha, omega).
class ProfileProblem {
 public:
  struct Point {
    double value;
    long double exact;
    double phi;
    bool phi_clamped;
  };

  ProfileProblem(const LaggedPairs& pairs, const ThetaBox& box, const std::vector<double>& w,
                 Criterion criterion)
      : pairs_(pairs), box_(box), w_(w), criterion_(criterion), sd_(pairs.size()) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (pairs.x[i] != 0.0) {
        ratio_index_.push_back(i);
      }
    }
    ratio_.resize(pairs.size(), 0.0);
    for (std::size_t i : ratio_index_) ratio_[i] = pairs.z[i] / pairs.x[i];
    std::stable_sort(ratio_index_.begin(), ratio_index_.end(),
                     [this](std::size_t a, std::size_t b) { return ratio_[a] < ratio_[b]; });
  }

  [[nodiscard]] Point evaluate(double alpha, double omega) const {
    // Extended accumulators keep the summation noise well below xtol^2, so the
    // minimizer is resolved to the optimizer tolerance.
    const std::size_t n = pairs_.size();
    long double log_part = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = pairs_.x[i];
      const double var = omega * pairs_.e[i] + alpha * x * x;
      sd_[i] = std::sqrt(var);
      log_part += weight(i) * (pairs_.log_scale[i] + std::log(sd_[i]));
    }
    const double raw_phi = criterion_ == Criterion::Lad ? weighted_median_phi() : least_squares_phi();
    const double phi = std::clamp(raw_phi, box_.phi_lo, box_.phi_hi);
    long double fit_part = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      const double dev = (pairs_.z[i] - phi * pairs_.x[i]) / sd_[i];
      fit_part += weight(i) * (criterion_ == Criterion::Lad ? std::fabs(dev) : 0.5 * dev * dev);
    }
    const long double exact = (log_part + fit_part) / static_cast<long double>(n);
    return {static_cast<double>(exact), exact, phi, phi != raw_phi};
  }

 private:
  [[nodiscard]] double weight(std::size_t i) const { return w_.empty() ? 1.0 : w_[i]; }

  // argmin_phi sum_t w_t |x_t| / sd_t * |ratio_t - phi|
  [[nodiscard]] double weighted_median_phi() const {
    double total = 0.0;
    for (std::size_t i : ratio_index_) total += weight(i) * std::fabs(pairs_.x[i]) / sd_[i];
    if (!(total > 0.0)) return 0.0;
    const double half = 0.5 * total;
    double cumulative = 0.0;
    for (std::size_t i : ratio_index_) {
      cumulative += weight(i) * std::fabs(pairs_.x[i]) / sd_[i];
      if (cumulative >= half) return ratio_[i];
    }
    return ratio_[ratio_index_.back()];
  }

  [[nodiscard]] double least_squares_phi() const {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      const double x = pairs_.x[i] / sd_[i];
      num += weight(i) * x * pairs_.z[i] / sd_[i];
      den += weight(i) * x * x;
    }
    return den > 0.0 ? num / den : 0.0;
  }

  const LaggedPairs& pairs_;
  const ThetaBox& box_;
  const std::vector<double>& w_;
  Criterion criterion_;
  std::vector<std::size_t> ratio_index_;
  std::vector<double> ratio_;
  mutable std::vector<double> sd_;
};

std::size_t distinct_values(const SignedLogSeries& series) {
  auto obs = series.obs;
  const auto key = [](const numerics::SignedLog& v) {
    return std::tuple(v.sign(), v.sign() * v.exponent(), v.sign() * v.mantissa());
  };
  std::sort(obs.begin(), obs.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return static_cast<std::size_t>(std::unique(obs.begin(), obs.end()) - obs.begin());
}

/// Data-driven pilot (alpha, omega): squared scaled deviations from a median
/// ratio fit, split by the magnitude of y_{t-1}.
std::pair<double, double> pilot_values(const LaggedPairs& pairs, const ThetaBox& box) {
  std::vector<double> ratios;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs.x[i] != 0.0) ratios.push_back(pairs.z[i] / pairs.x[i]);
  }
  const double phi0 = ratios.empty() ? 0.0 : std::clamp(median_of(ratios), box.phi_lo, box.phi_hi);

  std::vector<std::size_t> idx(pairs.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const auto log_abs_prev = [&](std::size_t i) {
    return pairs.x[i] == 0.0 ? -std::numeric_limits<double>::infinity()
                             : std::log(std::fabs(pairs.x[i])) + pairs.log_scale[i];
  };
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return log_abs_prev(a) < log_abs_prev(b); });
  const std::size_t half = idx.size() / 2;

  std::vector<double> alpha_terms;
  for (std::size_t j = half; j < idx.size(); ++j) {
    const std::size_t i = idx[j];
    if (pairs.x[i] == 0.0) continue;
    const double r = (pairs.z[i] - phi0 * pairs.x[i]) / pairs.x[i];
    alpha_terms.push_back(r * r);
  }
  std::vector<double> log_omega_terms;
  for (std::size_t j = 0; j < std::max<std::size_t>(half, 1); ++j) {
    const std::size_t i = idx[j];
    const double d = std::fabs(pairs.z[i] - phi0 * pairs.x[i]);
    if (d > 0.0) log_omega_terms.push_back(2.0 * (std::log(d) + pairs.log_scale[i]));
  }
  double alpha = alpha_terms.empty() ? 1.0 : median_of(alpha_terms);
  double omega = log_omega_terms.empty() ? 1.0 : std::exp(std::min(median_of(log_omega_terms), 700.0));
  if (!std::isfinite(alpha) || !(alpha > 0.0)) alpha = 1.0;
  if (!std::isfinite(omega) || !(omega > 0.0)) omega = 1.0;
  alpha = std::clamp(alpha, box.alpha_lo, box.alpha_hi);
  omega = std::clamp(omega, box.omega_lo, box.omega_hi);
  return {alpha, omega};
}

FitResult fit(const SignedLogSeries& series, const ThetaBox& box, const std::vector<double>& w,
              const OptimizerSettings& opts, Criterion criterion) {
  box.validate();
  if (series.n() < 10) {
    throw Error(ErrorKind::Precondition, "fit: need at least 10 transitions, got " +
                                             std::to_string(series.n()));
  }
  if (distinct_values(series) < 3) {
    throw Error(ErrorKind::DegenerateSeries, "fit: series has fewer than 3 distinct values");
  }
  if (!w.empty() && w.size() != series.n()) {
    throw Error(ErrorKind::LengthMismatch, "fit: weights have length " + std::to_string(w.size()) +
                                               ", series has " + std::to_string(series.n()) +
                                               " transitions");
  }
  if (opts.n_starts < 1 || opts.max_evals < 1 || !(opts.xtol > 0.0) || !(opts.ftol > 0.0)) {
    throw Error(ErrorKind::Config, "fit: invalid optimizer settings");
  }

  const LaggedPairs pairs = model::make_lagged_pairs(series);
  const ProfileProblem problem(pairs, box, w, criterion);
  const LogSigmoidAxis alpha_axis(box.alpha_lo, box.alpha_hi);
  const LogSigmoidAxis omega_axis(box.omega_lo, box.omega_hi);
  const auto exact_at = [&](const std::vector<double>& u) {
    return problem.evaluate(alpha_axis.to_value(u[0]), omega_axis.to_value(u[1])).exact;
  };
  // Values handed to the simplex are relative to a reference level, so once the
  // reference sits at the current best the differences keep extended precision.
  long double reference = 0.0L;
  const auto criterion_at = [&](const std::vector<double>& u) {
    return static_cast<double>(exact_at(u) - reference);
  };

  std::vector<std::vector<double>> starts;
  const auto add_start = [&](double alpha, double omega, double limit) {
    starts.push_back({alpha_axis.to_coord(alpha, limit), omega_axis.to_coord(omega, limit)});
  };
  if (opts.initial_point) {
    add_start(std::clamp(opts.initial_point->alpha, box.alpha_lo, box.alpha_hi),
              std::clamp(opts.initial_point->omega, box.omega_lo, box.omega_hi), kBoundaryCoord);
  } else {
    const auto [alpha_p, omega_p] = pilot_values(pairs, box);
    starts.push_back({0.0, 0.0});
    const std::array<std::pair<double, double>, 4> multipliers = {
        {{1.0, 1.0}, {4.0, 0.25}, {0.25, 4.0}, {1.0, 0.01}}};
    for (const auto& [ma, mo] : multipliers) {
      add_start(std::clamp(alpha_p * ma, box.alpha_lo, box.alpha_hi),
                std::clamp(omega_p * mo, box.omega_lo, box.omega_hi), kStartLimit);
    }
    starts.resize(std::min<std::size_t>(starts.size(), static_cast<std::size_t>(opts.n_starts)));
  }

  FitResult best;
  long double best_exact = 0.0L;
  bool have_best = false;
  bool any_converged = false;
  int total_evals = 0;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    reference = 0.0L;
    SimplexResult run = nelder_mead(criterion_at, starts[s], opts.initial_step, opts.xtol,
                                    opts.ftol, opts.max_evals);
    int evals = run.evals;
    // Restart from the reported optimum until a fresh simplex stops improving.
    for (int r = 0; r < kMaxRestarts && evals < opts.max_evals; ++r) {
      reference = exact_at(run.x);
      ++evals;
      SimplexResult again = nelder_mead(criterion_at, run.x, opts.initial_step, opts.xtol,
                                        opts.ftol, opts.max_evals - evals);
      evals += again.evals;
      const bool improved = again.value < -opts.ftol;
      if (again.value <= 0.0) run.x = again.x;
      run.converged = again.converged;
      if (!improved) break;
    }
    total_evals += evals;
    any_converged = any_converged || run.converged;
    const long double run_exact = exact_at(run.x);
    if (!have_best || run_exact < best_exact) {
      best_exact = run_exact;
      const double alpha = alpha_axis.to_value(run.x[0]);
      const double omega = omega_axis.to_value(run.x[1]);
      const auto point = problem.evaluate(alpha, omega);
      best.theta_hat = {point.phi, alpha, omega};
      best.objective_value = point.value;
      best.converged = run.converged;
      best.at_boundary = point.phi_clamped || std::fabs(run.x[0]) >= kBoundaryCoord ||
                         std::fabs(run.x[1]) >= kBoundaryCoord;
      best.best_start = static_cast<int>(s);
      have_best = true;
    }
  }
  best.n_evals = total_evals;
  if (!any_converged) {
    throw Error(ErrorKind::NonConvergence, "fit: no start converged within " +
                                               std::to_string(opts.max_evals) + " evaluations");
  }
  return best;
}

}  // namespace

void ThetaBox::validate() const {
  const bool ok = phi_lo < phi_hi && alpha_lo < alpha_hi && omega_lo < omega_hi && alpha_lo > 0.0 &&
                  omega_lo > 0.0 && std::isfinite(phi_lo) && std::isfinite(phi_hi) &&
                  std::isfinite(alpha_hi) && std::isfinite(omega_hi);
  if (!ok) throw Error(ErrorKind::Precondition, "ThetaBox: require lo < hi, alpha_lo > 0, omega_lo > 0");
}

bool ThetaBox::contains(const DarParams& p) const noexcept {
  return p.phi >= phi_lo && p.phi <= phi_hi && p.alpha >= alpha_lo && p.alpha <= alpha_hi &&
         p.omega >= omega_lo && p.omega <= omega_hi;
}

ThetaBox ThetaBox::rescaled(double c) const {
  ThetaBox out = *this;
  out.omega_lo *= c * c;
  out.omega_hi *= c * c;
  return out;
}

ThetaBox ThetaBox::default_for(const SignedLogSeries& series) {
  std::vector<double> log_sq;
  for (const auto& v : series.obs) {
    if (!v.is_zero()) log_sq.push_back(2.0 * v.logmag());
  }
  const double scale_sq =
      log_sq.empty() ? 1.0 : std::exp(std::clamp(median_of(log_sq), -600.0, 600.0));
  ThetaBox box;
  box.omega_lo = 1e-6 * std::min(1.0, scale_sq);
  box.omega_hi = 50.0 * std::max(scale_sq, 1e-6);
  return box;
}

FitResult glade(const SignedLogSeries& series, const ThetaBox& box, const OptimizerSettings& opts) {
  return fit(series, box, {}, opts, Criterion::Lad);
}

FitResult weighted_glade(const SignedLogSeries& series, const ThetaBox& box, const WeightVector& w,
                         const OptimizerSettings& opts) {
  if (w.size() != series.n()) {
    throw Error(ErrorKind::LengthMismatch, "weighted_glade: weights have length " +
                                               std::to_string(w.size()) + ", series has " +
                                               std::to_string(series.n()) + " transitions");
  }
  return fit(series, box, w.w, opts, Criterion::Lad);
}

FitResult qmle(const SignedLogSeries& series, const ThetaBox& box, const OptimizerSettings& opts) {
  return fit(series, box, {}, opts, Criterion::Gaussian);
}

double aae(const DarParams& estimate, const DarParams& truth) {
  if (!(truth.alpha > 0.0)) throw Error(ErrorKind::Precondition, "aae: truth.alpha must be > 0");
  return 0.5 * (std::fabs(estimate.phi - truth.phi) + std::fabs(estimate.alpha / truth.alpha - 1.0));
}

double aae(const FitResult& fit, const DarParams& truth) { return aae(fit.theta_hat, truth); }

}  // namespace dar::estimation
