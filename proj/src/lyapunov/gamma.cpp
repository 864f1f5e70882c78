#include "dar/lyapunov/gamma.hpp"

#include <cmath>
#include <string>

#include "dar/error.hpp"

namespace dar::lyapunov {

TruncationWindow TruncationWindow::for_sample_size(std::size_t n) {
  if (n < 1) throw Error(ErrorKind::Precondition, "TruncationWindow: n must be positive");
  const double nn = static_cast<double>(n);
  return {n, 1.0 / (nn * nn), nn * nn};
}

bool TruncationWindow::contains(double v) const noexcept {
  const double a = std::fabs(v);
  return a >= lo && a <= hi;
}

double gamma_natural(double phi_hat, double alpha_hat, std::span<const double> residuals) {
  if (!(alpha_hat > 0.0)) throw Error(ErrorKind::Precondition, "gamma_natural: alpha_hat <= 0");
  if (residuals.empty()) throw Error(ErrorKind::Precondition, "gamma_natural: no residuals");
  const double root = std::sqrt(alpha_hat);
  double sum = 0.0;
  for (double eta : residuals) {
    const double plus = std::fabs(phi_hat + eta * root);
    const double minus = std::fabs(phi_hat - eta * root);
    if (plus == 0.0 || minus == 0.0) {
      throw Error(ErrorKind::SingularTerm, "gamma_natural: log of zero modulus");
    }
    // same accumulation order as gamma_truncated so the two agree exactly
    sum += std::log(plus);
    sum += std::log(minus);
  }
  return sum / (2.0 * static_cast<double>(residuals.size()));
}

GammaEstimate gamma_truncated(double phi_hat, double alpha_hat, std::span<const double> residuals,
                              const TruncationWindow& window) {
  if (!(alpha_hat > 0.0)) throw Error(ErrorKind::Precondition, "gamma_truncated: alpha_hat <= 0");
  if (residuals.empty()) throw Error(ErrorKind::Precondition, "gamma_truncated: no residuals");
  const double root = std::sqrt(alpha_hat);
  GammaEstimate out;
  double sum = 0.0;
  for (double eta : residuals) {
    const double plus = phi_hat + eta * root;
    const double minus = phi_hat - eta * root;
    if (window.contains(plus)) {
      sum += std::log(std::fabs(plus));
      ++out.n_a1;
    }
    if (window.contains(minus)) {
      sum += std::log(std::fabs(minus));
      ++out.n_a2;
    }
  }
  const std::size_t n = residuals.size();
  out.gamma_hat = sum / (2.0 * static_cast<double>(n));
  out.truncated_count = 2 * n - out.n_a1 - out.n_a2;
  return out;
}

double gamma_resampled(const model::LaggedPairs& pairs, const model::DarParams& theta_star,
                       std::span<const double> w, const TruncationWindow& window) {
  if (w.size() != pairs.size()) {
    throw Error(ErrorKind::LengthMismatch, "gamma_resampled: weights have length " +
                                               std::to_string(w.size()) + ", series has " +
                                               std::to_string(pairs.size()) + " transitions");
  }
  const auto eta = model::residuals(pairs, theta_star);
  const double root = std::sqrt(theta_star.alpha);
  // k = 1: eta sqrt(alpha) + phi; k = 2: eta sqrt(alpha) - phi
  double sum[2] = {0.0, 0.0};
  double weight[2] = {0.0, 0.0};
  for (std::size_t t = 0; t < eta.size(); ++t) {
    const double v[2] = {eta[t] * root + theta_star.phi, eta[t] * root - theta_star.phi};
    for (int k = 0; k < 2; ++k) {
      if (window.contains(v[k])) {
        sum[k] += w[t] * std::log(std::fabs(v[k]));
        weight[k] += w[t];
      }
    }
  }
  if (!(weight[0] > 0.0) || !(weight[1] > 0.0)) {
    throw Error(ErrorKind::EmptySet, "gamma_resampled: an index set carries zero total weight");
  }
  return 0.5 * (sum[0] / weight[0] + sum[1] / weight[1]);
}

double gamma_resampled(const model::SignedLogSeries& series, const estimation::FitResult& fit_star,
                       const estimation::WeightVector& w, const TruncationWindow& window) {
  return gamma_resampled(model::make_lagged_pairs(series), fit_star.theta_hat, w.w, window);
}

double true_gamma(const model::DarParams& params, const model::InnovationSpec& spec, double tol) {
  if (!(params.alpha > 0.0)) throw Error(ErrorKind::Precondition, "true_gamma: alpha <= 0");
  return numerics::integrate_log_kernel([&spec](double x) { return spec.density(x); }, params.phi,
                                        params.alpha, tol);
}

double boundary_alpha(const model::InnovationSpec& spec, double phi, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::Precondition, "boundary_alpha: tol must be positive");
  const auto gamma_at = [&](double alpha) { return true_gamma({phi, alpha, 1.0}, spec); };

  double lo = 1e-6;
  double hi = 1e6;
  double g_lo = gamma_at(lo);
  double g_hi = gamma_at(hi);
  // Expand geometrically while no sign change is bracketed.
  for (int i = 0; i < 20 && g_lo >= 0.0 && lo > 1e-300; ++i) {
    lo *= 1e-6;
    g_lo = gamma_at(lo);
  }
  for (int i = 0; i < 20 && g_hi <= 0.0 && hi < 1e300; ++i) {
    hi *= 1e6;
    g_hi = gamma_at(hi);
  }
  if (!(g_lo < 0.0) || !(g_hi > 0.0)) {
    throw Error(ErrorKind::NoRoot, "boundary_alpha: no stationarity boundary for phi = " +
                                       std::to_string(phi));
  }
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    const double mid = std::sqrt(lo * hi);
    const double m = (mid > lo && mid < hi) ? mid : 0.5 * (lo + hi);
    if (gamma_at(m) < 0.0) {
      lo = m;
    } else {
      hi = m;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace dar::lyapunov
