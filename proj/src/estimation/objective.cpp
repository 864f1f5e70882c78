#include "dar/estimation/objective.hpp"

#include <cmath>
#include <random>
#include <string>

#include "dar/error.hpp"

namespace dar::estimation {

namespace {

template <typename Term>
double mean_of_terms(const LaggedPairs& pairs, const DarParams& theta, const std::vector<double>& w,
                     Term term) {
  model::validate(theta);
  const std::size_t n = pairs.size();
  if (n == 0) throw Error(ErrorKind::Precondition, "objective: empty series");
  if (!w.empty() && w.size() != n) {
    throw Error(ErrorKind::LengthMismatch, "weights have length " + std::to_string(w.size()) +
                                               ", series has " + std::to_string(n) +
                                               " transitions");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = pairs.x[i];
    const double var = theta.omega * pairs.e[i] + theta.alpha * x * x;
    const double t = pairs.log_scale[i] + 0.5 * std::log(var) + term(pairs.z[i] - theta.phi * x, var);
    sum += w.empty() ? t : w[i] * t;
  }
  return sum / static_cast<double>(n);
}

double lad_term(double dev, double var) { return std::fabs(dev) / std::sqrt(var); }
double gaussian_term(double dev, double var) { return dev * dev / (2.0 * var); }

}  // namespace

WeightVector draw_exponential_weights(std::size_t n, numerics::RngStream& stream) {
  std::exponential_distribution<double> exponential(1.0);
  WeightVector out;
  out.w.resize(n);
  for (auto& v : out.w) v = exponential(stream.engine());
  return out;
}

double lad_objective(const LaggedPairs& pairs, const DarParams& theta,
                     const std::vector<double>& w) {
  return mean_of_terms(pairs, theta, w, lad_term);
}

double gaussian_objective(const LaggedPairs& pairs, const DarParams& theta,
                          const std::vector<double>& w) {
  return mean_of_terms(pairs, theta, w, gaussian_term);
}

double objective(const SignedLogSeries& series, const DarParams& theta) {
  return lad_objective(model::make_lagged_pairs(series), theta);
}

double weighted_objective(const SignedLogSeries& series, const DarParams& theta,
                          const WeightVector& w) {
  if (w.size() != series.n()) {
    throw Error(ErrorKind::LengthMismatch, "weighted_objective: weights have length " +
                                               std::to_string(w.size()) + ", series has " +
                                               std::to_string(series.n()) + " transitions");
  }
  return lad_objective(model::make_lagged_pairs(series), theta, w.w);
}

double gaussian_objective(const SignedLogSeries& series, const DarParams& theta) {
  return gaussian_objective(model::make_lagged_pairs(series), theta);
}

}  // namespace dar::estimation
