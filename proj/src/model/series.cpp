#include "dar/model/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dar/error.hpp"

namespace dar::model {

namespace {

constexpr std::int64_t kPlainExponentLimit = 400;

SignedLog step(const DarParams& p, const SignedLog& prev, double eta) {
  if (prev.is_zero()) return numerics::sl_encode(eta * std::sqrt(p.omega));
  if (prev.exponent() < kPlainExponentLimit) {
    const double y = prev.scaled(0);
    return numerics::sl_encode(p.phi * y + eta * std::sqrt(p.omega + p.alpha * y * y));
  }
  // omega e^{-2l} = omega / (m^2 4^E); underflows harmlessly to 0 for huge E.
  const double m = prev.mantissa();
  const double tail =
      p.omega * std::ldexp(1.0 / (m * m), static_cast<int>(-2 * std::min<std::int64_t>(
                                                                prev.exponent(), 100000)));
  const double factor = p.phi + static_cast<double>(prev.sign()) * eta * std::sqrt(p.alpha + tail);
  return prev * factor;
}

}  // namespace

SignedLogSeries SignedLogSeries::from_reals(std::span<const double> values) {
  SignedLogSeries s;
  s.obs.reserve(values.size());
  for (double v : values) s.obs.push_back(numerics::sl_encode(v));
  return s;
}

SignedLogSeries SignedLogSeries::negated() const {
  SignedLogSeries s;
  s.obs.reserve(obs.size());
  for (const auto& v : obs) s.obs.push_back(-v);
  return s;
}

SignedLogSeries SignedLogSeries::scaled(double c) const {
  SignedLogSeries s;
  s.obs.reserve(obs.size());
  for (const auto& v : obs) s.obs.push_back(v * c);
  return s;
}

std::vector<double> SignedLogSeries::to_reals() const {
  std::vector<double> out;
  out.reserve(obs.size());
  for (const auto& v : obs) out.push_back(numerics::sl_decode(v));
  return out;
}

SimulatedPath simulate_with_innovations(const DarParams& params, const InnovationSpec& spec,
                                        std::size_t n, std::size_t burn_in,
                                        numerics::RngStream& stream) {
  validate(params);
  if (n < 2) throw Error(ErrorKind::Precondition, "simulate: n must be at least 2");
  SignedLog y;
  for (std::size_t t = 0; t < burn_in; ++t) y = step(params, y, spec.sample(stream));

  SimulatedPath path;
  path.innovations.reserve(n);
  path.series.obs.reserve(n + 1);
  path.series.obs.push_back(y);
  for (std::size_t t = 0; t < n; ++t) {
    const double eta = spec.sample(stream);
    path.innovations.push_back(eta);
    y = step(params, y, eta);
    path.series.obs.push_back(y);
  }
  return path;
}

SignedLogSeries simulate(const DarParams& params, const InnovationSpec& spec, std::size_t n,
                         std::size_t burn_in, numerics::RngStream& stream) {
  return simulate_with_innovations(params, spec, n, burn_in, stream).series;
}

SignedLogSeries simulate_from_innovations(const DarParams& params,
                                          std::span<const double> innovations, SignedLog start) {
  validate(params);
  SignedLogSeries s;
  s.obs.reserve(innovations.size() + 1);
  s.obs.push_back(start);
  for (double eta : innovations) s.obs.push_back(step(params, s.obs.back(), eta));
  return s;
}

LaggedPairs make_lagged_pairs(const SignedLogSeries& series) {
  LaggedPairs pairs;
  const std::size_t n = series.n();
  pairs.x.resize(n);
  pairs.z.resize(n);
  pairs.e.resize(n);
  pairs.log_scale.resize(n);
  for (std::size_t t = 1; t <= n; ++t) {
    const SignedLog& prev = series.obs[t - 1];
    const std::int64_t k = prev.is_zero() ? 0 : std::max<std::int64_t>(prev.exponent() + 1, 0);
    const std::size_t i = t - 1;
    pairs.x[i] = prev.scaled(k);
    pairs.z[i] = series.obs[t].scaled(k);
    pairs.e[i] = std::ldexp(1.0, static_cast<int>(-2 * std::min<std::int64_t>(k, 100000)));
    pairs.log_scale[i] = static_cast<double>(k) * std::numbers::ln2;
  }
  return pairs;
}

std::vector<double> residuals(const LaggedPairs& pairs, const DarParams& theta) {
  std::vector<double> eta(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double x = pairs.x[i];
    eta[i] = (pairs.z[i] - theta.phi * x) / std::sqrt(theta.omega * pairs.e[i] + theta.alpha * x * x);
  }
  return eta;
}

std::vector<double> residuals(const SignedLogSeries& series, const DarParams& theta) {
  if (series.obs.size() < 2) {
    throw Error(ErrorKind::Precondition, "residuals: series needs at least two observations");
  }
  return residuals(make_lagged_pairs(series), theta);
}

}  // namespace dar::model
