#include "dar/numerics/signed_log.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dar/error.hpp"

namespace dar::numerics {

namespace {

int clamp_to_int(std::int64_t e) {
  return static_cast<int>(std::clamp<std::int64_t>(e, -100000, 100000));
}

}  // namespace

SignedLog sl_encode(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorKind::Precondition, "sl_encode: non-finite input");
  }
  if (x == 0.0) return {};
  int e = 0;
  const double m = std::frexp(std::fabs(x), &e);  // m in [0.5, 1)
  return SignedLog(x > 0.0 ? 1 : -1, 2.0 * m, static_cast<std::int64_t>(e) - 1);
}

SignedLog SignedLog::from_log(int sign, double logmag) {
  if (sign == 0 || logmag == -std::numeric_limits<double>::infinity()) return {};
  if (!std::isfinite(logmag) || (sign != 1 && sign != -1)) {
    throw Error(ErrorKind::Precondition, "SignedLog::from_log: invalid sign or log-magnitude");
  }
  const double ln2 = std::numbers::ln2;
  auto e = static_cast<std::int64_t>(std::floor(logmag / ln2));
  double m = std::exp(logmag - static_cast<double>(e) * ln2);
  if (m >= 2.0) {
    m *= 0.5;
    ++e;
  } else if (m < 1.0) {
    m *= 2.0;
    --e;
  }
  return SignedLog(sign, m, e);
}

double SignedLog::logmag() const noexcept {
  if (sign_ == 0) return -std::numeric_limits<double>::infinity();
  return std::log(mantissa_) + static_cast<double>(exponent_) * std::numbers::ln2;
}

double SignedLog::scaled(std::int64_t shift) const noexcept {
  if (sign_ == 0) return 0.0;
  return std::ldexp(sign_ * mantissa_, clamp_to_int(exponent_ - shift));
}

SignedLog SignedLog::operator-() const noexcept { return SignedLog(-sign_, mantissa_, exponent_); }

SignedLog SignedLog::operator*(double factor) const {
  if (sign_ == 0 || factor == 0.0) return {};
  const SignedLog f = sl_encode(factor);
  double m = mantissa_ * f.mantissa_;
  std::int64_t e = exponent_ + f.exponent_;
  if (m >= 2.0) {
    m *= 0.5;
    ++e;
  }
  return SignedLog(sign_ * f.sign_, m, e);
}

double sl_decode(const SignedLog& v) {
  if (v.is_zero()) return 0.0;
  if (v.exponent() > std::numeric_limits<double>::max_exponent - 1) {
    throw Error(ErrorKind::Overflow,
                "sl_decode: log-magnitude " + std::to_string(v.logmag()) + " exceeds double range");
  }
  return v.scaled(0);
}

}  // namespace dar::numerics
