#pragma once

#include <cstdint>
#include <limits>

namespace dar::numerics {

/// A real number held as sign times a binary mantissa/exponent pair with a
/// 64-bit exponent, so magnitudes far outside the double range stay exact.
///
/// The natural-log magnitude is available through logmag(). Zero is stored as
/// sign 0 with logmag() = -inf.
class SignedLog {
 public:
  constexpr SignedLog() = default;

  /// Builds a value from its sign and natural-log magnitude.
  [[nodiscard]] static SignedLog from_log(int sign, double logmag);

  [[nodiscard]] constexpr int sign() const noexcept { return sign_; }
  /// |x| = mantissa() * 2^exponent(), mantissa in [1, 2) (0 for zero).
  [[nodiscard]] constexpr double mantissa() const noexcept { return mantissa_; }
  [[nodiscard]] constexpr std::int64_t exponent() const noexcept { return exponent_; }
  [[nodiscard]] constexpr bool is_zero() const noexcept { return sign_ == 0; }

  [[nodiscard]] double logmag() const noexcept;

  /// sign * mantissa * 2^(exponent - shift), computed without the Overflow check.
  [[nodiscard]] double scaled(std::int64_t shift) const noexcept;

  [[nodiscard]] SignedLog operator-() const noexcept;
  /// Multiplies by a finite real factor.
  [[nodiscard]] SignedLog operator*(double factor) const;

  friend bool operator==(const SignedLog&, const SignedLog&) = default;

 private:
  constexpr SignedLog(int sign, double mantissa, std::int64_t exponent)
      : sign_(sign), mantissa_(mantissa), exponent_(exponent) {}

  friend SignedLog sl_encode(double x);

  int sign_ = 0;
  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

/// Encodes a finite real. Exact: sl_decode(sl_encode(x)) == x.
[[nodiscard]] SignedLog sl_encode(double x);

/// Decodes to a double; throws dar::Error(Overflow) when |x| exceeds the double range.
[[nodiscard]] double sl_decode(const SignedLog& v);

}  // namespace dar::numerics
