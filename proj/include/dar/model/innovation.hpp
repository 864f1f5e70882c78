#pragma once

#include <string>
#include <string_view>

#include "dar/numerics/rng.hpp"

namespace dar::model {

enum class InnovationKind { NormalPiHalf, Laplace, StdT3 };

/// One of the three symmetric innovation laws, each scaled so that E|eta| = 1:
///   NormalPiHalf  N(0, pi/2)
///   Laplace       f(x) = exp(-|x|)/2
///   StdT3         f(x) = 4 pi^2 / (pi^2 + 4 x^2)^2, a Student t_3 scaled by pi/(2 sqrt 3)
///
/// Construction checks the E|eta| = 1 normalization by quadrature.
class InnovationSpec {
 public:
  explicit InnovationSpec(InnovationKind kind);

  [[nodiscard]] InnovationKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::string_view name() const noexcept;

  [[nodiscard]] double density(double x) const noexcept;
  [[nodiscard]] double sample(numerics::RngStream& stream) const;

  /// f(0)
  [[nodiscard]] double f0() const noexcept { return density(0.0); }
  /// E eta^2
  [[nodiscard]] double kappa() const noexcept;
  /// E|eta| as measured by quadrature at construction
  [[nodiscard]] double abs_first_moment() const noexcept { return abs_first_moment_; }

 private:
  InnovationKind kind_;
  double abs_first_moment_ = 0.0;
};

[[nodiscard]] inline double sample_innovation(const InnovationSpec& spec,
                                              numerics::RngStream& stream) {
  return spec.sample(stream);
}

[[nodiscard]] inline double density_at(const InnovationSpec& spec, double x) {
  return spec.density(x);
}

/// Accepts "normal", "laplace", "st3" (case-insensitive) plus the enum spellings.
[[nodiscard]] InnovationKind parse_innovation(std::string_view text);
[[nodiscard]] std::string to_string(InnovationKind kind);

}  // namespace dar::model
