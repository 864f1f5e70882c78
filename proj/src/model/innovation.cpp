#include "dar/model/innovation.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

#include "dar/error.hpp"
#include "dar/numerics/quadrature.hpp"

namespace dar::model {

namespace {

using std::numbers::pi;

// st3 = t_3 * pi / (2 sqrt 3); gives E|eta| = 1 since E|t_3| = 2 sqrt(3) / pi.
const double kSt3Scale = pi / (2.0 * std::sqrt(3.0));
const double kNormalSd = std::sqrt(pi / 2.0);

}  // namespace

InnovationSpec::InnovationSpec(InnovationKind kind) : kind_(kind) {
  const auto abs_moment = [this](double x) { return std::fabs(x) * density(x); };
  abs_first_moment_ =
      numerics::integrate_real_line(abs_moment, std::array<double, 1>{0.0}, 1e-10).value;
  if (std::fabs(abs_first_moment_ - 1.0) > 1e-8) {
    throw Error(ErrorKind::Precondition, "InnovationSpec: E|eta| != 1");
  }
}

std::string_view InnovationSpec::name() const noexcept {
  switch (kind_) {
    case InnovationKind::NormalPiHalf: return "normal";
    case InnovationKind::Laplace: return "laplace";
    case InnovationKind::StdT3: return "st3";
  }
  return "unknown";
}

double InnovationSpec::density(double x) const noexcept {
  switch (kind_) {
    case InnovationKind::NormalPiHalf: return std::exp(-x * x / pi) / pi;
    case InnovationKind::Laplace: return 0.5 * std::exp(-std::fabs(x));
    case InnovationKind::StdT3: {
      const double d = pi * pi + 4.0 * x * x;
      return 4.0 * pi * pi / (d * d);
    }
  }
  return 0.0;
}

double InnovationSpec::kappa() const noexcept {
  switch (kind_) {
    case InnovationKind::NormalPiHalf: return pi / 2.0;
    case InnovationKind::Laplace: return 2.0;
    case InnovationKind::StdT3: return pi * pi / 4.0;
  }
  return 0.0;
}

double InnovationSpec::sample(numerics::RngStream& stream) const {
  auto& engine = stream.engine();
  switch (kind_) {
    case InnovationKind::NormalPiHalf: {
      std::normal_distribution<double> normal(0.0, kNormalSd);
      return normal(engine);
    }
    case InnovationKind::Laplace: {
      std::exponential_distribution<double> exponential(1.0);
      const double magnitude = exponential(engine);
      return (engine() & 1U) != 0U ? magnitude : -magnitude;
    }
    case InnovationKind::StdT3: {
      std::student_t_distribution<double> student(3.0);
      return kSt3Scale * student(engine);
    }
  }
  return 0.0;
}

InnovationKind parse_innovation(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "normal" || lower == "normalpihalf" || lower == "n") {
    return InnovationKind::NormalPiHalf;
  }
  if (lower == "laplace" || lower == "l") return InnovationKind::Laplace;
  if (lower == "st3" || lower == "stdt3" || lower == "t" || lower == "t3") {
    return InnovationKind::StdT3;
  }
  throw Error(ErrorKind::Config, "unknown innovation law '" + std::string(text) +
                                     "' (expected normal, laplace or st3)");
}

std::string to_string(InnovationKind kind) {
  switch (kind) {
    case InnovationKind::NormalPiHalf: return "normal";
    case InnovationKind::Laplace: return "laplace";
    case InnovationKind::StdT3: return "st3";
  }
  return "unknown";
}

}  // namespace dar::model
