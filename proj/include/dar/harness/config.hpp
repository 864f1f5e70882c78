#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dar/estimation/glade.hpp"
#include "dar/model/innovation.hpp"
#include "dar/model/params.hpp"

namespace dar::harness {

struct StudyConfig {
  model::DarParams params{0.7, 0.4, 0.5};
  model::InnovationKind innovation = model::InnovationKind::NormalPiHalf;
  std::size_t n = 400;
  std::size_t replications = 300;
  std::size_t B = 200;
  double level = 0.05;
  std::uint64_t seed = 20240517;
  unsigned threads = 1;
  /// Unset: 500 when the true Lyapunov exponent is negative, otherwise 0.
  std::optional<std::size_t> burn_in;
  estimation::OptimizerSettings optimizer{};

  /// Throws dar::Error(Config) on replications < 1, level outside (0, 1),
  /// n < 10, B < 50 or invalid parameters.
  void validate() const;
};

/// Grid settings for the power study and the region command.
struct PowerConfig {
  std::vector<double> phis{0.6, 0.922, 1.3};
  double alpha_ratio = 2.0;  ///< alpha_0 = alpha_ratio * phi_0
  double omega = 0.5;
};

struct RegionConfig {
  double phi_min = -3.0;
  double phi_max = 3.0;
  std::size_t points = 121;
};

struct HarnessConfig {
  StudyConfig study{};
  PowerConfig power{};
  RegionConfig region{};
};

/// Reads an INI-style file: [design] phi alpha omega innovation;
/// [study] n replications B level seed threads burn_in;
/// [optimizer] xtol ftol max_evals n_starts;
/// [power] phis alpha_ratio omega; [region] phi_min phi_max points.
/// Missing keys keep their defaults; unknown sections or keys are Config errors.
[[nodiscard]] HarnessConfig parse_config(std::istream& in, HarnessConfig base = {});
[[nodiscard]] HarnessConfig load_config(const std::string& path, HarnessConfig base = {});

[[nodiscard]] std::size_t effective_burn_in(const StudyConfig& cfg);

}  // namespace dar::harness
