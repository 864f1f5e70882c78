#pragma once

#include <cstdint>
#include <cstddef>

#include "dar/model/series.hpp"

namespace dar::test {

inline model::SimulatedPath path(const model::DarParams& p, model::InnovationKind kind, std::size_t n,
                                 std::size_t burn_in, std::uint64_t seed, std::uint64_t index = 0) {
  const model::InnovationSpec spec(kind);
  numerics::RngStream stream(seed, index);
  return model::simulate_with_innovations(p, spec, n, burn_in, stream);
}

inline model::SignedLogSeries series(const model::DarParams& p, model::InnovationKind kind,
                                     std::size_t n, std::size_t burn_in, std::uint64_t seed,
                                     std::uint64_t index = 0) {
  return path(p, kind, n, burn_in, seed, index).series;
}

inline constexpr double kEulerGamma = 0.57721566490153286061;

}  // namespace dar::test
