#pragma once

#include <cstdint>
#include <random>

namespace dar::numerics {

/// Mixes (root_seed, index) into a 64-bit key. For a fixed root the map
/// index -> key is a bijection, so sibling streams never share a key.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t root_seed, std::uint64_t index) noexcept;

/// A single-owner random stream. Copying duplicates the state, so a copy
/// replays the same draws.
class RngStream {
 public:
  using engine_type = std::mt19937_64;

  RngStream(std::uint64_t root_seed, std::uint64_t stream_index);

  [[nodiscard]] std::uint64_t root_seed() const noexcept { return root_seed_; }
  [[nodiscard]] std::uint64_t stream_index() const noexcept { return stream_index_; }

  [[nodiscard]] engine_type& engine() noexcept { return engine_; }

  /// Uniform draw on [0, 1).
  [[nodiscard]] double uniform();

 private:
  std::uint64_t root_seed_;
  std::uint64_t stream_index_;
  engine_type engine_;
};

[[nodiscard]] inline RngStream derive_stream(std::uint64_t root_seed, std::uint64_t index) {
  return RngStream(root_seed, index);
}

}  // namespace dar::numerics
