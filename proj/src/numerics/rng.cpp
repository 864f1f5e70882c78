#include "dar/numerics/rng.hpp"

namespace dar::numerics {

namespace {

// splitmix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31U);
}

std::mt19937_64 seeded_engine(std::uint64_t key) {
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32U)};
  return std::mt19937_64(seq);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root_seed, std::uint64_t index) noexcept {
  return mix64(mix64(root_seed) + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

RngStream::RngStream(std::uint64_t root_seed, std::uint64_t stream_index)
    : root_seed_(root_seed),
      stream_index_(stream_index),
      engine_(seeded_engine(derive_seed(root_seed, stream_index))) {}

double RngStream::uniform() { return std::generate_canonical<double, 64>(engine_); }

}  // namespace dar::numerics
