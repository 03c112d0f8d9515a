#pragma once

#include <cstdint>
#include <random>

namespace aqsforge {

/// Deterministic randomness for surveys, searches and the swap-test model.
///
/// The core engine is std::mt19937_64, whose output sequence the standard
/// pins down exactly. The std distribution adaptors are implementation
/// defined, so the uniform/gaussian/index mappings are spelled out here and
/// produce identical streams on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform();

    /// Standard normal via Box-Muller; draws are consumed in pairs.
    double gaussian();

    /// Uniform index in [0, n), rejection-sampled so every index is
    /// equiprobable. n must be positive.
    std::size_t index(std::size_t n);

  private:
    std::mt19937_64 engine_;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

/// Stream-splitting rule for parallel work: the sub-seed for stream i of a
/// run seeded with s is splitmix64(s + (i + 1) * 0x9E3779B97F4A7C15).
/// Results merged in stream order are therefore independent of scheduling.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace aqsforge
