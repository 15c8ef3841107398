#pragma once

#include <cstdint>

namespace normsim {

/// Counter-based generator. Every draw is a pure function of
/// (seed, replication, stream, item), so adding agents or replications never
/// perturbs existing draws and replications can run in any order.
///
/// Bits come from a SplitMix64-style finalizer chained over the counter words;
/// normals use the Box-Muller cosine branch on two independent uniforms.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t replication, std::uint32_t stream, std::uint64_t item,
                     std::uint32_t lane = 0) const;

  /// Uniform on the open interval (0, 1).
  double uniform(std::uint64_t replication, std::uint32_t stream, std::uint64_t item,
                 std::uint32_t lane = 0) const;

  double standard_normal(std::uint64_t replication, std::uint32_t stream,
                         std::uint64_t item) const;

  std::uint64_t seed() const { return seed_; }

private:
  std::uint64_t seed_;
};

/// Stream ids used by the simulation engine.
namespace streams {
inline constexpr std::uint32_t kStandard = 0;
inline constexpr std::uint32_t kPreviousSignals = 1;
inline constexpr std::uint32_t kCurrentSignals = 2;
inline constexpr std::uint32_t kOracle = 3;
}  // namespace streams

/// Sequential view over one (replication, stream) of a CounterRng.
class NormalSequence {
public:
  NormalSequence(std::uint64_t seed, std::uint64_t replication, std::uint32_t stream)
      : rng_(seed), replication_(replication), stream_(stream) {}

  double next() { return rng_.standard_normal(replication_, stream_, counter_++); }

private:
  CounterRng rng_;
  std::uint64_t replication_;
  std::uint32_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace normsim
