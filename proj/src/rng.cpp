#include "normsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace normsim {
namespace {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t replication, std::uint32_t stream,
                               std::uint64_t item, std::uint32_t lane) const {
  std::uint64_t h = mix64(seed_);
  h = mix64(h ^ replication);
  h = mix64(h ^ ((static_cast<std::uint64_t>(stream) << 32) | lane));
  return mix64(h ^ item);
}

double CounterRng::uniform(std::uint64_t replication, std::uint32_t stream, std::uint64_t item,
                           std::uint32_t lane) const {
  // 53 random mantissa bits, offset by half an ulp so 0 and 1 are excluded.
  const std::uint64_t b = bits(replication, stream, item, lane) >> 11;
  return (static_cast<double>(b) + 0.5) * 0x1.0p-53;
}

double CounterRng::standard_normal(std::uint64_t replication, std::uint32_t stream,
                                   std::uint64_t item) const {
  const double u1 = uniform(replication, stream, item, 0);
  const double u2 = uniform(replication, stream, item, 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace normsim
