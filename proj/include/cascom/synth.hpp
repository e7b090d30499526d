#pragma once

#include <cstdint>

#include "cascom/knowledge_base.hpp"

namespace cascom {

/// SplitMix64 (Vigna). Bit-identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Draw in [0, bound) as next() % bound.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

/// Deterministic synthetic knowledge base for scale experiments.
///
/// With P0 = max(1, n_sensors / 10) base properties "p0-<k>" (unit "u"):
///  - sensor "sensor-<i>" produces p0-<i mod P0> at "loc-<i mod 5>", wrapper
///    "synthetic", cost (1 + i mod 7, 8, 10, 0);
///  - component "comp-<j>" takes two inputs drawn (SplitMix64(seed), in order,
///    reduced modulo the pool size) from all properties producible so far
///    (base first, then pc-0, pc-1, ...), outputs "pc-<j>", class
///    "SynthProc<j>", cost (0.5, 4, 5, 0);
///  - task "task-<j>" produces pc-<j>, facet group=g<j mod 10>, no location.
/// Throws std::invalid_argument when n_sensors == 0.
KnowledgeBase synth_kb(std::uint64_t n_sensors, std::uint64_t n_components, std::uint64_t seed);

}  // namespace cascom
