#pragma once

#include <cstdint>

#include "mimwave/models.hpp"

// Seeded, platform-independent random smooth fields for the check battery.
//
// The generator is SplitMix64: state advances by 0x9E3779B97F4A7C15 and the
// output is the finalizer (x ^= x>>30, x *= 0xBF58476D1CE4E5B9, x ^= x>>27,
// x *= 0x94D049BB133111EB, x ^= x>>31). Doubles are drawn from the top 53
// bits. Identical seeds give identical fields on every platform.
//
// Fields are low-wavenumber sine/cosine combinations, so random states stay
// smooth; density-like fields keep a positive offset with the fluctuation
// bounded strictly below it.

namespace mimwave {

struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t x = (state += 0x9E3779B97F4A7C15ULL);
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform in [-1, 1).
  double next_signed() { return 2.0 * next_double() - 1.0; }
};

// Stable sub-seed derivation, used to decouple check batteries.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

// offset + fluctuation, |fluctuation| <= amplitude pointwise.
CellField random_smooth_cell_field(const GridPtr& grid, SplitMix64& rng, double offset,
                                   double amplitude);
FaceField random_smooth_face_field(const GridPtr& grid, SplitMix64& rng, double offset,
                                   double amplitude);

// A random admissible state of the given kind. Density-like fields are
// positive with order-one mean; velocities carry a nonzero mean so that the
// momentum functionals are away from zero.
ModelState random_state(ModelKind kind, const GridPtr& grid, const ModelConfig& config,
                        std::uint64_t seed);

}  // namespace mimwave
