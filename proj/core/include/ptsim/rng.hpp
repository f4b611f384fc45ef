#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ptsim/cmatrix.hpp"

namespace ptsim {

/// i-th output of splitmix64 for the given seed. Pure function of
/// (seed, counter), which is what makes every sampler in this library
/// reproducible and safely parallelizable.
std::uint64_t splitmix_at(std::uint64_t seed, std::uint64_t counter);

/// Counter-based generator: draw k is a pure function of (seed, k).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  /// Uniform double in [0, 1).
  double uniform(std::uint64_t counter) const;

  /// Two independent standard normals via Box-Muller; consumes the
  /// uniform counters 2*counter and 2*counter+1.
  std::array<double, 2> gaussian_pair(std::uint64_t counter) const;

  /// Seed for a derived stream, e.g. one per Monte Carlo sample.
  std::uint64_t substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
};

/// Haar-random pure state amplitudes: normalized complex Gaussian vector,
/// deterministic in (seed, sample_index).
std::vector<Complex> haar_amplitudes(std::size_t dim, std::uint64_t seed,
                                     std::uint64_t sample_index);

}  // namespace ptsim
