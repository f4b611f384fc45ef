#include "ptsim/rng.hpp"

#include <cmath>

#include "ptsim/error.hpp"

namespace ptsim {

std::uint64_t splitmix_at(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform(std::uint64_t counter) const {
  return static_cast<double>(splitmix_at(seed_, counter) >> 11) * 0x1.0p-53;
}

std::array<double, 2> CounterRng::gaussian_pair(std::uint64_t counter) const {
  const double u1 = uniform(2 * counter);
  const double u2 = uniform(2 * counter + 1);
  const double radius = std::sqrt(-2.0 * std::log1p(-u1));
  const double angle = 2.0 * M_PI * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

std::uint64_t CounterRng::substream(std::uint64_t index) const {
  return splitmix_at(seed_, 0xD1B54A32D192ED03ULL ^ index);
}

std::vector<Complex> haar_amplitudes(std::size_t dim, std::uint64_t seed,
                                     std::uint64_t sample_index) {
  if (dim == 0) raise(ErrorCode::InvalidArgument, "state dimension must be positive");
  const CounterRng stream(CounterRng(seed).substream(sample_index));
  std::vector<Complex> amps(dim);
  double norm_sq = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const auto g = stream.gaussian_pair(k);
    amps[k] = Complex(g[0], g[1]);
    norm_sq += std::norm(amps[k]);
  }
  if (norm_sq <= 0.0) {
    amps[0] = 1.0;  // unreachable in practice
    norm_sq = 1.0;
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (Complex& a : amps) a *= inv;
  return amps;
}

}  // namespace ptsim
