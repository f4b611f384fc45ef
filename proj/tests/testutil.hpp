#pragma once

#include <cmath>
#include <vector>

#include "ptsim/cmatrix.hpp"
#include "ptsim/linalg.hpp"
#include "ptsim/quantum.hpp"
#include "ptsim/rng.hpp"

namespace testutil {

using ptsim::CMatrix;
using ptsim::Complex;
using ptsim::StateVector;

inline double matrix_diff(const CMatrix& a, const CMatrix& b) {
  return (a - b).frobenius_norm();
}

inline CMatrix random_matrix(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  ptsim::CounterRng rng(seed);
  CMatrix m(n);
  std::uint64_t counter = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto g = rng.gaussian_pair(counter++);
      m(i, j) = scale * Complex(g[0], g[1]);
    }
  return m;
}

inline CMatrix random_hermitian(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  const CMatrix m = random_matrix(n, seed, scale);
  CMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return h;
}

// Random Hermitian with a prescribed eigenvalue spread: conjugate a
// diagonal with extremes +-omega/2 by a random unitary.
inline CMatrix random_hermitian_with_spread(std::size_t n, std::uint64_t seed, double omega) {
  const CMatrix u = ptsim::expm(Complex(0, 1) * random_hermitian(n, seed ^ 0x5bd1e995, 1.0));
  ptsim::CounterRng rng(seed);
  std::vector<double> diag(n);
  diag[0] = -0.5 * omega;
  diag[n - 1] = 0.5 * omega;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    diag[i] = -0.5 * omega + omega * rng.uniform(100 + i);
  }
  CMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += u(i, k) * diag[k] * std::conj(u(j, k));
      h(i, j) = acc;
    }
  return h;
}

inline CMatrix random_unitary(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  return ptsim::expm(Complex(0, -1) * random_hermitian(n, seed, scale));
}

// ||a - e^{i phi} b|| minimized over the global phase.
inline double state_diff_up_to_phase(const std::vector<Complex>& a,
                                     const std::vector<Complex>& b) {
  const Complex overlap = ptsim::vector_dot(b, a);
  const double mag = std::abs(overlap);
  const Complex phase = mag > 0 ? overlap / mag : Complex(1.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - phase * b[i]);
  return std::sqrt(acc);
}

inline StateVector random_state(std::size_t dim, std::uint64_t seed, std::uint64_t index = 0) {
  return ptsim::haar_state(dim, seed, index);
}

}  // namespace testutil
