#pragma once

// Independent reference implementations used to freeze expected values.
// Everything here deliberately avoids the library's production code paths:
// plain CMatrix arithmetic, scalar loops and closed forms only.

#include <cmath>
#include <complex>
#include <vector>

#include "ptsim/cmatrix.hpp"

namespace oracles {

using ptsim::CMatrix;
using ptsim::Complex;

// Scaled 60-term Taylor series for the matrix exponential.
inline CMatrix taylor_expm(const CMatrix& a, int terms = 60) {
  int squarings = 0;
  CMatrix b = a;
  while (b.one_norm() > 0.5) {
    b *= Complex(0.5);
    ++squarings;
  }
  CMatrix sum = CMatrix::identity(a.dim());
  CMatrix term = CMatrix::identity(a.dim());
  for (int k = 1; k < terms; ++k) {
    term = term * b;
    term *= Complex(1.0 / k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

// Largest singular value by power iteration on a^H a.
inline double power_iteration_norm(const CMatrix& a, int iterations = 2000) {
  const CMatrix m = a.adjoint() * a;
  const std::size_t n = m.dim();
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = Complex(1.0, 0.37 * static_cast<double>(i + 1));
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    std::vector<Complex> w = m.apply(v);
    const double norm = ptsim::vector_norm(w);
    if (norm == 0.0) return 0.0;
    for (Complex& x : w) x /= norm;
    const double next = ptsim::vector_dot(w, m.apply(w)).real();
    if (it > 4 && std::abs(next - lambda) <= 1e-15 * std::max(1.0, std::abs(next))) {
      lambda = next;
      break;
    }
    lambda = next;
    v = std::move(w);
  }
  return std::sqrt(std::max(0.0, lambda));
}

// Scalar form of the Hermitian minimal-time bound, written against raw
// amplitude arrays.
inline double scalar_min_time(const std::vector<Complex>& psi_i,
                              const std::vector<Complex>& psi_f, double omega,
                              double hbar) {
  Complex overlap(0.0, 0.0);
  for (std::size_t k = 0; k < psi_i.size(); ++k) overlap += std::conj(psi_i[k]) * psi_f[k];
  double mag = std::abs(overlap);
  if (mag > 1.0) mag = 1.0;
  return 2.0 * hbar / omega * std::acos(mag);
}

// Closed forms for the two-level PT family
//   H = [[r e^{-i theta}, s], [s, r e^{i theta}]]
// evolving |0>:
//   psi(t) = e^{-i r cos(theta) t / hbar} / cos(a) *
//            ( cos(w t / (2 hbar) + a), -i sin(w t / (2 hbar)) )
// with sin(a) = (r/s) sin(theta) and w = 2 sqrt(s^2 - r^2 sin^2 theta),
// valid in the unbroken phase. The first component vanishes at
// w t / (2 hbar) = pi/2 - a, i.e. the passage time below.
struct PtClosedForm {
  double r, s, theta, hbar;

  double alpha_angle() const { return std::asin(r * std::sin(theta) / s); }
  double omega() const {
    const double rs = r * std::sin(theta);
    return 2.0 * std::sqrt(s * s - rs * rs);
  }
  double flip_time_0_to_1() const {
    return (M_PI - 2.0 * alpha_angle()) * hbar / omega();
  }
  std::vector<Complex> state_from_zero(double t) const {
    const double a = alpha_angle();
    const double half_phase = 0.5 * omega() * t / hbar;
    const Complex prefactor =
        std::exp(Complex(0.0, -r * std::cos(theta) * t / hbar)) / std::cos(a);
    return {prefactor * std::cos(half_phase + a),
            prefactor * Complex(0.0, -1.0) * std::sin(half_phase)};
  }
  double gamma_from_zero(double t) const {
    const auto psi = state_from_zero(t);
    return std::sqrt(std::norm(psi[0]) + std::norm(psi[1]));
  }
};

}  // namespace oracles
