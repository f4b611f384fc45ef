#pragma once

#include <optional>

#include "ptsim/quantum.hpp"

namespace ptsim {

/// Hermitian minimal-time bound tau = (2 hbar / omega) arccos|<psi_i|psi_f>|
/// for a generator with eigenvalue spread omega.
struct TimeBound {
  double tau = 0.0;
  double omega = 0.0;
  double overlap = 0.0;  // |<psi_i|psi_f>| clamped into [0, 1]
};

TimeBound hermitian_min_time(const StateVector& psi_i, const StateVector& psi_f,
                             double omega, double hbar = 1.0);

/// Hermitian generator with eigenvalue spread omega that transports psi_i
/// to psi_f (up to global phase) in exactly the minimal time: a rotation
/// in the 2-plane spanned by the states. Identical states (overlap 1
/// within 1e-12) return the zero matrix by convention.
CMatrix optimal_hermitian(const StateVector& psi_i, const StateVector& psi_f,
                          double omega, double hbar = 1.0);

/// First time in (0, t_max] at which the normalized evolution of psi_i
/// under h passes through psi_f: dense scan with step t_max/1e4 at
/// threshold 1 - 1e-6, then bisection of the overlap derivative to 1e-12,
/// accepting peaks with overlap >= 1 - 1e-10. Returns nullopt when no
/// such passage exists in range (and, by convention, for psi_i == psi_f).
std::optional<double> flip_time(const CMatrix& h, const StateVector& psi_i,
                                const StateVector& psi_f, double t_max,
                                double hbar = 1.0);

/// flip_time for the PT family; guards the exceptional-point band and
/// propagates spectral failures.
std::optional<double> pt_flip_time(const PTParams& p, const StateVector& psi_i,
                                   const StateVector& psi_f, double t_max);

}  // namespace ptsim
