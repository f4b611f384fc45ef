#pragma once

#include <cstdint>
#include <vector>

#include "ptsim/cmatrix.hpp"

namespace ptsim {

/// Complex amplitude vector with an explicit normalization status. The
/// flag records provenance: evolution under a non-Hermitian generator
/// clears it, and the caller renormalizes explicitly.
struct StateVector {
  std::vector<Complex> amplitudes;
  bool normalized = false;

  std::size_t dim() const { return amplitudes.size(); }
  double norm() const { return vector_norm(amplitudes); }

  /// Normalized copy with the flag set; zero vectors are rejected.
  StateVector unit() const;

  static StateVector basis(std::size_t dim, std::size_t k);
  static StateVector raw(std::vector<Complex> amplitudes);
};

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const StateVector& a, const StateVector& b);

/// Parameters of the canonical two-level PT-symmetric family
///
///   H = [[ r e^{-i theta},  s ],
///        [ s,  r e^{+i theta} ]]
///
/// oriented so that the fast |0> -> |1> passage happens for theta in
/// (0, pi/2). The spectrum is real (unbroken phase) iff
/// s^2 - r^2 sin^2(theta) > 0; the discriminant vanishing is the
/// exceptional point.
struct PTParams {
  double r = 0.0;
  double s = 1.0;
  double theta = 0.0;
  double hbar = 1.0;

  /// Throws InvalidArgument unless s > 0, hbar > 0 and everything is
  /// finite; theta is reduced into [0, 2*pi).
  void validate();

  double discriminant() const;  // s^2 - r^2 sin^2(theta)
  bool unbroken() const { return discriminant() > 0.0; }
  /// Guard band |discriminant| < 1e-8 s^2 around the exceptional point.
  bool at_exceptional_point() const;
};

struct SpectralData {
  Complex e_plus;
  Complex e_minus;
  double omega = 0.0;  // |E+ - E-|
  bool unbroken = false;
};

CMatrix pt_hamiltonian(const PTParams& p);

/// Eigenvalue pair and omega = |E+ - E-| of a Hamiltonian. For dim > 2
/// the extremal pair (maximum pairwise distance) is reported. Throws
/// ExceptionalPoint when the gap collapses on a non-diagonalizable input.
SpectralData spectral(const CMatrix& h, double hbar = 1.0);

/// Hermitian positive-definite metric eta with H^dag = eta H eta^{-1},
/// built from the normalized left eigenvectors and scaled to
/// tr(eta) = dim. Only defined in the unbroken phase (real spectrum);
/// throws BrokenPhase otherwise.
CMatrix metric_operator(const CMatrix& h);

struct PseudoHermitianCheck {
  bool pseudo_hermitian = false;
  double residual = 0.0;  // ||H^dag eta - eta H||_F
};
PseudoHermitianCheck is_pseudo_hermitian(const CMatrix& h, const CMatrix& eta);

/// e^{-i H t / hbar} |psi>, unnormalized (flag cleared).
StateVector evolve(const CMatrix& h, double t, const StateVector& psi, double hbar = 1.0);

/// gamma = ||e^{-i H t / hbar} |psi>||.
double evolution_norm(const CMatrix& h, double t, const StateVector& psi, double hbar = 1.0);

/// Haar-random pure state, deterministic in (seed, sample_index).
StateVector haar_state(std::size_t dim, std::uint64_t seed, std::uint64_t sample_index);

/// ||psi|| == 1 within 1e-12.
bool state_is_unit(const StateVector& psi);

}  // namespace ptsim
