#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "ptsim/quantum.hpp"

namespace ptsim {

/// Success-branch contraction of a (generally non-unitary) evolution:
/// K = (alpha / gamma) e^{-iHt/hbar} with gamma = ||e^{-iHt/hbar}|0>||
/// and alpha chosen maximal, alpha = gamma / sigma_max(e^{-iHt/hbar}),
/// so that sigma_max(K) = 1.
struct Contraction {
  CMatrix k;
  double alpha = 1.0;
  double gamma = 1.0;
};
Contraction contraction_from_evolution(const CMatrix& h, double t, double hbar = 1.0);

/// Block unitary [[K, sqrt(I-KK^dag)], [sqrt(I-K^dag K), -K^dag]] on
/// system (x) ancilla, ancilla index slowest (block row/column = ancilla
/// state, success = |0_a>). The off-diagonal blocks are built from one
/// shared singular decomposition of K, which keeps the unitarity
/// residual at roundoff even when sigma_max(K) = 1 exactly.
CMatrix sznagy_dilation(const CMatrix& k);

struct KrausPair {
  CMatrix m0;  // success branch, equal to K by construction
  CMatrix m1;  // failure branch
};

/// The dilated evolution: unitary U, contraction K, the amplitudes
/// alpha, beta of the two ancilla branches on the reference input
/// |0_e> (x) |0_a>, the norm gamma and the Kraus pair of the reduced map.
struct DilationResult {
  CMatrix h;      // generator the dilation was built from
  CMatrix u;      // 2n x 2n unitary
  CMatrix k;      // n x n contraction (success block of u)
  double alpha = 1.0;
  double beta = 0.0;   // sqrt(1 - alpha^2)
  double gamma = 1.0;
  KrausPair kraus;
  double t = 0.0;
  double hbar = 1.0;
};

DilationResult dilate_evolution(const CMatrix& h, double t, double hbar = 1.0);

/// M_k = (I (x) <k_a|) U (I (x) |0_a>): the Kraus operators of the
/// trace-preserving reduced dynamics.
KrausPair kraus_subdynamics(const DilationResult& d);

/// Ancilla measurement on U(|psi> (x) |0_a>). A branch whose norm falls
/// below 1e-14 is impossible; its state is absent.
struct PostSelectOutcome {
  double success_prob = 0.0;
  std::optional<StateVector> success_state;
  std::optional<StateVector> failure_state;
};
PostSelectOutcome postselect(const DilationResult& d, const StateVector& psi);

/// Samples Haar-random pure states and compares the unconditional
/// trace-preserving map M0 rho M0^dag + M1 rho M1^dag against the
/// normalized target (e^{-iHt}psi)(...)^dag / gamma_psi^2 by fidelity.
struct RestrictionScan {
  double fraction_matching = 0.0;  // fidelity >= 1 - 1e-9
  double min_fidelity = 1.0;
  int num_samples = 0;
};
RestrictionScan subdynamics_restriction_scan(const CMatrix& h, double t, double hbar,
                                             int num_samples, std::uint64_t seed);

/// Plain-text matrix dump: header "# dim=<n> kind=<label>", then one line
/// per row with entries formatted as re+imj, single-space separated,
/// 17 significant digits.
void dump_matrix(std::ostream& os, const CMatrix& m, std::string_view kind);

/// One dump entry: "<re>+<im>j" at 17 significant digits, -0 canonicalized.
std::string format_complex_entry(Complex v);

}  // namespace ptsim
