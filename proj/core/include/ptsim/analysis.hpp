#pragma once

#include <vector>

#include "ptsim/brachistochrone.hpp"
#include "ptsim/dilation.hpp"

namespace ptsim {

/// Hermitian generator of a realized unitary, H_U = (hbar / T) G with
/// expm(-iG) = U on the principal branch, and its eigenvalue spread.
/// branch_warning flags eigenphases within 1e-6 of +-pi, where the
/// principal branch makes omega_u a lower estimate.
struct EffectiveGenerator {
  CMatrix h_u;
  double omega_u = 0.0;
  bool branch_warning = false;
};
EffectiveGenerator effective_generator(const CMatrix& u, double t, double hbar = 1.0);

/// The two declared readings of the time bound
///   T >= (2 hbar / omega_U) arccos(overlap_arg).
/// paper_eq4 takes overlap_arg = |alpha <0_e|e^{-iHT/hbar}|0_e>| / gamma,
/// computed from the dilation amplitudes and a fresh propagator;
/// full_state_eq2 takes |<Psi_i|U Psi_i>| with Psi_i = |0_e 0_a> directly
/// from the dilated unitary. The two agree to roundoff (matrix-element
/// identity) but travel different code paths on purpose.
enum class BoundVariant { paper_eq4, full_state_eq2 };

const char* bound_variant_name(BoundVariant v);

struct BoundReport {
  double t = 0.0;
  double omega_used = 0.0;
  double overlap_arg = 0.0;  // in [0, 1]
  double rhs = 0.0;          // (2 hbar / omega_used) arccos(overlap_arg)
  bool satisfied = false;    // t >= rhs - 1e-9
  double margin = 0.0;       // t - rhs
  BoundVariant variant = BoundVariant::full_state_eq2;
  bool branch_warning = false;
};

BoundReport check_time_bound(const DilationResult& d, double t, BoundVariant variant);

enum class RecordStatus { ok, skipped_exceptional, not_reached, flagged };

const char* record_status_name(RecordStatus s);

/// One parameter point of the efficiency sweep: flip time, spectral
/// spread of the PT generator, post-selection cost alpha^2, spread of the
/// realized dilated unitary, the Hermitian reference time at the same
/// omega, and the bound evaluations.
struct EfficiencyRecord {
  PTParams params;
  RecordStatus status = RecordStatus::ok;
  double t_flip = 0.0;
  double omega_h = 0.0;
  double gamma = 0.0;
  double alpha2 = 0.0;
  double omega_u = 0.0;
  double tau_hermitian = 0.0;
  double bound_rhs_eq4 = 0.0;
  double bound_rhs_full = 0.0;
  bool bound_ok = false;
};

/// Evaluates every grid point in order; exceptional points and
/// unreachable flips are emitted as skip records instead of aborting.
std::vector<EfficiencyRecord> efficiency_report(const std::vector<PTParams>& grid,
                                                const StateVector& psi_i,
                                                const StateVector& psi_f,
                                                double t_max = 10.0);

}  // namespace ptsim
