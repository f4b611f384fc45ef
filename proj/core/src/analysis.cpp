#include "ptsim/analysis.hpp"

#include <cmath>
#include <limits>

#include "ptsim/error.hpp"
#include "ptsim/linalg.hpp"

namespace ptsim {

namespace {

constexpr double kBoundSlack = 1e-9;

double bound_rhs(double overlap_arg, double omega, double hbar) {
  const double angle = std::acos(std::min(1.0, std::max(0.0, overlap_arg)));
  if (angle == 0.0) return 0.0;
  if (omega <= 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * hbar * angle / omega;
}

}  // namespace

const char* bound_variant_name(BoundVariant v) {
  return v == BoundVariant::paper_eq4 ? "paper_eq4" : "full_state_eq2";
}

const char* record_status_name(RecordStatus s) {
  switch (s) {
    case RecordStatus::ok: return "ok";
    case RecordStatus::skipped_exceptional: return "skip";
    case RecordStatus::not_reached: return "notreached";
    case RecordStatus::flagged: return "flagged";
  }
  return "unknown";
}

EffectiveGenerator effective_generator(const CMatrix& u, double t, double hbar) {
  if (!(t > 0.0)) raise(ErrorCode::InvalidArgument, "effective_generator: T must be positive");
  if (!(hbar > 0.0)) raise(ErrorCode::InvalidArgument, "effective_generator: hbar must be positive");

  const UnitaryLog lg = logm_unitary(u);
  EffectiveGenerator out;
  out.h_u = (hbar / t) * lg.generator;
  out.omega_u = (hbar / t) * (lg.eigenphases.back() - lg.eigenphases.front());
  for (double phi : lg.eigenphases) {
    if (std::abs(std::abs(phi) - M_PI) < 1e-6) out.branch_warning = true;
  }
  return out;
}

BoundReport check_time_bound(const DilationResult& d, double t, BoundVariant variant) {
  if (std::abs(d.t - t) > 1e-12 * std::max(1.0, std::abs(t))) {
    raise(ErrorCode::InvalidArgument, "check_time_bound: dilation was built at a different time");
  }
  const EffectiveGenerator eff = effective_generator(d.u, t, d.hbar);

  double overlap_arg = 0.0;
  if (variant == BoundVariant::paper_eq4) {
    // |alpha <0_e| e^{-iHT/hbar} |0_e>| / gamma from a fresh propagator,
    // independent of the assembled dilation.
    const CMatrix propagator = expm(Complex(0.0, -t / d.hbar) * d.h);
    overlap_arg = std::abs(d.alpha * propagator(0, 0) / d.gamma);
  } else {
    // |<Psi_i|U Psi_i>| with Psi_i = |0_e 0_a>.
    std::vector<Complex> reference(d.u.dim(), 0.0);
    reference[0] = 1.0;
    overlap_arg = std::abs(vector_dot(reference, d.u.apply(reference)));
  }
  overlap_arg = std::min(1.0, overlap_arg);

  BoundReport report;
  report.t = t;
  report.omega_used = eff.omega_u;
  report.overlap_arg = overlap_arg;
  report.rhs = bound_rhs(overlap_arg, eff.omega_u, d.hbar);
  report.margin = t - report.rhs;
  report.satisfied = report.margin >= -kBoundSlack;
  report.variant = variant;
  report.branch_warning = eff.branch_warning;
  return report;
}

std::vector<EfficiencyRecord> efficiency_report(const std::vector<PTParams>& grid,
                                                const StateVector& psi_i,
                                                const StateVector& psi_f,
                                                double t_max) {
  if (grid.empty()) raise(ErrorCode::InvalidArgument, "efficiency_report: empty grid");
  if (!state_is_unit(psi_i) || !state_is_unit(psi_f)) {
    raise(ErrorCode::NotNormalized, "efficiency_report: states must be normalized");
  }
  if (!(t_max > 0.0)) raise(ErrorCode::InvalidArgument, "efficiency_report: t_max must be positive");

  std::vector<EfficiencyRecord> records;
  records.reserve(grid.size());
  for (const PTParams& point : grid) {
    EfficiencyRecord rec;
    rec.params = point;
    rec.params.validate();
    try {
      if (rec.params.at_exceptional_point()) {
        rec.status = RecordStatus::skipped_exceptional;
        records.push_back(rec);
        continue;
      }
      const CMatrix h = pt_hamiltonian(rec.params);
      const SpectralData sd = spectral(h, rec.params.hbar);
      rec.omega_h = sd.omega;
      if (!(sd.omega > 0.0)) {
        rec.status = RecordStatus::skipped_exceptional;
        records.push_back(rec);
        continue;
      }

      const std::optional<double> flip = pt_flip_time(rec.params, psi_i, psi_f, t_max);
      if (!flip) {
        rec.status = RecordStatus::not_reached;
        records.push_back(rec);
        continue;
      }
      rec.t_flip = *flip;
      rec.tau_hermitian = hermitian_min_time(psi_i, psi_f, sd.omega, rec.params.hbar).tau;

      const DilationResult d = dilate_evolution(h, rec.t_flip, rec.params.hbar);
      rec.gamma = d.gamma;
      rec.alpha2 = d.alpha * d.alpha;

      const BoundReport eq4 = check_time_bound(d, rec.t_flip, BoundVariant::paper_eq4);
      const BoundReport full = check_time_bound(d, rec.t_flip, BoundVariant::full_state_eq2);
      rec.omega_u = full.omega_used;
      rec.bound_rhs_eq4 = eq4.rhs;
      rec.bound_rhs_full = full.rhs;
      rec.bound_ok = eq4.satisfied && full.satisfied;
      rec.status = full.branch_warning ? RecordStatus::flagged : RecordStatus::ok;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ExceptionalPoint || e.code() == ErrorCode::NotDiagonalizable) {
        rec.status = RecordStatus::skipped_exceptional;
      } else {
        throw;
      }
    }
    records.push_back(rec);
  }
  return records;
}

}  // namespace ptsim
