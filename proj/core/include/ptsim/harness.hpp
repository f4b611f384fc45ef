#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ptsim/analysis.hpp"

namespace ptsim {

struct Range {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;  // >= 1; steps == 1 emits min only
};

enum class VariantSelector { eq4, full, both };

/// Configuration shared by all subcommands; point commands use the scalar
/// parameters, sweep uses the ranges (theta outer, r middle, s inner).
struct RunConfig {
  double r = 0.0;
  double s = 1.0;
  double theta = 0.0;
  double hbar = 1.0;
  double t = 1.0;
  double t_max = 10.0;
  Range theta_range{0.0, 1.5, 16};
  Range r_range{0.0, 0.95, 20};
  Range s_range{1.0, 1.0, 1};
  long trials = 10000;
  std::uint64_t seed = 1;
  std::string output;
  VariantSelector variant = VariantSelector::both;
};

struct MonteCarloResult {
  long trials = 0;
  long successes = 0;
  double empirical_freq = 0.0;
  double p_theory = 0.0;
  double z_score = 0.0;  // 0 by convention when p_theory is 0 or 1
};

/// Bernoulli sampling of `trials` post-selection outcomes at success
/// probability p_theory with the counter-based generator; deterministic
/// in (seed, trials, p_theory).
MonteCarloResult montecarlo_trials(double p_theory, long trials, std::uint64_t seed);

/// Dilates the configured PT point at time t and samples ancilla
/// measurements on U(|0_e> (x) |0_a>); p_theory = alpha^2.
MonteCarloResult run_montecarlo(const RunConfig& cfg);

std::vector<PTParams> build_grid(const RunConfig& cfg);

/// Runs the efficiency sweep over the configured grid (flip pair
/// |0_e> -> |1_e>) and, when an output path is set, writes the CSV
/// atomically (temp file + rename; partial files removed on failure).
std::vector<EfficiencyRecord> run_sweep(const RunConfig& cfg);

/// CSV with the fixed header
/// theta,r,s,hbar,status,t_flip,omega_H,gamma,alpha2,omega_U,tau_hermitian,bound_rhs_eq4,bound_rhs_full,bound_ok
/// numbers at 17 significant digits, '\n' line endings.
void write_sweep_csv(std::ostream& os, const std::vector<EfficiencyRecord>& records);

/// 17-significant-digit decimal form that round-trips doubles.
std::string format_double(double v);

/// CLI entry point. Subcommands: evolve, dilate, flip-time, bound-check,
/// sweep, montecarlo. Exit code 0 on success, 1 on validation errors,
/// 2 on numerical failures.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv);

}  // namespace ptsim
