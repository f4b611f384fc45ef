#include "ptsim/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "ptsim/error.hpp"
#include "ptsim/linalg.hpp"
#include "ptsim/rng.hpp"

namespace ptsim {

namespace {

constexpr const char* kCsvHeader =
    "theta,r,s,hbar,status,t_flip,omega_H,gamma,alpha2,omega_U,tau_hermitian,"
    "bound_rhs_eq4,bound_rhs_full,bound_ok";

std::vector<double> range_values(const Range& range, const char* name) {
  if (range.steps < 1) {
    raise(ErrorCode::InvalidArgument, std::string(name) + ": steps must be >= 1");
  }
  if (!std::isfinite(range.min) || !std::isfinite(range.max)) {
    raise(ErrorCode::InvalidArgument, std::string(name) + ": non-finite range");
  }
  std::vector<double> values;
  values.reserve(range.steps);
  if (range.steps == 1) {
    values.push_back(range.min);
    return values;
  }
  const double step = (range.max - range.min) / (range.steps - 1);
  for (int i = 0; i < range.steps; ++i) values.push_back(range.min + i * step);
  return values;
}

void emit_record(std::ostream& os, const EfficiencyRecord& rec) {
  const bool has_data =
      rec.status == RecordStatus::ok || rec.status == RecordStatus::flagged;
  const auto num = [&has_data](double v) {
    return has_data ? format_double(v) : std::string("nan");
  };
  os << format_double(rec.params.theta) << ',' << format_double(rec.params.r) << ','
     << format_double(rec.params.s) << ',' << format_double(rec.params.hbar) << ','
     << record_status_name(rec.status) << ',' << num(rec.t_flip) << ','
     << num(rec.omega_h) << ',' << num(rec.gamma) << ',' << num(rec.alpha2) << ','
     << num(rec.omega_u) << ',' << num(rec.tau_hermitian) << ','
     << num(rec.bound_rhs_eq4) << ',' << num(rec.bound_rhs_full) << ','
     << (has_data && rec.bound_ok ? "true" : "false") << '\n';
}

PTParams point_params(const RunConfig& cfg) {
  PTParams p{cfg.r, cfg.s, cfg.theta, cfg.hbar};
  p.validate();
  return p;
}

int classify_exit(const Error& e) { return e.is_validation() ? 1 : 2; }

struct CliOptions {
  RunConfig cfg;
  int initial = 0;  // basis index for evolve
};

void print_bound_line(std::ostream& out, const BoundReport& report) {
  out << "variant=" << bound_variant_name(report.variant)
      << " satisfied=" << (report.satisfied ? "true" : "false")
      << " overlap=" << format_double(report.overlap_arg)
      << " omega_U=" << format_double(report.omega_used)
      << " rhs=" << format_double(report.rhs)
      << " margin=" << format_double(report.margin)
      << " branch_warning=" << (report.branch_warning ? "true" : "false") << "\n";
}

int dispatch_evolve(const CliOptions& opt, std::ostream& out) {
  const PTParams p = point_params(opt.cfg);
  if (opt.initial < 0 || opt.initial > 1) {
    raise(ErrorCode::InvalidArgument, "evolve: --initial must be 0 or 1");
  }
  const CMatrix h = pt_hamiltonian(p);
  const StateVector psi = StateVector::basis(2, static_cast<std::size_t>(opt.initial));
  const StateVector evolved = evolve(h, opt.cfg.t, psi, p.hbar);
  const StateVector unit = evolved.unit();

  out << "psi_raw =";
  for (const Complex& a : evolved.amplitudes) out << ' ' << format_complex_entry(a);
  out << "\n";
  out << "gamma = " << format_double(evolved.norm()) << "\n";
  out << "psi_normalized =";
  for (const Complex& a : unit.amplitudes) out << ' ' << format_complex_entry(a);
  out << "\n";
  return 0;
}

int dispatch_dilate(const CliOptions& opt, std::ostream& out) {
  const PTParams p = point_params(opt.cfg);
  const DilationResult d = dilate_evolution(pt_hamiltonian(p), opt.cfg.t, p.hbar);
  const CMatrix defect = d.u.adjoint() * d.u - CMatrix::identity(d.u.dim());
  out << "alpha = " << format_double(d.alpha) << "\n"
      << "beta = " << format_double(d.beta) << "\n"
      << "gamma = " << format_double(d.gamma) << "\n"
      << "alpha2 = " << format_double(d.alpha * d.alpha) << "\n"
      << "unitarity_residual = " << format_double(defect.frobenius_norm()) << "\n";
  if (!opt.cfg.output.empty()) {
    const std::filesystem::path path(opt.cfg.output);
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      if (!os) raise(ErrorCode::IoError, "dilate: cannot open " + tmp.string());
      dump_matrix(os, d.u, "U");
      dump_matrix(os, d.k, "K");
      dump_matrix(os, d.kraus.m0, "M0");
      dump_matrix(os, d.kraus.m1, "M1");
      os.flush();
      if (!os) {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        raise(ErrorCode::IoError, "dilate: write failed for " + tmp.string());
      }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
      std::filesystem::remove(tmp, ec);
      raise(ErrorCode::IoError, "dilate: rename failed for " + path.string());
    }
    out << "output = " << path.string() << "\n";
  }
  return 0;
}

int dispatch_flip_time(const CliOptions& opt, std::ostream& out) {
  const PTParams p = point_params(opt.cfg);
  const auto flip = pt_flip_time(p, StateVector::basis(2, 0), StateVector::basis(2, 1),
                                 opt.cfg.t_max);
  if (flip) {
    out << "t_flip = " << format_double(*flip) << "\n";
    return 0;
  }
  out << "t_flip = notreached\n";
  return 0;
}

int dispatch_bound_check(const CliOptions& opt, std::ostream& out) {
  const PTParams p = point_params(opt.cfg);
  const DilationResult d = dilate_evolution(pt_hamiltonian(p), opt.cfg.t, p.hbar);
  if (opt.cfg.variant != VariantSelector::full) {
    print_bound_line(out, check_time_bound(d, opt.cfg.t, BoundVariant::paper_eq4));
  }
  if (opt.cfg.variant != VariantSelector::eq4) {
    print_bound_line(out, check_time_bound(d, opt.cfg.t, BoundVariant::full_state_eq2));
  }
  return 0;
}

int dispatch_sweep(const CliOptions& opt, std::ostream& out) {
  const std::vector<EfficiencyRecord> records = run_sweep(opt.cfg);
  if (opt.cfg.output.empty()) {
    write_sweep_csv(out, records);
    return 0;
  }
  long ok = 0, skip = 0, notreached = 0, flagged = 0;
  for (const EfficiencyRecord& rec : records) {
    switch (rec.status) {
      case RecordStatus::ok: ++ok; break;
      case RecordStatus::skipped_exceptional: ++skip; break;
      case RecordStatus::not_reached: ++notreached; break;
      case RecordStatus::flagged: ++flagged; break;
    }
  }
  out << "rows=" << records.size() << " ok=" << ok << " skip=" << skip
      << " notreached=" << notreached << " flagged=" << flagged
      << " output=" << opt.cfg.output << "\n";
  return 0;
}

int dispatch_montecarlo(const CliOptions& opt, std::ostream& out) {
  const MonteCarloResult mc = run_montecarlo(opt.cfg);
  out << "trials=" << mc.trials << " successes=" << mc.successes
      << " freq=" << format_double(mc.empirical_freq)
      << " p_theory=" << format_double(mc.p_theory)
      << " z=" << format_double(mc.z_score) << "\n";
  return 0;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v + 0.0);
  return buf;
}

MonteCarloResult montecarlo_trials(double p_theory, long trials, std::uint64_t seed) {
  if (trials < 1) raise(ErrorCode::InvalidArgument, "montecarlo: trials must be >= 1");
  if (!std::isfinite(p_theory) || p_theory < -1e-12 || p_theory > 1.0 + 1e-12) {
    raise(ErrorCode::InvalidArgument, "montecarlo: p_theory outside [0, 1]");
  }
  // Snap within 1e-12 of the deterministic endpoints.
  if (p_theory >= 1.0 - 1e-12) p_theory = 1.0;
  if (p_theory <= 1e-12) p_theory = 0.0;

  const CounterRng rng(seed);
  long successes = 0;
  for (long i = 0; i < trials; ++i) {
    if (rng.uniform(static_cast<std::uint64_t>(i)) < p_theory) ++successes;
  }
  MonteCarloResult out;
  out.trials = trials;
  out.successes = successes;
  out.empirical_freq = static_cast<double>(successes) / static_cast<double>(trials);
  out.p_theory = p_theory;
  out.z_score = 0.0;
  if (p_theory > 0.0 && p_theory < 1.0) {
    const double stddev = std::sqrt(p_theory * (1.0 - p_theory) / static_cast<double>(trials));
    out.z_score = (out.empirical_freq - p_theory) / stddev;
  }
  return out;
}

MonteCarloResult run_montecarlo(const RunConfig& cfg) {
  PTParams p{cfg.r, cfg.s, cfg.theta, cfg.hbar};
  p.validate();
  const DilationResult d = dilate_evolution(pt_hamiltonian(p), cfg.t, p.hbar);
  return montecarlo_trials(d.alpha * d.alpha, cfg.trials, cfg.seed);
}

std::vector<PTParams> build_grid(const RunConfig& cfg) {
  const std::vector<double> thetas = range_values(cfg.theta_range, "theta range");
  const std::vector<double> rs = range_values(cfg.r_range, "r range");
  const std::vector<double> ss = range_values(cfg.s_range, "s range");
  std::vector<PTParams> grid;
  grid.reserve(thetas.size() * rs.size() * ss.size());
  for (double theta : thetas) {
    for (double r : rs) {
      for (double s : ss) {
        PTParams p{r, s, theta, cfg.hbar};
        p.validate();
        grid.push_back(p);
      }
    }
  }
  return grid;
}

void write_sweep_csv(std::ostream& os, const std::vector<EfficiencyRecord>& records) {
  os << kCsvHeader << '\n';
  for (const EfficiencyRecord& rec : records) emit_record(os, rec);
}

std::vector<EfficiencyRecord> run_sweep(const RunConfig& cfg) {
  const std::vector<PTParams> grid = build_grid(cfg);
  const std::vector<EfficiencyRecord> records = efficiency_report(
      grid, StateVector::basis(2, 0), StateVector::basis(2, 1), cfg.t_max);

  if (!cfg.output.empty()) {
    const std::filesystem::path path(cfg.output);
    const std::filesystem::path tmp = path.string() + ".tmp";
    bool ok = false;
    {
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      if (!os) raise(ErrorCode::IoError, "sweep: cannot open " + tmp.string());
      write_sweep_csv(os, records);
      os.flush();
      ok = static_cast<bool>(os);
    }
    if (!ok) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      raise(ErrorCode::IoError, "sweep: write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
      std::filesystem::remove(tmp, ec);
      raise(ErrorCode::IoError, "sweep: rename failed for " + path.string());
    }
  }
  return records;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliOptions opt;
  CLI::App app{"PT-symmetric two-level dynamics: dilation, speed bounds, efficiency"};
  app.set_config("--config", "", "Read options from a key = value file");
  app.add_option("--hbar", opt.cfg.hbar, "Planck constant (action units)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.cfg.seed, "64-bit seed for all sampling");
  app.add_option("--output", opt.cfg.output, "Output file path");
  const std::map<std::string, VariantSelector> variant_map{
      {"eq4", VariantSelector::eq4}, {"full", VariantSelector::full},
      {"both", VariantSelector::both}};
  app.add_option("--variant", opt.cfg.variant, "Bound variant to report")
      ->transform(CLI::CheckedTransformer(variant_map, CLI::ignore_case));

  const auto add_point_params = [&](CLI::App* sub) {
    sub->configurable();
    sub->add_option("--r", opt.cfg.r, "Diagonal magnitude r (energy units)");
    sub->add_option("--s", opt.cfg.s, "Coupling s (energy units)")->check(CLI::PositiveNumber);
    sub->add_option("--theta", opt.cfg.theta, "Phase theta (radians)");
  };

  CLI::App* evolve_cmd = app.add_subcommand("evolve", "Evolve a basis state under the PT Hamiltonian");
  add_point_params(evolve_cmd);
  evolve_cmd->add_option("--t", opt.cfg.t, "Evolution time");
  evolve_cmd->add_option("--initial", opt.initial, "Initial basis state (0 or 1)");

  CLI::App* dilate_cmd = app.add_subcommand("dilate", "Dilate the evolution into a qubit+ancilla unitary");
  add_point_params(dilate_cmd);
  dilate_cmd->add_option("--t", opt.cfg.t, "Evolution time");

  CLI::App* flip_cmd = app.add_subcommand("flip-time", "First |0> -> |1> passage of the normalized evolution");
  add_point_params(flip_cmd);
  flip_cmd->add_option("--t-max", opt.cfg.t_max, "Search horizon")->check(CLI::PositiveNumber);

  CLI::App* bound_cmd = app.add_subcommand("bound-check", "Evaluate the minimal-time bound at time t");
  add_point_params(bound_cmd);
  bound_cmd->add_option("--t", opt.cfg.t, "Evolution time");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Efficiency sweep over a (theta, r, s) grid, CSV output");
  sweep_cmd->configurable();
  sweep_cmd->add_option("--theta-min", opt.cfg.theta_range.min, "Grid theta minimum");
  sweep_cmd->add_option("--theta-max", opt.cfg.theta_range.max, "Grid theta maximum");
  sweep_cmd->add_option("--theta-steps", opt.cfg.theta_range.steps, "Grid theta steps")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--r-min", opt.cfg.r_range.min, "Grid r minimum");
  sweep_cmd->add_option("--r-max", opt.cfg.r_range.max, "Grid r maximum");
  sweep_cmd->add_option("--r-steps", opt.cfg.r_range.steps, "Grid r steps")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--s-min", opt.cfg.s_range.min, "Grid s minimum");
  sweep_cmd->add_option("--s-max", opt.cfg.s_range.max, "Grid s maximum");
  sweep_cmd->add_option("--s-steps", opt.cfg.s_range.steps, "Grid s steps")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--t-max", opt.cfg.t_max, "Flip search horizon")->check(CLI::PositiveNumber);

  CLI::App* mc_cmd = app.add_subcommand("montecarlo", "Sample post-selection outcomes");
  add_point_params(mc_cmd);
  mc_cmd->add_option("--t", opt.cfg.t, "Evolution time");
  mc_cmd->add_option("--trials", opt.cfg.trials, "Number of trials")->check(CLI::PositiveNumber);

  app.require_subcommand(0, 1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (evolve_cmd->parsed()) return dispatch_evolve(opt, out);
    if (dilate_cmd->parsed()) return dispatch_dilate(opt, out);
    if (flip_cmd->parsed()) return dispatch_flip_time(opt, out);
    if (bound_cmd->parsed()) return dispatch_bound_check(opt, out);
    if (sweep_cmd->parsed()) return dispatch_sweep(opt, out);
    if (mc_cmd->parsed()) return dispatch_montecarlo(opt, out);
    out << app.help();
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return classify_exit(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cli_main(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace ptsim
