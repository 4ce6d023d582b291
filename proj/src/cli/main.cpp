///
/// rfwave: batch experiment runner for the nonlocal conservation-law lab.
///
/// Subcommands: green-props, profile, evolve, decay-study, ineq-suite.
/// Every run consumes a strict key-value config, re-validates all model
/// admissibility conditions, writes deterministic CSV/JSON artifacts into
/// --out, and exits 0 iff every asserted check passes.
///

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "commands.hpp"
#include "rfwave/csvio.hpp"
#include "rfwave/version.hpp"

namespace rfwave::cli {

//==== config loaders ========================================================

RieszFellerParams params_from(Config& cfg) {
  const double alpha = cfg.get_double("params", "alpha", 2.0);
  const double theta = cfg.get_double("params", "theta", 0.0);
  return RieszFellerParams(alpha, theta);  // ctor re-validates admissibility
}

Grid grid_from(Config& cfg, double default_L, long default_N) {
  const double L = cfg.get_double("grid", "L", default_L);
  const long N = cfg.get_int("grid", "N", default_N);
  if (N > (1L << 24)) throw std::invalid_argument("[grid] N too large");
  return Grid(L, static_cast<int>(N));
}

FluxFunction flux_from(Config& cfg) {
  const std::string preset = cfg.get_string("flux", "preset", "burgers");
  if (preset == "burgers") return FluxFunction::burgers();
  if (preset == "polynomial") {
    const std::vector<double> coeff = cfg.get_list("flux", "coefficients");
    if (coeff.empty())
      throw std::invalid_argument("[flux] polynomial needs coefficients");
    return FluxFunction::polynomial(coeff);
  }
  throw std::invalid_argument("[flux] unknown preset '" + preset +
                              "' (burgers | polynomial)");
}

WaveData wave_from(Config& cfg, const FluxFunction& flux) {
  const double um = cfg.get_double("wave", "u_minus", 1.0);
  const double up = cfg.get_double("wave", "u_plus", 0.0);
  return WaveData(flux, um, up);  // ordering + convexity re-checked
}

PerturbationSpec perturbation_from(Config& cfg) {
  PerturbationSpec spec;
  spec.shape = cfg.get_string("perturbation", "shape", "gaussian");
  if (spec.shape != "gaussian" && spec.shape != "dipole" && spec.shape != "file")
    throw std::invalid_argument("[perturbation] shape must be gaussian | dipole | file");
  if (cfg.has("perturbation", "amplitudes")) {
    spec.amplitudes = cfg.get_list("perturbation", "amplitudes");
    if (spec.amplitudes.empty())
      throw std::invalid_argument("[perturbation] amplitudes list is empty");
  } else {
    spec.amplitudes = {cfg.get_double("perturbation", "amplitude", 0.02)};
  }
  spec.width = cfg.get_double("perturbation", "width", 2.0);
  if (!(spec.width > 0.0))
    throw std::invalid_argument("[perturbation] width must be > 0");
  spec.center = cfg.get_double("perturbation", "center", 0.0);
  if (spec.shape == "file")
    spec.path = cfg.get_string("perturbation", "path");
  return spec;
}

GridFunction build_perturbation(const PerturbationSpec& spec, double amplitude,
                                const Grid& grid) {
  if (spec.shape == "gaussian") {
    return GridFunction::sample(grid, [&](double xi) {
      const double z = (xi - spec.center) / spec.width;
      return amplitude * std::exp(-z * z);
    });
  }
  if (spec.shape == "dipole") {
    // derivative of the gaussian bump: zero-mass by symmetry
    return GridFunction::sample(grid, [&](double xi) {
      const double z = (xi - spec.center) / spec.width;
      return amplitude * (-2.0 * z / spec.width) * std::exp(-z * z);
    });
  }
  // shape = file: strict two-column CSV xi,value matching the grid
  const CsvTable table = read_csv(spec.path);
  if (table.header.size() != 2 || table.header[0] != "xi" ||
      table.header[1] != "value")
    throw std::invalid_argument(spec.path + ": expected header xi,value");
  if (static_cast<int>(table.rows.size()) != grid.N)
    throw std::invalid_argument(spec.path + ": row count does not match grid N");
  GridFunction f(grid);
  for (int i = 0; i < grid.N; ++i) {
    if (std::abs(table.rows[i][0] - grid.x(i)) > 1e-9 * grid.L)
      throw std::invalid_argument(spec.path + ": xi column does not match grid");
    f[i] = amplitude * table.rows[i][1];
  }
  return f;
}

Profile profile_from(Config& cfg, const RieszFellerParams& params,
                     const FluxFunction& flux, const WaveData& wave,
                     const Grid& grid, bool verbose) {
  std::string method = cfg.get_string("profile", "method", "auto");
  const double t_relax = cfg.get_double("profile", "t_relax", 600.0);
  const double dt = cfg.get_double("profile", "dt", 0.0);
  const double tol = cfg.get_double("profile", "tol", 3e-7);
  const std::string load = cfg.get_string("profile", "load", "");

  const bool classical = params.alpha == 2.0;
  if (method == "auto") method = classical ? "ode" : "relaxation";
  if (method == "ode" && !classical)
    throw std::invalid_argument("[profile] method=ode requires alpha = 2");
  if (method != "ode" && method != "relaxation")
    throw std::invalid_argument("[profile] method must be auto | ode | relaxation");

  if (!load.empty()) {
    Profile pr = load_profile_csv(load, params, flux, wave);
    if (pr.grid != grid)
      throw std::invalid_argument("[profile] loaded grid does not match [grid]");
    return pr;
  }
  if (verbose)
    std::printf("profile: alpha=%g theta=%g %s L=%g N=%d method=%s\n",
                params.alpha, params.theta, flux.name.c_str(), grid.L, grid.N,
                method.c_str());
  if (method == "ode") return classical_profile(flux, wave, grid);
  return fractional_profile(params, flux, wave, grid, t_relax, dt, tol);
}

//==== trajectory artifacts ==================================================

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  CsvTable table;
  table.header = {"t",  "L1",     "L2",          "Linf",      "H1",
                  "Hdot_alpha_half", "energy", "dissipation", "cross_term"};
  table.rows.reserve(traj.snaps.size());
  for (const Snapshot& s : traj.snaps)
    table.rows.push_back({s.t, s.rec.l1_U, s.rec.l2_U, s.rec.linf_U, s.rec.h1_W,
                          s.rec.hdot_half_W, s.rec.energy2, s.rec.dissipation2,
                          s.rec.cross_term});
  write_csv(path, table);
}

void write_ledger_csv(const std::string& path, const std::vector<LedgerRow>& rows) {
  CsvTable table;
  table.header = {"t",          "energy",           "h1", "cumulative_dissipation",
                  "cross_term", "cumulative_cross", "h1_exceeded"};
  table.rows.reserve(rows.size());
  for (const LedgerRow& r : rows)
    table.rows.push_back({r.t, r.energy2, r.h1, r.cumulative_dissipation,
                          r.cross_term, r.cumulative_cross,
                          r.h1_exceeded ? 1.0 : 0.0});
  write_csv(path, table);
}

//==== artifacts =============================================================

std::string out_path(const CliOptions& opt, const std::string& name) {
  std::filesystem::create_directories(opt.out_dir);
  return (std::filesystem::path(opt.out_dir) / name).string();
}

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

int finish(const CliOptions& opt, Report& report, const std::string& json_name) {
  const std::string path = out_path(opt, json_name);
  report.write(path);
  for (const ReportEntry& e : report.results) {
    std::printf("[%s] %-42s measured=%-13.6g expected=%-13.6g tol=%.6g\n",
                e.pass ? "PASS" : "FAIL", e.name.c_str(), e.measured, e.expected,
                e.tolerance);
  }
  const bool ok = report.all_pass();
  std::printf("%s: %zu checks, %s -> %s\n", ok ? "PASS" : "FAIL",
              report.results.size(), ok ? "all passed" : "failures above", path.c_str());
  return ok ? 0 : 1;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace rfwave::cli

//==== entry point ===========================================================

int main(int argc, char** argv) {
  using namespace rfwave::cli;

  CLI::App app{"nonlocal conservation-law verification lab"};
  app.set_version_flag("--version", rfwave::kVersion);
  app.require_subcommand(1);

  CliOptions opt;
  int (*run)(rfwave::Config&, const CliOptions&) = nullptr;

  struct SubSpec {
    const char* name;
    const char* help;
    int (*fn)(rfwave::Config&, const CliOptions&);
  };
  const SubSpec subs[] = {
      {"green-props", "fundamental-solution property suite", &cmd_green_props},
      {"profile", "compute and certify a traveling-wave profile", &cmd_profile},
      {"evolve", "perturbation evolution with stability checks", &cmd_evolve},
      {"decay-study", "algebraic-decay fit across an alpha sweep", &cmd_decay_study},
      {"ineq-suite", "functional-inequality property sweep", &cmd_ineq_suite},
  };
  for (const SubSpec& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--config", opt.config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "artifact output directory");
    sub->add_option("--threads", opt.threads, "sweep worker threads")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--verbose", opt.verbose, "progress logging");
    sub->callback([&run, fn = s.fn]() { run = fn; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    rfwave::Config cfg = rfwave::Config::parse_file(opt.config_path);
    return run(cfg, opt);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
