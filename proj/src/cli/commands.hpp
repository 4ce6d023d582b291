#pragma once

///
/// Shared plumbing for the rfwave subcommands: config -> domain-object
/// loaders (each re-validating admissibility), the perturbation builder,
/// artifact path handling, and report emission.
///
/// Every loader takes the Config by reference because typed getters mark
/// keys consumed; commands call cfg.require_all_consumed() after loading
/// so unknown keys are hard errors.
///

#include <string>
#include <vector>

#include "rfwave/config.hpp"
#include "rfwave/diagnostics.hpp"
#include "rfwave/field.hpp"
#include "rfwave/params.hpp"
#include "rfwave/profile.hpp"
#include "rfwave/report.hpp"

namespace rfwave::cli {

//==== invocation options ====================================================

struct CliOptions {
  std::string config_path;
  std::string out_dir = ".";
  int threads = 1;
  bool verbose = false;
};

//==== config loaders ========================================================

/// [params] alpha, theta — re-validated by the RieszFellerParams ctor.
RieszFellerParams params_from(Config& cfg);

/// [grid] L, N with caller-supplied defaults.
Grid grid_from(Config& cfg, double default_L, long default_N);

/// [flux] preset = burgers | polynomial (+ coefficients = c1, c2, ...).
FluxFunction flux_from(Config& cfg);

/// [wave] u_minus, u_plus; convexity and ordering re-checked by WaveData.
WaveData wave_from(Config& cfg, const FluxFunction& flux);

/// [perturbation] shape = gaussian | dipole | file, amplitude (or the
/// sweep list amplitudes), width, center, path.  Returns one field per
/// amplitude, in config order.
struct PerturbationSpec {
  std::string shape = "gaussian";
  std::vector<double> amplitudes;  ///< one run per entry
  double width = 2.0;
  double center = 0.0;
  std::string path;  ///< shape = file only
};
PerturbationSpec perturbation_from(Config& cfg);
GridFunction build_perturbation(const PerturbationSpec& spec, double amplitude,
                                const Grid& grid);

/// [profile] method = auto | ode | relaxation, t_relax, dt, tol, load.
/// auto selects the ODE route at alpha = 2 and relaxation otherwise; load
/// short-circuits to the persisted CSV (grid must match).
Profile profile_from(Config& cfg, const RieszFellerParams& params,
                     const FluxFunction& flux, const WaveData& wave,
                     const Grid& grid, bool verbose);

//==== trajectory artifacts ==================================================

/// Norm history CSV with the fixed header
/// t,L1,L2,Linf,H1,Hdot_alpha_half,energy,dissipation,cross_term
/// (L1/L2/Linf of the perturbation u - ubar; H1 and the energy columns of
/// its anti-derivative).
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Energy-ledger CSV: t,energy,h1,cumulative_dissipation,cross_term,
/// cumulative_cross,h1_exceeded.
void write_ledger_csv(const std::string& path, const std::vector<LedgerRow>& rows);

//==== artifacts =============================================================

/// out_dir + "/" + name (out_dir created on demand).
std::string out_path(const CliOptions& opt, const std::string& name);

/// Writes the JSON report, prints one PASS/FAIL line per entry plus a
/// summary line, and returns the exit status (0 iff all pass).
int finish(const CliOptions& opt, Report& report, const std::string& json_name);

/// Writes a text file (gnuplot scripts).
void write_text(const std::string& path, const std::string& text);

/// Compact %.6g formatting for names/log lines (not artifacts).
std::string short_num(double x);

//==== subcommands ===========================================================

int cmd_green_props(Config& cfg, const CliOptions& opt);
int cmd_profile(Config& cfg, const CliOptions& opt);
int cmd_evolve(Config& cfg, const CliOptions& opt);
int cmd_decay_study(Config& cfg, const CliOptions& opt);
int cmd_ineq_suite(Config& cfg, const CliOptions& opt);

}  // namespace rfwave::cli
