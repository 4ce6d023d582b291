///
/// decay-study: algebraic decay of the perturbation across an alpha sweep.
///
/// For each alpha in [sweep] alphas the command builds the traveling-wave
/// profile, evolves a small perturbation to T, and fits a power law
/// |U(t)|_{L2} ~ A (1+t)^p on t >= t_min.  Two assertions per alpha:
///
///   * the bound constant sup_t |U(t)|_{L2} (1+t)^{1/(2 alpha)} must not
///     grow when the fit window widens from [t_min, T/2] to [t_min, T]
///     (a growing sup means the claimed decay exponent is not an upper
///     bound on this horizon);
///   * the fitted exponent must satisfy p <= -1/(2 alpha) + slack
///     (upper-bound semantics: faster decay than the bound is fine).
///
/// Runs fan out across --threads workers, one independent run per alpha;
/// results are merged by sweep index so reports and artifacts are
/// deterministic regardless of thread count.
///

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "commands.hpp"
#include "rfwave/csvio.hpp"
#include "rfwave/evolution.hpp"

namespace rfwave::cli {

namespace {

/// Config snapshot taken before the fan-out: workers never touch Config
/// (its consumed-key bookkeeping is not synchronized).
struct DecaySetup {
  double theta = 0.0;
  FluxFunction flux;
  WaveData wave;
  Grid grid{200.0, 2048};
  PerturbationSpec pert;
  double amplitude = 0.0;
  std::string profile_method = "auto";
  double t_relax = 600.0;
  double profile_dt = 0.0;
  double profile_tol = 3e-7;
  EvolutionConfig evcfg;
  double t_min = 10.0;
  double exponent_slack = 0.05;
  double window_growth_tol = 0.01;
};

struct SweepCase {
  double alpha = 0.0;
  std::string failure;  ///< non-empty when the run did not complete
  std::optional<Trajectory> traj;
  DecayFit fit_half, fit_full;
  double theoretical = 0.0;  ///< -1/(2 alpha)
  double shift = 0.0;
  double profile_residual = 0.0;
};

/// Fits the named window; samples are (t, |U|_{L2}) pairs from snapshots.
DecayFit fit_window(const Trajectory& traj, double t_min, double t_max,
                    double bound_exponent) {
  std::vector<double> ts, norms;
  ts.reserve(traj.snaps.size());
  norms.reserve(traj.snaps.size());
  for (const Snapshot& s : traj.snaps) {
    if (s.t > t_max) continue;
    ts.push_back(s.t);
    norms.push_back(s.rec.l2_U);
  }
  return fit_power_law(ts, norms, t_min, bound_exponent);
}

SweepCase run_case(double alpha, const DecaySetup& set) {
  SweepCase out;
  out.alpha = alpha;
  out.theoretical = -1.0 / (2.0 * alpha);
  try {
    const RieszFellerParams params(alpha, set.theta);
    std::string method = set.profile_method;
    const bool classical = params.alpha == 2.0;
    if (method == "auto") method = classical ? "ode" : "relaxation";
    if (method == "ode" && !classical)
      throw std::invalid_argument("[profile] method=ode requires alpha = 2");
    Profile base =
        method == "ode"
            ? classical_profile(set.flux, set.wave, set.grid)
            : fractional_profile(params, set.flux, set.wave, set.grid,
                                 set.t_relax, set.profile_dt, set.profile_tol);

    const GridFunction delta =
        build_perturbation(set.pert, set.amplitude, set.grid);
    GridFunction u0(set.grid);
    for (int i = 0; i < set.grid.N; ++i) u0[i] = base.ubar[i] + delta[i];
    out.shift = select_shift(u0, base);
    const Profile pr = recenter_profile(base, out.shift, set.t_relax,
                                        set.profile_dt, set.profile_tol);
    out.profile_residual = pr.residual_norm;
    GridFunction U0(set.grid);
    for (int i = 0; i < set.grid.N; ++i) U0[i] = u0[i] - pr.ubar[i];
    const GridFunction W0 = antiderivative(U0);

    out.traj = evolve(pr, W0, set.evcfg);
    const double half = set.evcfg.T / 2.0;
    out.fit_half =
        fit_window(*out.traj, set.t_min, half * (1.0 + 1e-12), out.theoretical);
    out.fit_full = fit_window(*out.traj, set.t_min, set.evcfg.T + 1.0,
                              out.theoretical);
  } catch (const std::exception& ex) {
    out.failure = ex.what();
    out.traj.reset();
  }
  return out;
}

}  // namespace

int cmd_decay_study(Config& cfg, const CliOptions& opt) {
  DecaySetup set;
  const std::vector<double> alphas =
      cfg.get_list("sweep", "alphas", {1.5, 1.75, 2.0});
  if (alphas.empty())
    throw std::invalid_argument("[sweep] alphas list is empty");
  set.theta = cfg.get_double("params", "theta", 0.0);
  set.flux = flux_from(cfg);
  set.wave = wave_from(cfg, set.flux);
  set.grid = grid_from(cfg, 200.0, 2048);

  set.pert = perturbation_from(cfg);
  if (set.pert.amplitudes.size() != 1)
    throw std::invalid_argument(
        "[perturbation] decay-study takes a single amplitude");
  set.amplitude = set.pert.amplitudes[0];

  set.profile_method = cfg.get_string("profile", "method", "auto");
  set.t_relax = cfg.get_double("profile", "t_relax", 600.0);
  set.profile_dt = cfg.get_double("profile", "dt", 0.0);
  set.profile_tol = cfg.get_double("profile", "tol", 3e-7);
  if (!cfg.get_string("profile", "load", "").empty())
    throw std::invalid_argument(
        "[profile] load is not supported by decay-study (one profile per "
        "swept alpha)");

  set.evcfg.dt = cfg.get_double("evolution", "dt", 0.0);
  set.evcfg.T = cfg.get_double("evolution", "T", 200.0);
  set.evcfg.record_every =
      static_cast<int>(cfg.get_int("evolution", "record_every", 100));
  const std::string scheme = cfg.get_string("evolution", "scheme", "etd2rk");
  if (scheme == "etd1") set.evcfg.scheme = Scheme::ETD1;
  else if (scheme == "etd2rk") set.evcfg.scheme = Scheme::ETD2RK;
  else throw std::invalid_argument("[evolution] scheme must be etd1 | etd2rk");
  set.evcfg.validate();

  set.t_min = cfg.get_double("fit", "t_min", 10.0);
  if (!(set.t_min >= 0.0 && set.t_min < set.evcfg.T / 2.0))
    throw std::invalid_argument("[fit] t_min must lie in [0, T/2)");
  set.exponent_slack = cfg.get_double("checks", "exponent_slack", 0.05);
  set.window_growth_tol = cfg.get_double("checks", "window_growth_tol", 0.01);
  cfg.require_all_consumed();

  // Fan out one independent run per alpha; merge by sweep index.
  std::vector<SweepCase> cases(alphas.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < alphas.size();
         i = next.fetch_add(1))
      cases[i] = run_case(alphas[i], set);
  };
  const int nthreads = std::max(
      1, std::min(opt.threads, static_cast<int>(alphas.size())));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads - 1);
    for (int i = 0; i + 1 < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();
  }

  Report rep;
  rep.config_hash = cfg.hash_hex();
  CsvTable table;
  table.header = {"alpha", "theoretical_exponent", "fitted_exponent",
                  "bound_constant"};

  for (const SweepCase& c : cases) {
    const std::string tag = "alpha_" + short_num(c.alpha);
    if (!c.traj) {
      rep.add(tag + "_completed", false, 0.0, 1.0, 0.0);
      std::printf("note: alpha %s did not complete: %s\n",
                  short_num(c.alpha).c_str(), c.failure.c_str());
      continue;
    }
    rep.add(tag + "_completed", true, 1.0, 1.0, 0.0);
    if (opt.verbose)
      std::printf("%s: shift=%s profile residual=%s\n", tag.c_str(),
                  short_num(c.shift).c_str(),
                  short_num(c.profile_residual).c_str());

    const double ratio = c.fit_full.bound_sup / c.fit_half.bound_sup;
    rep.add(tag + "_bound_window_ratio", ratio <= 1.0 + set.window_growth_tol,
            ratio, 1.0, set.window_growth_tol);
    rep.add(tag + "_fitted_exponent",
            c.fit_full.exponent <= c.theoretical + set.exponent_slack,
            c.fit_full.exponent, c.theoretical, set.exponent_slack);
    rep.add(tag + "_boundary_headroom", !c.traj->boundary_flagged,
            c.traj->boundary_max, 0.0, 1e-8);
    std::printf(
        "alpha %s: fitted exponent %s (bound %s), bound constant %s -> %s\n",
        short_num(c.alpha).c_str(), short_num(c.fit_full.exponent).c_str(),
        short_num(c.theoretical).c_str(), short_num(c.fit_half.bound_sup).c_str(),
        short_num(c.fit_full.bound_sup).c_str());

    table.rows.push_back(
        {c.alpha, c.theoretical, c.fit_full.exponent, c.fit_full.bound_sup});
    const std::string stem = "trajectory_" + tag;
    write_trajectory_csv(out_path(opt, stem + ".csv"), *c.traj);
    write_text(out_path(opt, stem + ".gp"),
               gnuplot_norm_script(stem + ".csv",
                                   {{2, "L1"}, {3, "L2"}, {4, "sup"}},
                                   "perturbation decay, alpha = " +
                                       short_num(c.alpha)));
  }

  write_csv(out_path(opt, "decay_table.csv"), table);
  return finish(opt, rep, "decay_report.json");
}

}  // namespace rfwave::cli
