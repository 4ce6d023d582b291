///
/// evolve: perturbation runs around a traveling-wave profile with
/// structural stability checks.
///
/// Pipeline per amplitude: build the perturbed datum u0 = ubar + delta,
/// select the zero-mass shift, translate the profile, take the
/// anti-derivative, and integrate the W-form.  Asserted per completed run:
/// the maximum principle, L1 non-increase against the initial datum, the
/// sup bound |W(t)| <= |U0|_L1, small-data H1 monotonicity, and boundary
/// headroom.  Consecutive amplitude pairs are checked for pairwise L1
/// contraction of the full fields.
///
/// A run that blows up is reported as a failed run row (nonzero exit) and
/// the empirical stability boundary is printed; larger amplitudes still
/// run, so an upward sweep maps the boundary in one invocation.
///

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "commands.hpp"
#include "rfwave/csvio.hpp"
#include "rfwave/evolution.hpp"
#include "rfwave/fourier.hpp"

namespace rfwave::cli {

namespace {

/// Advective CFL step shared across sweep runs: 0.5 dx / max |f'| over the
/// union of the data ranges widened by 5% (the engine's own default recipe,
/// applied jointly so every run lands on identical snapshot times).
double shared_cfl_dt(const Profile& pr, const std::vector<GridFunction>& data) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const GridFunction& u0 : data)
    for (double v : u0.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  double slope = 1e-12;
  for (int i = 0; i <= 128; ++i)
    slope = std::max(slope, std::abs(pr.flux.fp(lo + (hi - lo) * i / 128.0)));
  return 0.5 * pr.grid.dx / slope;
}

struct Run {
  double amplitude = 0.0;
  Profile pr;           ///< profile translated to the zero-mass shift
  GridFunction u0;      ///< full initial datum on the original frame
  std::optional<Trajectory> traj;  ///< empty when the run blew up
  std::string failure;
};

/// max over snapshots of the escape beyond the initial range of u.
double max_principle_violation(const Run& run) {
  double lo0 = std::numeric_limits<double>::infinity(), hi0 = -lo0;
  for (double v : run.u0.values) {
    lo0 = std::min(lo0, v);
    hi0 = std::max(hi0, v);
  }
  double viol = 0.0;
  for (const Snapshot& s : run.traj->snaps)
    for (int i = 0; i < run.pr.grid.N; ++i) {
      const double u = run.pr.ubar[i] + s.U[i];
      viol = std::max(viol, std::max(u - hi0, lo0 - u));
    }
  return viol;
}

}  // namespace

int cmd_evolve(Config& cfg, const CliOptions& opt) {
  const RieszFellerParams params = params_from(cfg);
  if (!params.solver_admissible())
    throw std::invalid_argument("[params] evolution requires alpha > 1");
  const FluxFunction flux = flux_from(cfg);
  const WaveData wave = wave_from(cfg, flux);
  const Grid grid = grid_from(cfg, 200.0, 4096);
  const PerturbationSpec spec = perturbation_from(cfg);

  EvolutionConfig evcfg;
  const std::string scheme = cfg.get_string("evolution", "scheme", "etd2rk");
  if (scheme == "etd1") evcfg.scheme = Scheme::ETD1;
  else if (scheme == "etd2rk") evcfg.scheme = Scheme::ETD2RK;
  else throw std::invalid_argument("[evolution] scheme must be etd1 | etd2rk");
  evcfg.dt = cfg.get_double("evolution", "dt", 0.0);
  evcfg.T = cfg.get_double("evolution", "T", 50.0);
  evcfg.record_every = static_cast<int>(cfg.get_int("evolution", "record_every", 100));
  const bool write_fields = cfg.get_int("evolution", "write_fields", 0) != 0;
  evcfg.validate();

  const double small_data_delta = cfg.get_double("checks", "small_data_delta", 0.05);
  const double max_principle_tol = cfg.get_double("checks", "max_principle_tol", 1e-6);
  const double contraction_tol = cfg.get_double("checks", "contraction_tol", 1e-6);
  const double h1_tol = cfg.get_double("checks", "h1_tol", 1e-8);
  const double linf_bound_tol = cfg.get_double("checks", "linf_bound_tol", 1e-9);

  const Profile base = profile_from(cfg, params, flux, wave, grid, opt.verbose);
  // re-read (already consumed by profile_from): recentering per amplitude
  // re-solves the profile at the mass-matched center with the same budget.
  const double recenter_budget = cfg.get_double("profile", "t_relax", 600.0);
  const double recenter_tol = cfg.get_double("profile", "tol", 3e-7);
  cfg.require_all_consumed();

  // initial data for every amplitude up front (shared CFL needs the union)
  std::vector<GridFunction> data;
  for (double a : spec.amplitudes) {
    GridFunction u0 = base.ubar;
    const GridFunction delta = build_perturbation(spec, a, grid);
    for (int i = 0; i < grid.N; ++i) u0[i] += delta[i];
    data.push_back(std::move(u0));
  }
  if (evcfg.dt <= 0.0 && data.size() > 1) evcfg.dt = shared_cfl_dt(base, data);

  Report rep;
  rep.config_hash = cfg.hash_hex();

  std::vector<Run> runs(data.size());
  double largest_stable = std::numeric_limits<double>::quiet_NaN();
  double smallest_unstable = std::numeric_limits<double>::quiet_NaN();

  for (std::size_t r = 0; r < data.size(); ++r) {
    Run& run = runs[r];
    run.amplitude = spec.amplitudes[r];
    run.u0 = data[r];
    const std::string tag = "run" + std::to_string(r);

    const double x0 = select_shift(run.u0, base);

    try {
      run.pr = recenter_profile(base, x0, recenter_budget, 0.0, recenter_tol);
      GridFunction U0(grid);
      for (int i = 0; i < grid.N; ++i) U0[i] = run.u0[i] - run.pr.ubar[i];

      if (opt.verbose)
        std::printf("%s: amplitude=%g shift=%g |U0|_L1=%g\n", tag.c_str(),
                    run.amplitude, x0, norm_l1(U0));

      const GridFunction W0 = antiderivative(U0);
      run.traj = evolve(run.pr, W0, evcfg);
    } catch (const std::runtime_error& ex) {
      run.failure = ex.what();  // blow-up: record, keep sweeping upward
    }

    if (!run.traj) {
      rep.add(tag + "_completed", false, 0.0, 1.0, 0.0);
      std::printf("note: %s (amplitude %g) did not complete: %s\n", tag.c_str(),
                  run.amplitude, run.failure.c_str());
      if (std::isnan(smallest_unstable))
        smallest_unstable = std::abs(run.amplitude);
      continue;
    }
    largest_stable = std::abs(run.amplitude);
    rep.add(tag + "_completed", true, 1.0, 1.0, 0.0);

    const Trajectory& traj = *run.traj;
    rep.add(tag + "_max_principle",
            max_principle_violation(run) <= max_principle_tol,
            max_principle_violation(run), 0.0, max_principle_tol);

    // L1 non-increase against the initial perturbation mass
    double l1_growth = -std::numeric_limits<double>::infinity();
    for (const Snapshot& s : traj.snaps)
      l1_growth = std::max(l1_growth, s.rec.l1_U - traj.snaps.front().rec.l1_U);
    rep.add(tag + "_l1_nonincrease", l1_growth <= contraction_tol, l1_growth,
            0.0, contraction_tol);

    // |W(t)|_Linf <= |U0|_L1 (anti-derivative sup bound)
    const double u0_l1 = traj.snaps.front().rec.l1_U;
    double linf_excess = -std::numeric_limits<double>::infinity();
    for (const Snapshot& s : traj.snaps)
      linf_excess = std::max(linf_excess, s.rec.linf_W - u0_l1);
    rep.add(tag + "_w_sup_bound", linf_excess <= linf_bound_tol, linf_excess,
            0.0, linf_bound_tol);

    // small-data H1 monotonicity, per consecutive snapshot pair
    if (std::abs(run.amplitude) <= small_data_delta * (wave.u_minus - wave.u_plus)) {
      double h1_growth = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 1; j < traj.snaps.size(); ++j)
        h1_growth = std::max(
            h1_growth, traj.snaps[j].rec.h1_W - traj.snaps[j - 1].rec.h1_W);
      rep.add(tag + "_h1_monotone", h1_growth <= h1_tol, h1_growth, 0.0, h1_tol);
    }

    rep.add(tag + "_boundary_headroom", !traj.boundary_flagged,
            traj.boundary_max, 0.0, 1e-8);

    // artifacts
    const std::string csv = "trajectory_" + tag + ".csv";
    write_trajectory_csv(out_path(opt, csv), traj);
    write_ledger_csv(out_path(opt, "ledger_" + tag + ".csv"),
                     energy_ledger(traj));
    write_text(out_path(opt, "trajectory_" + tag + ".gp"),
               gnuplot_norm_script(csv,
                                   {{2, "L1 of u - ubar"},
                                    {3, "L2 of u - ubar"},
                                    {4, "sup of u - ubar"},
                                    {5, "H1 of anti-derivative"}},
                                   "perturbation norms, " + tag));
    if (write_fields) {
      for (std::size_t j = 0; j < traj.snaps.size(); ++j) {
        CsvTable table;
        table.header = {"xi", "W", "U"};
        table.rows.reserve(grid.N);
        for (int i = 0; i < grid.N; ++i)
          table.rows.push_back(
              {grid.x(i), traj.snaps[j].W[i], traj.snaps[j].U[i]});
        write_csv(out_path(opt, "fields_" + tag + "_" + std::to_string(j) + ".csv"),
                  table);
      }
    }
  }

  // pairwise L1 contraction over consecutive completed runs
  for (std::size_t r = 0; r + 1 < runs.size(); ++r) {
    const Run& a = runs[r];
    const Run& b = runs[r + 1];
    if (!a.traj || !b.traj) continue;
    const std::size_t n = a.traj->snaps.size();
    if (b.traj->snaps.size() != n)
      throw std::logic_error("sweep runs recorded different snapshot counts");
    GridFunction diff(grid);
    double d0 = 0.0, growth = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      const Snapshot& sa = a.traj->snaps[j];
      const Snapshot& sb = b.traj->snaps[j];
      if (std::abs(sa.t - sb.t) > 1e-12)
        throw std::logic_error("sweep runs recorded mismatched snapshot times");
      for (int i = 0; i < grid.N; ++i)
        diff[i] = (a.pr.ubar[i] + sa.U[i]) - (b.pr.ubar[i] + sb.U[i]);
      const double d = norm_l1(diff);
      if (j == 0) d0 = d;
      else growth = std::max(growth, d - d0);
    }
    rep.add("l1_contraction_run" + std::to_string(r) + "_run" + std::to_string(r + 1),
            growth <= contraction_tol, growth, 0.0, contraction_tol);
  }

  if (!std::isnan(smallest_unstable))
    std::printf("empirical stability boundary: largest completed amplitude %s, "
                "smallest blown-up amplitude %s\n",
                std::isnan(largest_stable) ? "none" : short_num(largest_stable).c_str(),
                short_num(smallest_unstable).c_str());

  return finish(opt, rep, "evolve_report.json");
}

}  // namespace rfwave::cli
