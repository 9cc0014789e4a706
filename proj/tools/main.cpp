#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "csv.hpp"
#include "run_config.hpp"
#include "vlock.h"

namespace {

const char* kToleranceNames[] = {
    "root_residual", "imag_residue",   "coeff_cross", "fixed_point",
    "bisection",     "degenerate_gap", "pair_match",  "root_match",
    "inside_slack",  "spectrum_unit",  "zeta_identity",
};

const char* kKnownKeys[] = {
    "r", "m", "c", "p", "q", "out", "threads",
    "sim.lattice_size", "sim.transient_generations", "sim.measure_generations",
    "sim.capacity_seed_width", "sim.shift_trigger_site",
    "staircase.m_min", "staircase.m_max", "staircase.m_count",
    "regions.q_max", "regions.m_count",
    "compare.m_lo", "compare.m_hi", "compare.m_count",
    "compare.c_lo", "compare.c_hi", "compare.c_count", "compare.tol",
    "slin.gamma_count", "slin.m_lo", "slin.m_hi", "slin.m_count",
    "spectrum.gamma_bar", "spectrum.k_count",
    "widths.m_lo", "widths.m_hi", "widths.points",
};

int run(int argc, char** argv) {
  CLI::App app{"locked invasion fronts: speed sweeps, locking regions, "
               "front profiles, spectra"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_cli;
  int threads_cli = 0;
  double r = 0.0, m = 0.0, c = 0.0;
  int p = 0, q = 0;
  auto* opt_config =
      app.add_option("--config", config_path, "key = value configuration file");
  auto* opt_out =
      app.add_option("--out", out_cli, "output directory (default: current)");
  auto* opt_threads = app.add_option(
      "--threads", threads_cli,
      "worker threads (default: VLOCK_THREADS, then the hardware count)");
  auto* opt_r = app.add_option("--r", r, "growth factor");
  auto* opt_m = app.add_option("--m", m, "migration rate");
  auto* opt_c = app.add_option("--c", c, "critical density");
  auto* opt_p = app.add_option("--p", p, "speed numerator");
  auto* opt_q = app.add_option("--q", q, "speed denominator");

  const int n_tol = static_cast<int>(std::size(kToleranceNames));
  std::vector<double> tol_values(n_tol, 0.0);
  std::vector<CLI::Option*> tol_options(n_tol);
  for (int i = 0; i < n_tol; ++i) {
    const std::string name = kToleranceNames[i];
    tol_options[i] = app.add_option("--tol-" + name, tol_values[i],
                                    "override the " + name + " tolerance");
  }

  auto* sc_staircase = app.add_subcommand(
      "staircase", "measured invasion speed over a migration sweep");
  auto* sc_regions = app.add_subcommand(
      "regions", "locking bands for every coprime speed up to a denominator cap");
  auto* sc_compare = app.add_subcommand(
      "compare", "simulated locking against the theoretical band on an (m, c) grid");
  auto* sc_front =
      app.add_subcommand("front", "locked front profile and construction report");
  auto* sc_slin = app.add_subcommand(
      "slin", "envelope speed curve and the linear spreading speed");
  auto* sc_spectrum =
      app.add_subcommand("spectrum", "weighted linearization spectrum curve");
  auto* sc_widths = app.add_subcommand(
      "widths", "locking band width scaling in the small-migration limit");
  for (CLI::App* sub : {sc_staircase, sc_regions, sc_compare, sc_front,
                        sc_slin, sc_spectrum, sc_widths}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    tool::RunConfig cfg;
    if (opt_config->count()) cfg.load_file(config_path);
    if (opt_r->count()) cfg.set("r", tool::num(r));
    if (opt_m->count()) cfg.set("m", tool::num(m));
    if (opt_c->count()) cfg.set("c", tool::num(c));
    if (opt_p->count()) cfg.set("p", tool::num(p));
    if (opt_q->count()) cfg.set("q", tool::num(q));
    if (opt_threads->count()) cfg.set("threads", tool::num(threads_cli));
    for (int i = 0; i < n_tol; ++i) {
      if (tol_options[i]->count()) {
        cfg.set(std::string("tol.") + kToleranceNames[i],
                tool::num(tol_values[i]));
      }
    }

    std::set<std::string> known(std::begin(kKnownKeys), std::end(kKnownKeys));
    for (const char* name : kToleranceNames) {
      known.insert(std::string("tol.") + name);
    }
    for (const std::string& key : cfg.keys()) {
      if (!known.count(key)) {
        throw std::runtime_error("unknown config key " + key);
      }
    }

    for (const char* name : kToleranceNames) {
      const std::string key = std::string("tol.") + name;
      if (cfg.has(key)) {
        const double value = cfg.get_double(key, 0.0);
        if (vlock_set_tolerance(name, value) != VLOCK_OK) {
          throw std::runtime_error(vlock_last_error());
        }
      }
    }
    for (const char* name : kToleranceNames) {
      double value = 0.0;
      vlock_get_tolerance(name, &value);
      cfg.note(std::string("tol.") + name, value);
    }

    std::string out_dir = ".";
    if (opt_out->count()) {
      out_dir = out_cli;
    } else if (cfg.has("out")) {
      out_dir = cfg.get_string("out", ".", false);
    }
    const int threads =
        tool::resolve_threads(cfg.get_int("threads", 0, false));

    if (sc_staircase->parsed()) {
      tool::cmd_staircase(cfg, out_dir, threads);
    } else if (sc_regions->parsed()) {
      tool::cmd_regions(cfg, out_dir, threads);
    } else if (sc_compare->parsed()) {
      tool::cmd_compare(cfg, out_dir, threads);
    } else if (sc_front->parsed()) {
      tool::cmd_front(cfg, out_dir);
    } else if (sc_slin->parsed()) {
      tool::cmd_slin(cfg, out_dir);
    } else if (sc_spectrum->parsed()) {
      tool::cmd_spectrum(cfg, out_dir);
    } else if (sc_widths->parsed()) {
      tool::cmd_widths(cfg, out_dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
