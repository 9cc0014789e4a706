#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "csv.hpp"
#include "vlock.h"

namespace tool {

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

// Error text goes into CSV cells; keep it one field wide.
std::string sanitize(std::string text) {
  for (char& ch : text) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  }
  return text;
}

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error(what);
}

void check(int rc, const std::string& what) {
  if (rc != VLOCK_OK) fail(what + ": " + vlock_last_error());
}

// An invalid-argument result from inside a sweep means the run
// configuration itself is bad, not that one grid point misbehaved.
void check_cells_valid(const std::vector<int>& codes,
                       const std::vector<std::string>& errors,
                       const std::string& command) {
  for (size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] == VLOCK_EINVAL) fail(command + ": " + errors[i]);
  }
}

void require_growth(double r) {
  double tmp = 0.0;
  check(vlock_envelope_speed(r, 0.5, 0.5, &tmp), "invalid growth factor");
}

void require_params(double r, double m, double c) {
  double tmp = 0.0;
  check(vlock_reproduction(r, c, 0.0, &tmp), "invalid (r, c)");
  check(vlock_envelope_speed(r, m, 0.5, &tmp), "invalid (r, m)");
}

std::string out_path(const std::string& out_dir, const std::string& name) {
  std::filesystem::create_directories(out_dir);
  return (std::filesystem::path(out_dir) / name).string();
}

void preamble(CsvWriter& w, const std::string& command, const RunConfig& cfg) {
  w.comment(std::string(vlock_version()) + " " + command);
  for (const std::string& line : cfg.resolved_lines()) w.comment(line);
}

vlock_sim_config read_sim(RunConfig& cfg) {
  vlock_sim_config sim;
  vlock_sim_config_default(&sim);
  sim.lattice_size = cfg.get_int("sim.lattice_size", sim.lattice_size);
  sim.transient_generations =
      cfg.get_int("sim.transient_generations", sim.transient_generations);
  sim.measure_generations =
      cfg.get_int("sim.measure_generations", sim.measure_generations);
  sim.capacity_seed_width =
      cfg.get_int("sim.capacity_seed_width", sim.capacity_seed_width);
  sim.shift_trigger_site =
      cfg.get_int("sim.shift_trigger_site", sim.shift_trigger_site);
  return sim;
}

std::string cnum(double re, double im) {
  return "(" + num(re) + ", " + num(im) + ")";
}

}  // namespace

int resolve_threads(int requested) {
  int t = requested;
  if (t <= 0) {
    if (const char* env = std::getenv("VLOCK_THREADS")) t = std::atoi(env);
  }
  if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
  return t < 1 ? 1 : t;
}

void cmd_staircase(RunConfig& cfg, const std::string& out_dir, int threads) {
  const double r = cfg.get_double("r", 1.2);
  const double c = cfg.get_double("c", 0.4);
  const double m_min = cfg.get_double("staircase.m_min", 0.01);
  const double m_max = cfg.get_double("staircase.m_max", 0.99);
  const int count = cfg.get_int("staircase.m_count", 200);
  const vlock_sim_config sim = read_sim(cfg);
  if (count < 1) fail("staircase.m_count must be at least 1");
  if (!(0.0 < m_min && m_min <= m_max && m_max < 1.0)) {
    fail("staircase m range must lie inside (0, 1)");
  }
  require_params(r, m_min, c);

  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) {
    grid[i] = count == 1 ? m_min : m_min + (m_max - m_min) * i / (count - 1);
  }

  std::vector<int> codes(count, VLOCK_OK);
  std::vector<double> speeds(count, 0.0);
  std::vector<std::string> errors(count);
  parallel_for(count, threads, [&](int i) {
    codes[i] =
        vlock_simulate_speed(r, grid[i], c, &sim, &speeds[i], nullptr, nullptr);
    if (codes[i] != VLOCK_OK) errors[i] = sanitize(vlock_last_error());
  });
  check_cells_valid(codes, errors, "staircase");

  const std::string path = out_path(out_dir, "staircase.csv");
  CsvWriter w(path);
  preamble(w, "staircase", cfg);
  w.columns({"m", "measured_speed", "error"});
  int failed = 0;
  for (int i = 0; i < count; ++i) {
    if (codes[i] == VLOCK_OK) {
      w.row({num(grid[i]), num(speeds[i]), ""});
    } else {
      ++failed;
      w.row({num(grid[i]), "", errors[i]});
    }
  }
  w.close();
  if (failed) {
    std::cerr << "staircase: " << failed << " of " << count
              << " points failed\n";
  }
  std::cout << "staircase: wrote " << count << " points to " << path << "\n";
}

namespace {

struct SpeedPair {
  int p;
  int q;
};

// Coprime p/q in (0, 1) with q <= q_max, ascending (the mediant walk from
// 0/1 toward 1/1); ascending order doubles as the deterministic file order.
std::vector<SpeedPair> farey_speeds(int q_max) {
  std::vector<SpeedPair> seq;
  int a = 0, b = 1, c = 1, d = q_max;
  while (c != 1 || d != 1) {
    seq.push_back({c, d});
    const int k = (q_max + b) / d;
    const int e = k * c - a;
    const int f = k * d - b;
    a = c;
    b = d;
    c = e;
    d = f;
  }
  return seq;
}

}  // namespace

void cmd_regions(RunConfig& cfg, const std::string& out_dir, int threads) {
  const double r = cfg.get_double("r", 1.2);
  const int q_max = cfg.get_int("regions.q_max", 8);
  const int m_count = cfg.get_int("regions.m_count", 40);
  if (q_max < 2) fail("regions.q_max must be at least 2");
  if (m_count < 2) fail("regions.m_count must be at least 2");
  require_growth(r);

  const std::vector<SpeedPair> bands = farey_speeds(q_max);
  const int n = static_cast<int>(bands.size());
  std::vector<vlock_band*> handles(n, nullptr);
  std::vector<std::string> errors(n);
  parallel_for(n, threads, [&](int i) {
    const int rc =
        vlock_band_sweep(r, bands[i].p, bands[i].q, m_count, &handles[i]);
    if (rc != VLOCK_OK) errors[i] = sanitize(vlock_last_error());
  });

  int written = 0;
  for (int i = 0; i < n; ++i) {
    const std::string label =
        std::to_string(bands[i].p) + "/" + std::to_string(bands[i].q);
    if (!handles[i]) {
      std::cerr << "regions: band " << label << " failed: " << errors[i]
                << "\n";
      continue;
    }
    const std::string name = "band_" + std::to_string(bands[i].p) + "_" +
                             std::to_string(bands[i].q) + ".csv";
    CsvWriter w(out_path(out_dir, name));
    preamble(w, "regions", cfg);
    w.comment("speed = " + label);
    double m_star = 0.0;
    int saturated = 0;
    vlock_band_tip(handles[i], &m_star, &saturated);
    w.comment("m_star = " + num(m_star));
    w.comment("saturated = " + num(saturated));
    w.columns({"m", "c_min", "c_max", "flags"});
    int size = 0;
    vlock_band_size(handles[i], &size);
    for (int j = 0; j < size; ++j) {
      double m = 0.0, c_min = 0.0, c_max = 0.0;
      int flags = 0;
      vlock_band_point(handles[i], j, &m, &c_min, &c_max, &flags);
      w.row({num(m), num(c_min), num(c_max), num(flags)});
    }
    w.close();
    vlock_band_free(handles[i]);
    ++written;
  }
  std::cout << "regions: wrote " << written << " of " << n
            << " band files to " << out_dir << "\n";
}

void cmd_compare(RunConfig& cfg, const std::string& out_dir, int threads) {
  const double r = cfg.get_double("r", 1.3);
  const int p = cfg.get_int("p", 1);
  const int q = cfg.get_int("q", 3);
  double m_star = 0.0;
  int saturated = 0;
  check(vlock_m_star(r, p, q, &m_star, &saturated), "compare");

  // The default grid spans the band with a half-width margin on each axis.
  double c_hi_default = 0.0;
  if (!cfg.has("compare.c_hi")) {
    double tip_min = 0.0, tip_max = 0.0;
    check(vlock_c_bounds(r, 0.999 * m_star, p, q, &tip_min, &tip_max),
          "compare: band near the tip");
    c_hi_default = std::fmin(1.5 * tip_max, 1.0 / r);
  }
  const double m_lo = cfg.get_double("compare.m_lo", 0.0);
  const double m_hi =
      cfg.get_double("compare.m_hi", std::fmin(1.5 * m_star, 0.9999));
  const double c_lo = cfg.get_double("compare.c_lo", 0.0);
  const double c_hi = cfg.get_double("compare.c_hi", c_hi_default);
  const int m_count = cfg.get_int("compare.m_count", 20);
  const int c_count = cfg.get_int("compare.c_count", 20);
  const double tol = cfg.get_double("compare.tol", 0.0);
  const vlock_sim_config sim = read_sim(cfg);
  if (m_count < 1 || c_count < 1) fail("compare grid counts must be positive");
  if (!(0.0 <= m_lo && m_lo < m_hi && m_hi <= 1.0)) {
    fail("compare m range must lie inside [0, 1]");
  }
  if (!(0.0 <= c_lo && c_lo < c_hi)) fail("compare c range is empty");
  require_growth(r);

  // Cells sit at bin centers, so open lower bounds are safe.
  const auto cell_m = [&](int i) {
    return m_lo + (i + 0.5) * (m_hi - m_lo) / m_count;
  };
  const auto cell_c = [&](int j) {
    return c_lo + (j + 0.5) * (c_hi - c_lo) / c_count;
  };

  const int n = m_count * c_count;
  std::vector<int> codes(n, VLOCK_OK);
  std::vector<double> speeds(n, 0.0);
  std::vector<int> locked(n, 0);
  std::vector<int> inside(n, 0);
  std::vector<std::string> errors(n);
  parallel_for(n, threads, [&](int idx) {
    const double m = cell_m(idx / c_count);
    const double c = cell_c(idx % c_count);
    codes[idx] =
        vlock_simulate_speed(r, m, c, &sim, &speeds[idx], nullptr, nullptr);
    if (codes[idx] == VLOCK_OK) {
      codes[idx] = vlock_classify_speed(speeds[idx], p, q, tol,
                                        sim.measure_generations, &locked[idx]);
    }
    if (codes[idx] != VLOCK_OK) {
      errors[idx] = sanitize(vlock_last_error());
      return;
    }
    double band_min = 0.0, band_max = 0.0;
    inside[idx] = vlock_c_bounds(r, m, p, q, &band_min, &band_max) ==
                      VLOCK_OK &&
                  band_min <= c && c <= band_max;
  });
  check_cells_valid(codes, errors, "compare");

  const std::string path = out_path(out_dir, "compare.csv");
  CsvWriter w(path);
  preamble(w, "compare", cfg);
  w.columns({"m", "c", "measured_speed", "locked", "theory_inside", "error"});
  int evaluated = 0;
  int agree = 0;
  for (int idx = 0; idx < n; ++idx) {
    const std::string m = num(cell_m(idx / c_count));
    const std::string c = num(cell_c(idx % c_count));
    if (codes[idx] == VLOCK_OK) {
      ++evaluated;
      agree += locked[idx] == inside[idx];
      w.row({m, c, num(speeds[idx]), num(locked[idx]), num(inside[idx]), ""});
    } else {
      w.row({m, c, "", "", num(inside[idx]), errors[idx]});
    }
  }
  w.comment("cells = " + num(n));
  w.comment("evaluated = " + num(evaluated));
  w.comment("agree = " + num(agree));
  w.comment("agreement = " +
            num(evaluated ? static_cast<double>(agree) / evaluated : 0.0));
  w.close();
  if (evaluated < n) {
    std::cerr << "compare: " << n - evaluated << " of " << n
              << " cells failed\n";
  }
  std::cout << "compare: agreement " << agree << "/" << evaluated
            << ", wrote " << path << "\n";
}

void cmd_front(RunConfig& cfg, const std::string& out_dir) {
  const double r = cfg.get_double("r", 1.3);
  const int p = cfg.get_int("p", 1);
  const int q = cfg.get_int("q", 3);
  double m = 0.0;
  if (cfg.has("m")) {
    m = cfg.get_double("m", 0.0);
  } else {
    double m_star = 0.0;
    int saturated = 0;
    check(vlock_m_star(r, p, q, &m_star, &saturated), "front");
    m = 0.5 * m_star;
    cfg.note("m", m);
  }
  double c = 0.0;
  if (cfg.has("c")) {
    c = cfg.get_double("c", 0.0);
  } else {
    double band_min = 0.0, band_max = 0.0;
    check(vlock_c_bounds(r, m, p, q, &band_min, &band_max), "front");
    c = 0.5 * (band_min + band_max);
    cfg.note("c", c);
  }

  vlock_front* front = nullptr;
  check(vlock_front_build(r, m, c, p, q, &front), "front");
  struct Guard {
    vlock_front* f;
    ~Guard() { vlock_front_free(f); }
  } guard{front};

  int n = 0;
  vlock_front_count(front, &n);
  std::vector<double> g_re(n), g_im(n), z_re(n), z_im(n), k_re(n), k_im(n);
  vlock_front_data(front, g_re.data(), g_im.data(), z_re.data(), z_im.data(),
                   k_re.data(), k_im.data());
  int left = 0, right = 0;
  vlock_front_window(front, &left, &right);
  double residual = 0.0;
  vlock_front_residual(front, &residual);
  int certified = 0, i_star = 0, window_positive = 0;
  vlock_front_positivity(front, &certified, &i_star, &window_positive);
  int ell1 = 0, ell2 = 0;
  vlock_front_diophantine(front, &ell1, &ell2);
  double deviation = 0.0, condition = 0.0;
  vlock_front_coeff_deviation(front, &deviation);
  vlock_front_condition(front, &condition);
  double gamma_s = 0.0, gamma_w = 0.0;
  check(vlock_decay_rates(r, m, p, q, &gamma_s, &gamma_w), "front");
  double margin = 0.0, gamma_bar = 0.0;
  check(vlock_stability_margin(r, m, p, q, &margin, &gamma_bar), "front");

  const std::string profile_path = out_path(out_dir, "profile.csv");
  CsvWriter w(profile_path);
  preamble(w, "front", cfg);
  w.columns({"i", "phi"});
  for (int i = -left; i <= right; ++i) {
    double value = 0.0;
    check(vlock_front_profile(front, i, &value), "front profile");
    w.row({num(i), num(value)});
  }
  w.close();

  const std::string report_path = out_path(out_dir, "front_report.txt");
  std::ofstream report(report_path, std::ios::binary);
  if (!report) fail("cannot open " + report_path + " for writing");
  const auto out = [&report](const std::string& text) {
    report << text << '\n';
  };
  out("# " + std::string(vlock_version()) + " front");
  for (const std::string& line : cfg.resolved_lines()) out("# " + line);
  out("roots = " + num(n));
  out("ell1 = " + num(ell1));
  out("ell2 = " + num(ell2));
  double k_sum_re = 0.0, k_sum_im = 0.0;
  for (int j = 0; j < n; ++j) {
    const std::string tag = "_" + std::to_string(j + 1);
    out("gamma" + tag + " = " + cnum(g_re[j], g_im[j]));
    out("zeta" + tag + " = " + cnum(z_re[j], z_im[j]));
    out("k" + tag + " = " + cnum(k_re[j], k_im[j]));
    k_sum_re += k_re[j];
    k_sum_im += k_im[j];
  }
  out("k_sum = " + cnum(k_sum_re, k_sum_im));
  out("coeff_deviation = " + num(deviation));
  out("condition = " + num(condition));
  for (int j = 1; j <= 2 * q; ++j) {
    double value = 0.0;
    check(vlock_front_gamma_sum(front, j, &value), "front report");
    out("Gamma_" + std::to_string(j) + " = " + num(value));
  }
  out("residual = " + num(residual));
  out("positivity_certified = " + num(certified));
  out("i_star = " + num(i_star));
  out("window_positive = " + num(window_positive));
  out("window = [" + num(-left) + ", " + num(right) + "]");
  out("gamma_s = " + num(gamma_s));
  out("gamma_w = " + num(gamma_w));
  out("weight = " + num(gamma_bar));
  out("stability_margin = " + num(margin));
  report.close();
  if (report.fail()) fail("write failed: " + report_path);

  std::cout << "front: residual " << residual << ", positivity "
            << (certified ? "certified" : "window-checked") << ", wrote "
            << profile_path << " and " << report_path << "\n";
}

void cmd_slin(RunConfig& cfg, const std::string& out_dir) {
  const double r = cfg.get_double("r", 1.1);
  const double m = cfg.get_double("m", 0.1);
  const int gamma_count = cfg.get_int("slin.gamma_count", 400);
  const double m_lo = cfg.get_double("slin.m_lo", 0.01);
  const double m_hi = cfg.get_double("slin.m_hi", 0.99);
  const int m_count = cfg.get_int("slin.m_count", 50);
  if (gamma_count < 1) fail("slin.gamma_count must be at least 1");
  if (m_count < 2) fail("slin.m_count must be at least 2");
  if (!(0.0 < m_lo && m_lo < m_hi && m_hi < 1.0)) {
    fail("slin m range must lie inside (0, 1)");
  }
  double tmp = 0.0;
  check(vlock_envelope_speed(r, m, 0.5, &tmp), "invalid (r, m)");

  double s_lin = 0.0, gamma_lin = 0.0;
  check(vlock_linear_spreading_speed(r, m, &s_lin, &gamma_lin), "slin");

  const std::string curve_path = out_path(out_dir, "slin_curve.csv");
  CsvWriter curve(curve_path);
  preamble(curve, "slin", cfg);
  curve.comment("gamma_lin = " + num(gamma_lin));
  curve.comment("s_lin = " + num(s_lin));
  curve.columns({"gamma", "s_env"});
  for (int i = 0; i < gamma_count; ++i) {
    const double gamma = static_cast<double>(i + 1) / (gamma_count + 1);
    double s_env = 0.0;
    check(vlock_envelope_speed(r, m, gamma, &s_env), "slin curve");
    curve.row({num(gamma), num(s_env)});
  }
  curve.close();

  const std::string sweep_path = out_path(out_dir, "slin_vs_m.csv");
  CsvWriter sweep(sweep_path);
  preamble(sweep, "slin", cfg);
  sweep.columns({"m", "s_lin"});
  for (int i = 0; i < m_count; ++i) {
    const double mi = m_lo + (m_hi - m_lo) * i / (m_count - 1);
    double value = 0.0, at = 0.0;
    check(vlock_linear_spreading_speed(r, mi, &value, &at), "slin sweep");
    sweep.row({num(mi), num(value)});
  }
  sweep.close();

  std::cout << "slin: s_lin " << s_lin << " at gamma_lin " << gamma_lin
            << ", wrote " << curve_path << " and " << sweep_path << "\n";
}

void cmd_spectrum(RunConfig& cfg, const std::string& out_dir) {
  const double r = cfg.get_double("r", 1.3);
  const int p = cfg.get_int("p", 1);
  const int q = cfg.get_int("q", 3);
  double m = 0.0;
  if (cfg.has("m")) {
    m = cfg.get_double("m", 0.0);
  } else {
    double m_star = 0.0;
    int saturated = 0;
    check(vlock_m_star(r, p, q, &m_star, &saturated), "spectrum");
    m = 0.5 * m_star;
    cfg.note("m", m);
  }
  const int k_count = cfg.get_int("spectrum.k_count", 256);
  if (k_count < 1) fail("spectrum.k_count must be at least 1");

  double gamma_s = 0.0, gamma_w = 0.0;
  check(vlock_decay_rates(r, m, p, q, &gamma_s, &gamma_w), "spectrum");
  double gamma_bar = 0.0;
  if (cfg.has("spectrum.gamma_bar")) {
    gamma_bar = cfg.get_double("spectrum.gamma_bar", 0.0);
  } else {
    double margin = 0.0;
    check(vlock_stability_margin(r, m, p, q, &margin, &gamma_bar), "spectrum");
    cfg.note("spectrum.gamma_bar", gamma_bar);
  }
  double lambda_max = 0.0;
  check(vlock_lambda_max(r, m, p, q, gamma_bar, &lambda_max), "spectrum");

  const std::string path = out_path(out_dir, "spectrum.csv");
  CsvWriter w(path);
  preamble(w, "spectrum", cfg);
  w.comment("gamma_s = " + num(gamma_s));
  w.comment("gamma_w = " + num(gamma_w));
  w.comment("lambda_max = " + num(lambda_max));
  w.columns({"k", "lambda_re", "lambda_im"});
  for (int j = 0; j < k_count; ++j) {
    const double k = 2.0 * M_PI * j / k_count;
    double re = 0.0, im = 0.0;
    check(vlock_spectrum_value(r, m, p, q, gamma_bar, k, &re, &im),
          "spectrum curve");
    w.row({num(k), num(re), num(im)});
  }
  w.close();

  std::cout << "spectrum: lambda_max " << lambda_max << " at weight "
            << gamma_bar << ", wrote " << path << "\n";
}

void cmd_widths(RunConfig& cfg, const std::string& out_dir) {
  const double r = cfg.get_double("r", 1.2);
  const int p = cfg.get_int("p", 1);
  const int q = cfg.get_int("q", 3);
  const double m_lo = cfg.get_double("widths.m_lo", 1e-4);
  const double m_hi = cfg.get_double("widths.m_hi", 1e-2);
  const int points = cfg.get_int("widths.points", 9);
  if (points < 2) fail("widths.points must be at least 2");
  if (!(0.0 < m_lo && m_lo < m_hi && m_hi < 1.0)) {
    fail("widths m range must lie inside (0, 1)");
  }

  double exponent = 0.0;
  check(vlock_width_scaling_exponent(r, p, q, m_lo, m_hi, points, &exponent),
        "widths");

  const std::string path = out_path(out_dir, "widths.csv");
  CsvWriter w(path);
  preamble(w, "widths", cfg);
  w.comment("exponent = " + num(exponent));
  w.columns({"m", "c_min", "c_max", "width", "error"});
  const double ratio = m_hi / m_lo;
  for (int i = 0; i < points; ++i) {
    const double m =
        m_lo * std::pow(ratio, static_cast<double>(i) / (points - 1));
    double c_min = 0.0, c_max = 0.0;
    const int rc = vlock_c_bounds(r, m, p, q, &c_min, &c_max);
    if (rc == VLOCK_OK) {
      w.row({num(m), num(c_min), num(c_max), num(c_max - c_min), ""});
    } else {
      w.row({num(m), "", "", "", sanitize(vlock_last_error())});
    }
  }
  w.close();

  std::cout << "widths: exponent " << exponent << " for " << p << "/" << q
            << ", wrote " << path << "\n";
}

}  // namespace tool
