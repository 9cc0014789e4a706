#include <cmath>
#include <complex>
#include <cstring>
#include <string>
#include <vector>

#include "front_builder.hpp"
#include "lattice_sim.hpp"
#include "linear_analysis.hpp"
#include "locking_regions.hpp"
#include "model.hpp"
#include "root_engine.hpp"
#include "spectral.hpp"
#include "types.hpp"
#include "vlock.h"

struct vlock_front {
  vlock::Front impl;
};

struct vlock_band {
  vlock::LockingBand impl;
};

struct vlock_spectrum {
  std::vector<vlock::SpectrumSample> impl;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& what) {
  g_last_error = what;
  return code;
}

template <typename F>
int guarded(F&& f) {
  try {
    f();
    return VLOCK_OK;
  } catch (const vlock::Error& e) {
    return fail(e.code, e.what());
  } catch (const std::exception& e) {
    return fail(VLOCK_EINTERNAL, e.what());
  } catch (...) {
    return fail(VLOCK_EINTERNAL, "unknown failure");
  }
}

int require_out(const void* p, const char* name) {
  if (p) return VLOCK_OK;
  return fail(VLOCK_EINVAL, std::string("null out-pointer: ") + name);
}

void split(const std::vector<vlock::Complex>& src, double* re, double* im) {
  for (size_t i = 0; i < src.size(); ++i) {
    if (re) re[i] = src[i].real();
    if (im) im[i] = src[i].imag();
  }
}

}  // namespace

extern "C" {

const char* vlock_last_error(void) { return g_last_error.c_str(); }

const char* vlock_version(void) { return "vlock 1.0.0"; }

int vlock_set_tolerance(const char* name, double value) {
  if (!name) return fail(VLOCK_EINVAL, "null tolerance name");
  return guarded([&] {
    if (!vlock::set_tolerance(name, value)) {
      throw vlock::Error(vlock::kInvalid,
                         std::string("unknown tolerance ") + name);
    }
  });
}

int vlock_get_tolerance(const char* name, double* value) {
  if (!name) return fail(VLOCK_EINVAL, "null tolerance name");
  if (int rc = require_out(value, "value")) return rc;
  return guarded([&] { *value = vlock::get_tolerance(name); });
}

int vlock_reproduction(double r, double c, double u, double* out) {
  if (int rc = require_out(out, "out")) return rc;
  return guarded([&] {
    vlock::Params pr{r, 0.5, c};
    vlock::validate_params(pr);
    *out = vlock::reproduction(u, pr);
  });
}

int vlock_generation(double r, double m, double c, const double* u, int n,
                     double left, double right, double* out) {
  if (int rc = require_out(u, "u")) return rc;
  if (int rc = require_out(out, "out")) return rc;
  return guarded([&] {
    if (n < 1) throw vlock::Error(vlock::kInvalid, "window must be nonempty");
    vlock::Params pr{r, m, c};
    vlock::validate_params(pr);
    vlock::generation_into(u, out, n, pr, left, right);
  });
}

int vlock_envelope_speed(double r, double m, double gamma, double* s_env) {
  if (int rc = require_out(s_env, "s_env")) return rc;
  return guarded([&] {
    vlock::Params pr{r, m, std::fmin(1.0, 1.0 / r)};
    vlock::validate_params(pr);
    *s_env = vlock::envelope_speed(gamma, pr);
  });
}

int vlock_linear_spreading_speed(double r, double m, double* s_lin,
                                 double* gamma_lin) {
  if (int rc = require_out(s_lin, "s_lin")) return rc;
  return guarded([&] {
    vlock::Params pr{r, m, std::fmin(1.0, 1.0 / r)};
    vlock::validate_params(pr);
    const vlock::LinearSpreading lin = vlock::linear_spreading_speed(pr);
    *s_lin = lin.s_lin;
    if (gamma_lin) *gamma_lin = lin.gamma_lin;
  });
}

int vlock_decay_rates(double r, double m, int p, int q, double* gamma_s,
                      double* gamma_w) {
  if (int rc = require_out(gamma_s, "gamma_s")) return rc;
  if (int rc = require_out(gamma_w, "gamma_w")) return rc;
  return guarded([&] {
    vlock::Params pr{r, m, std::fmin(1.0, 1.0 / r)};
    vlock::validate_params(pr);
    const vlock::DecayPair rates =
        vlock::decay_rates_for_speed(pr, vlock::Speed{p, q});
    *gamma_s = rates.gamma_s;
    *gamma_w = rates.gamma_w;
  });
}

int vlock_m_star(double r, int p, int q, double* m_star, int* saturated) {
  if (int rc = require_out(m_star, "m_star")) return rc;
  return guarded([&] {
    bool sat = false;
    *m_star = vlock::m_star(r, vlock::Speed{p, q}, &sat);
    if (saturated) *saturated = sat ? 1 : 0;
  });
}

int vlock_char_roots(double r, double m, int p, int q, double lambda_re,
                     double lambda_im, double* roots_re, double* roots_im) {
  if (int rc = require_out(roots_re, "roots_re")) return rc;
  if (int rc = require_out(roots_im, "roots_im")) return rc;
  return guarded([&] {
    vlock::Params pr{r, m, std::fmin(1.0, 1.0 / r)};
    const std::vector<vlock::Complex> roots = vlock::char_roots(
        pr, vlock::Speed{p, q}, vlock::Complex{lambda_re, lambda_im});
    split(roots, roots_re, roots_im);
  });
}

int vlock_front_roots(double r, double m, int p, int q, double* gammas_re,
                      double* gammas_im, double* zetas_re, double* zetas_im,
                      int* ell1, int* ell2, double* gamma_s, double* gamma_w) {
  return guarded([&] {
    vlock::Params pr{r, m, std::fmin(1.0, 1.0 / r)};
    const vlock::FrontRoots roots =
        vlock::build_front_roots(pr, vlock::Speed{p, q});
    split(roots.gammas, gammas_re, gammas_im);
    split(roots.zetas, zetas_re, zetas_im);
    if (ell1) *ell1 = roots.ell1;
    if (ell2) *ell2 = roots.ell2;
    if (gamma_s) *gamma_s = roots.gamma_s;
    if (gamma_w) *gamma_w = roots.gamma_w;
  });
}

int vlock_front_build(double r, double m, double c, int p, int q,
                      vlock_front** out) {
  if (int rc = require_out(out, "out")) return rc;
  *out = nullptr;
  return guarded([&] {
    vlock::Params pr{r, m, c};
    auto handle = new vlock_front{vlock::build_front(pr, vlock::Speed{p, q})};
    *out = handle;
  });
}

void vlock_front_free(vlock_front* f) { delete f; }

int vlock_front_count(const vlock_front* f, int* n) {
  if (int rc = require_out(f, "front")) return rc;
  if (int rc = require_out(n, "n")) return rc;
  *n = static_cast<int>(f->impl.core.ks.size());
  return VLOCK_OK;
}

int vlock_front_data(const vlock_front* f, double* gammas_re,
                     double* gammas_im, double* zetas_re, double* zetas_im,
                     double* ks_re, double* ks_im) {
  if (int rc = require_out(f, "front")) return rc;
  split(f->impl.core.roots.gammas, gammas_re, gammas_im);
  split(f->impl.core.roots.zetas, zetas_re, zetas_im);
  split(f->impl.core.ks, ks_re, ks_im);
  return VLOCK_OK;
}

int vlock_front_coeffs_solve(const vlock_front* f, double* ks_re,
                             double* ks_im) {
  if (int rc = require_out(f, "front")) return rc;
  split(f->impl.core.ks_solve, ks_re, ks_im);
  return VLOCK_OK;
}

int vlock_front_coeff_deviation(const vlock_front* f, double* rel) {
  if (int rc = require_out(f, "front")) return rc;
  if (int rc = require_out(rel, "rel")) return rc;
  *rel = f->impl.core.coeff_deviation;
  return VLOCK_OK;
}

int vlock_front_condition(const vlock_front* f, double* cond) {
  if (int rc = require_out(f, "front")) return rc;
  if (int rc = require_out(cond, "cond")) return rc;
  *cond = f->impl.core.condition;
  return VLOCK_OK;
}

int vlock_front_gamma_sum(const vlock_front* f, int n, double* value) {
  if (int rc = require_out(f, "front")) return rc;
  if (int rc = require_out(value, "value")) return rc;
  return guarded([&] { *value = vlock::gamma_sum(f->impl.core, n); });
}

int vlock_front_profile(const vlock_front* f, int i, double* value) {
  if (int rc = require_out(f, "front")) return rc;
  if (int rc = require_out(value, "value")) return rc;
  return guarded([&] { *value = vlock::profile_value(f->impl.core, i); });
}

int vlock_front_window(const vlock_front* f, int* left, int* right) {
  if (int rc = require_out(f, "front")) return rc;
  if (left) *left = f->impl.left;
  if (right) *right = f->impl.right;
  return VLOCK_OK;
}

int vlock_front_residual(const vlock_front* f, double* sup) {
  if (int rc = require_out(f, "front")) return rc;
  if (int rc = require_out(sup, "sup")) return rc;
  *sup = f->impl.residual;
  return VLOCK_OK;
}

int vlock_front_positivity(const vlock_front* f, int* certified, int* i_star,
                           int* window_positive) {
  if (int rc = require_out(f, "front")) return rc;
  if (certified) *certified = f->impl.positivity.certified ? 1 : 0;
  if (i_star) *i_star = f->impl.positivity.i_star;
  if (window_positive) {
    *window_positive = f->impl.positivity.window_positive ? 1 : 0;
  }
  return VLOCK_OK;
}

int vlock_front_diophantine(const vlock_front* f, int* ell1, int* ell2) {
  if (int rc = require_out(f, "front")) return rc;
  if (ell1) *ell1 = f->impl.core.roots.ell1;
  if (ell2) *ell2 = f->impl.core.roots.ell2;
  return VLOCK_OK;
}

int vlock_c_bounds(double r, double m, int p, int q, double* c_min,
                   double* c_max) {
  if (int rc = require_out(c_min, "c_min")) return rc;
  if (int rc = require_out(c_max, "c_max")) return rc;
  return guarded(
      [&] { vlock::c_bounds(r, m, vlock::Speed{p, q}, c_min, c_max); });
}

int vlock_asymptotic_slopes(double r, int q, double* c_min_slope,
                            double* c_max_slope) {
  if (int rc = require_out(c_min_slope, "c_min_slope")) return rc;
  if (int rc = require_out(c_max_slope, "c_max_slope")) return rc;
  return guarded(
      [&] { vlock::asymptotic_c_bounds_1q(r, q, c_min_slope, c_max_slope); });
}

int vlock_width_scaling_exponent(double r, int p, int q, double m_lo,
                                 double m_hi, int points, double* exponent) {
  if (int rc = require_out(exponent, "exponent")) return rc;
  return guarded([&] {
    *exponent =
        vlock::width_scaling_exponent(r, vlock::Speed{p, q}, m_lo, m_hi,
                                      points);
  });
}

int vlock_band_m_interval(double r, double c, int p, int q, double* m_lo,
                          double* m_hi, int* exists) {
  if (int rc = require_out(m_lo, "m_lo")) return rc;
  if (int rc = require_out(m_hi, "m_hi")) return rc;
  if (int rc = require_out(exists, "exists")) return rc;
  return guarded([&] {
    *exists =
        vlock::band_m_interval(r, c, vlock::Speed{p, q}, m_lo, m_hi) ? 1 : 0;
  });
}

int vlock_band_sweep(double r, int p, int q, int m_count, vlock_band** out) {
  if (int rc = require_out(out, "out")) return rc;
  *out = nullptr;
  return guarded([&] {
    auto handle =
        new vlock_band{vlock::region_sweep(r, vlock::Speed{p, q}, m_count)};
    *out = handle;
  });
}

void vlock_band_free(vlock_band* b) { delete b; }

int vlock_band_size(const vlock_band* b, int* n) {
  if (int rc = require_out(b, "band")) return rc;
  if (int rc = require_out(n, "n")) return rc;
  *n = static_cast<int>(b->impl.m_grid.size());
  return VLOCK_OK;
}

int vlock_band_point(const vlock_band* b, int i, double* m, double* c_min,
                     double* c_max, int* flags) {
  if (int rc = require_out(b, "band")) return rc;
  if (i < 0 || i >= static_cast<int>(b->impl.m_grid.size())) {
    return fail(VLOCK_EINVAL, "band point index out of range");
  }
  if (m) *m = b->impl.m_grid[i];
  if (c_min) *c_min = b->impl.c_min_values[i];
  if (c_max) *c_max = b->impl.c_max_values[i];
  if (flags) *flags = b->impl.flags[i];
  return VLOCK_OK;
}

int vlock_band_tip(const vlock_band* b, double* m_star, int* saturated) {
  if (int rc = require_out(b, "band")) return rc;
  if (m_star) *m_star = b->impl.m_star;
  if (saturated) *saturated = b->impl.saturated ? 1 : 0;
  return VLOCK_OK;
}

int vlock_spectrum_value(double r, double m, int p, int q, double gamma_bar,
                         double k, double* re, double* im) {
  if (int rc = require_out(re, "re")) return rc;
  if (int rc = require_out(im, "im")) return rc;
  return guarded([&] {
    vlock::Params pr{r, m, std::fmin(1.0, 1.0 / r)};
    const std::complex<double> v =
        vlock::spectrum_value(pr, vlock::Speed{p, q}, gamma_bar, k);
    *re = v.real();
    *im = v.imag();
  });
}

int vlock_lambda_max(double r, double m, int p, int q, double gamma_bar,
                     double* value) {
  if (int rc = require_out(value, "value")) return rc;
  return guarded([&] {
    vlock::Params pr{r, m, std::fmin(1.0, 1.0 / r)};
    *value = vlock::lambda_max(pr, vlock::Speed{p, q}, gamma_bar);
  });
}

int vlock_stability_margin(double r, double m, int p, int q, double* margin,
                           double* gamma_bar) {
  if (int rc = require_out(margin, "margin")) return rc;
  return guarded([&] {
    vlock::Params pr{r, m, std::fmin(1.0, 1.0 / r)};
    double gb = 0.0;
    *margin = vlock::stability_margin(pr, vlock::Speed{p, q}, &gb);
    if (gamma_bar) *gamma_bar = gb;
  });
}

int vlock_point_spectrum_scan(double r, double m, int p, int q,
                              const double* radii, int n_radii, int angles,
                              vlock_spectrum** out) {
  if (int rc = require_out(radii, "radii")) return rc;
  if (int rc = require_out(out, "out")) return rc;
  *out = nullptr;
  return guarded([&] {
    if (n_radii < 1 || angles < 1) {
      throw vlock::Error(vlock::kInvalid,
                         "scan needs at least one radius and one angle");
    }
    std::vector<std::complex<double>> samples;
    samples.reserve(static_cast<size_t>(n_radii) * angles);
    for (int i = 0; i < n_radii; ++i) {
      for (int j = 0; j < angles; ++j) {
        samples.push_back(
            std::polar(radii[i], 2.0 * M_PI * j / angles));
      }
    }
    vlock::Params pr{r, m, std::fmin(1.0, 1.0 / r)};
    auto handle = new vlock_spectrum{
        vlock::point_spectrum_scan(pr, vlock::Speed{p, q}, samples)};
    *out = handle;
  });
}

void vlock_spectrum_free(vlock_spectrum* s) { delete s; }

int vlock_spectrum_size(const vlock_spectrum* s, int* n) {
  if (int rc = require_out(s, "spectrum")) return rc;
  if (int rc = require_out(n, "n")) return rc;
  *n = static_cast<int>(s->impl.size());
  return VLOCK_OK;
}

int vlock_spectrum_sample(const vlock_spectrum* s, int i, double* lambda_re,
                          double* lambda_im, int* inside_count, int* excluded,
                          double* min_dist) {
  if (int rc = require_out(s, "spectrum")) return rc;
  if (i < 0 || i >= static_cast<int>(s->impl.size())) {
    return fail(VLOCK_EINVAL, "spectrum sample index out of range");
  }
  const vlock::SpectrumSample& sample = s->impl[i];
  if (lambda_re) *lambda_re = sample.lambda.real();
  if (lambda_im) *lambda_im = sample.lambda.imag();
  if (inside_count) *inside_count = sample.inside_count;
  if (excluded) *excluded = sample.excluded ? 1 : 0;
  if (min_dist) *min_dist = sample.min_dist;
  return VLOCK_OK;
}

int vlock_sim_config_default(vlock_sim_config* cfg) {
  if (int rc = require_out(cfg, "cfg")) return rc;
  const vlock::SimConfig def;
  cfg->lattice_size = def.lattice_size;
  cfg->transient_generations = def.transient_generations;
  cfg->measure_generations = def.measure_generations;
  cfg->capacity_seed_width = def.capacity_seed_width;
  cfg->shift_trigger_site = def.shift_trigger_site;
  return VLOCK_OK;
}

int vlock_simulate_speed(double r, double m, double c,
                         const vlock_sim_config* cfg, double* speed,
                         long* shifts, long* generations) {
  if (int rc = require_out(cfg, "cfg")) return rc;
  if (int rc = require_out(speed, "speed")) return rc;
  return guarded([&] {
    vlock::SimConfig sim;
    sim.lattice_size = cfg->lattice_size;
    sim.transient_generations = cfg->transient_generations;
    sim.measure_generations = cfg->measure_generations;
    sim.capacity_seed_width = cfg->capacity_seed_width;
    sim.shift_trigger_site = cfg->shift_trigger_site;
    const vlock::SpeedMeasurement meas =
        vlock::simulate_speed(vlock::Params{r, m, c}, sim);
    *speed = meas.measured_speed;
    if (shifts) *shifts = meas.shift_count;
    if (generations) *generations = meas.generations;
  });
}

int vlock_classify_speed(double measured, int p, int q, double tol,
                         int measure_generations, int* locked) {
  if (int rc = require_out(locked, "locked")) return rc;
  return guarded([&] {
    if (tol <= 0.0 && measure_generations < 1) {
      throw vlock::Error(vlock::kInvalid,
                         "default tolerance needs the measured generation count");
    }
    vlock::SpeedMeasurement meas;
    meas.measured_speed = measured;
    meas.generations = measure_generations;
    *locked = vlock::classify_speed(meas, vlock::Speed{p, q}, tol) ? 1 : 0;
  });
}

}  // extern "C"
