#include "locking_regions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vlock {

namespace {

constexpr double kGridMargin = 1e-4;  // relative inset from 0 and m_star

double boundary_expression(const FrontCore& core, int offset) {
  const double m = core.params.m;
  return m / 2.0 + (1.0 - m) * core.gamma_sums[offset] +
         (m / 2.0) * core.gamma_sums[offset + core.speed.q];
}

}  // namespace

void c_bounds_from_core(const FrontCore& core, double* c_min, double* c_max) {
  const Speed& sp = core.speed;
  *c_max = boundary_expression(core, sp.p);
  *c_min = boundary_expression(core, sp.p + 1);

  // The capacity constraints from sites 1..p must bind last at p and the
  // subcritical constraints from p+1..q first at p+1; both follow from the
  // strict decrease of the power sums, re-checked here on the expression.
  for (int off = 1; off <= sp.p; ++off) {
    if (boundary_expression(core, off) < *c_max - 1e-15) {
      throw Error(kInternal, "capacity constraint not minimized at the shift");
    }
  }
  for (int off = sp.p + 1; off <= sp.q; ++off) {
    if (boundary_expression(core, off) > *c_min + 1e-15) {
      throw Error(kInternal, "subcritical constraint not maximized after the shift");
    }
  }
  if (!(*c_min < *c_max)) {
    std::ostringstream msg;
    msg << "band empty: c_min " << *c_min << " >= c_max " << *c_max;
    throw Error(kInternal, msg.str());
  }
}

void c_bounds(double r, double m, const Speed& sp, double* c_min,
              double* c_max) {
  Params pr{r, m, 0.0};
  pr.c = std::min(1.0, 1.0 / r);  // placeholder, never consulted
  const FrontCore core = build_front_core(pr, sp);
  c_bounds_from_core(core, c_min, c_max);
}

LockingBand region_sweep(double r, const Speed& sp, int m_count) {
  validate_speed(sp);
  if (m_count < 2) {
    throw Error(kInvalid, "region sweep needs at least 2 grid points");
  }
  LockingBand band;
  band.speed = sp;
  band.r = r;
  band.m_star = m_star(r, sp, &band.saturated);

  // Log-spaced toward 0 where the band narrows as m^p, linear toward the
  // tip where the boundaries steepen.
  const double lo = band.m_star * kGridMargin;
  const double hi = band.m_star * (1.0 - kGridMargin);
  const double mid = 0.5 * band.m_star;
  const int n_log = m_count / 2;
  const int n_lin = m_count - n_log;
  band.m_grid.reserve(m_count);
  for (int i = 0; i < n_log; ++i) {
    const double t = static_cast<double>(i) / n_log;
    band.m_grid.push_back(lo * std::pow(mid / lo, t));
  }
  for (int i = 0; i < n_lin; ++i) {
    const double t = static_cast<double>(i) / (n_lin - 1);
    band.m_grid.push_back(mid + t * (hi - mid));
  }

  band.c_min_values.resize(band.m_grid.size(), 0.0);
  band.c_max_values.resize(band.m_grid.size(), 0.0);
  band.flags.resize(band.m_grid.size(), 0);
  for (size_t i = 0; i < band.m_grid.size(); ++i) {
    try {
      double c_min = 0.0, c_max = 0.0;
      c_bounds(r, band.m_grid[i], sp, &c_min, &c_max);
      band.c_min_values[i] = c_min;
      band.c_max_values[i] = c_max;
      if (c_max > 1.0 / r) band.flags[i] |= kBandCapped;
    } catch (const Error&) {
      band.flags[i] |= kBandDegenerate;
    }
  }
  return band;
}

void asymptotic_c_bounds_1q(double r, int q, double* c_min_slope,
                            double* c_max_slope) {
  if (q < 2) {
    throw Error(kInvalid, "asymptotic slopes need q >= 2");
  }
  if (!(r > 1.0)) {
    throw Error(kInvalid, "growth factor r must exceed 1");
  }
  double sum = 0.0;
  double pow_r = 1.0;
  for (int j = 0; j < q - 1; ++j) {
    sum += pow_r;
    pow_r *= r;
  }
  *c_min_slope = sum / 2.0;
  *c_max_slope = (sum + pow_r) / 2.0;
}

double width_scaling_exponent(double r, const Speed& sp, double m_lo,
                              double m_hi, int points) {
  validate_speed(sp);
  if (points < 4) {
    throw Error(kInvalid, "width scaling needs at least 4 grid points");
  }
  if (!(0.0 < m_lo && m_lo < m_hi)) {
    throw Error(kInvalid, "width scaling needs 0 < m_lo < m_hi");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    const double m = m_lo * std::pow(m_hi / m_lo, t);
    double c_min = 0.0, c_max = 0.0;
    c_bounds(r, m, sp, &c_min, &c_max);
    const double x = std::log(m);
    const double y = std::log(c_max - c_min);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = points;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool band_m_interval(double r, double c, const Speed& sp, double* m_lo,
                     double* m_hi) {
  validate_speed(sp);
  if (!(c > 0.0 && c <= 1.0)) {
    throw Error(kInvalid, "critical density must lie in (0, 1]");
  }
  const double tip = m_star(r, sp);
  const double lo = tip * kGridMargin;
  const double hi = tip * (1.0 - kGridMargin);

  auto member = [&](double m) {
    try {
      double c_min = 0.0, c_max = 0.0;
      c_bounds(r, m, sp, &c_min, &c_max);
      return c_min <= c && c <= c_max;
    } catch (const Error&) {
      return false;
    }
  };

  const int scan = 256;
  int first = -1, last = -1;
  std::vector<double> grid(scan);
  for (int i = 0; i < scan; ++i) {
    grid[i] = lo + (hi - lo) * i / (scan - 1);
    if (member(grid[i])) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) return false;

  auto refine = [&](double outside, double inside) {
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (outside + inside);
      if (member(mid)) {
        inside = mid;
      } else {
        outside = mid;
      }
    }
    return 0.5 * (outside + inside);
  };

  *m_lo = first == 0 ? grid[0] : refine(grid[first - 1], grid[first]);
  *m_hi = last == scan - 1 ? grid[scan - 1] : refine(grid[last + 1], grid[last]);
  return true;
}

}  // namespace vlock
