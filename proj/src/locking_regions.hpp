#pragma once

#include <vector>

#include "front_builder.hpp"

namespace vlock {

enum BandFlags {
  kBandDegenerate = 1,  // point failed to evaluate
  kBandCapped = 2,      // c_max exceeds 1/r, incompatible with r*c <= 1
};

struct LockingBand {
  Speed speed;
  double r = 0.0;
  std::vector<double> m_grid;
  std::vector<double> c_min_values;
  std::vector<double> c_max_values;
  std::vector<int> flags;
  double m_star = 0.0;
  bool saturated = false;
};

// Existence band in the critical density at fixed (r, m): the threshold
// must fall between the profile level just right of the interface and the
// level at the interface itself, one generation before and after the shift.
void c_bounds(double r, double m, const Speed& sp, double* c_min,
              double* c_max);

// Same, reusing an already built core.
void c_bounds_from_core(const FrontCore& core, double* c_min, double* c_max);

// c_min/c_max over an m grid running from near zero to near the tip;
// per-point failures are flagged, never fatal.
LockingBand region_sweep(double r, const Speed& sp, int m_count);

// Closed-form small-m slopes of the speed-1/q band boundaries.
void asymptotic_c_bounds_1q(double r, int q, double* c_min_slope,
                            double* c_max_slope);

// Least-squares slope of log(width) against log(m) on a log-spaced grid.
double width_scaling_exponent(double r, const Speed& sp, double m_lo,
                              double m_hi, int points);

// m-interval of the band at fixed critical density; false when the band
// never contains it.
bool band_m_interval(double r, double c, const Speed& sp, double* m_lo,
                     double* m_hi);

}  // namespace vlock
