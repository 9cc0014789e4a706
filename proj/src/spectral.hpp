#pragma once

#include <complex>
#include <vector>

#include "linear_analysis.hpp"
#include "types.hpp"

namespace vlock {

struct SpectrumCurve {
  double gamma_bar = 0.0;
  std::vector<double> k_samples;
  std::vector<std::complex<double>> lambda_values;
  double lambda_max_modulus = 0.0;  // attained at k = 0
};

struct SpectrumSample {
  std::complex<double> lambda;
  int inside_count = 0;   // roots within the strong-decay reference disk
  double min_dist = 0.0;  // min pairwise distance of the inside roots
  bool excluded = false;  // count matches and roots are distinct
};

// Linearization symbol at wavenumber k under the exponential weight with
// rate gamma_bar in (0, 1]:
// lambda(k) = (gb e^{ik})^p (a (gb e^{ik})^{-1} + b + a gb e^{ik})^q.
std::complex<double> spectrum_value(const Params& pr, const Speed& sp,
                                    double gamma_bar, double k);

// Modulus of the symbol at k = 0, which dominates the whole curve.
double lambda_max(const Params& pr, const Speed& sp, double gamma_bar);

// The boundary curve of the essential spectrum over a uniform k grid.
SpectrumCurve essential_spectrum_curve(const Params& pr, const Speed& sp,
                                       double gamma_bar, int k_count);

// 1 - lambda_max at the geometric-mean weight between the decay rates;
// positive means the essential spectrum sits strictly inside the unit
// circle in that weighted space.
double stability_margin(const Params& pr, const Speed& sp,
                        double* gamma_bar_out = nullptr);

// For each lambda with |lambda| >= 1: count the characteristic roots in
// the strong-decay reference disk and check pairwise distinctness; both
// together rule out a decaying eigenfunction at that lambda.
std::vector<SpectrumSample> point_spectrum_scan(
    const Params& pr, const Speed& sp,
    const std::vector<std::complex<double>>& lambda_samples);

}  // namespace vlock
