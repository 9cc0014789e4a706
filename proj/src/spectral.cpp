#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "root_engine.hpp"

namespace vlock {

namespace {

constexpr double kCurveClosureTol = 1e-12;

void require_weight(double gamma_bar) {
  if (!(gamma_bar > 0.0 && gamma_bar <= 1.0)) {
    throw Error(kInvalid, "weight rate must lie in (0, 1]");
  }
}

}  // namespace

std::complex<double> spectrum_value(const Params& pr, const Speed& sp,
                                    double gamma_bar, double k) {
  validate_speed(sp);
  require_front_params(pr);
  require_weight(gamma_bar);
  const std::complex<double> z = gamma_bar * std::polar(1.0, k);
  const std::complex<double> sym =
      pr.a() / z + pr.b() + pr.a() * z;
  return cpow_int(z, sp.p) * cpow_int(sym, sp.q);
}

double lambda_max(const Params& pr, const Speed& sp, double gamma_bar) {
  return std::abs(spectrum_value(pr, sp, gamma_bar, 0.0));
}

SpectrumCurve essential_spectrum_curve(const Params& pr, const Speed& sp,
                                       double gamma_bar, int k_count) {
  if (k_count < 16) {
    throw Error(kInvalid, "spectrum curve needs at least 16 samples");
  }
  SpectrumCurve curve;
  curve.gamma_bar = gamma_bar;
  curve.k_samples.resize(k_count);
  curve.lambda_values.resize(k_count);
  curve.lambda_max_modulus = lambda_max(pr, sp, gamma_bar);
  const double two_pi = 2.0 * M_PI;
  double max_seen = 0.0;
  for (int i = 0; i < k_count; ++i) {
    curve.k_samples[i] = two_pi * i / k_count;
    curve.lambda_values[i] = spectrum_value(pr, sp, gamma_bar,
                                            curve.k_samples[i]);
    max_seen = std::max(max_seen, std::abs(curve.lambda_values[i]));
  }
  const std::complex<double> wrap = spectrum_value(pr, sp, gamma_bar, two_pi);
  if (std::abs(wrap - curve.lambda_values[0]) >
      kCurveClosureTol * (1.0 + std::abs(wrap))) {
    throw Error(kInternal, "spectrum curve failed to close over one period");
  }
  if (max_seen > curve.lambda_max_modulus * (1.0 + 1e-12)) {
    throw Error(kInternal, "spectrum modulus not maximized at k = 0");
  }
  return curve;
}

double stability_margin(const Params& pr, const Speed& sp,
                        double* gamma_bar_out) {
  const DecayPair rates = decay_rates_for_speed(pr, sp);
  const double gamma_bar = std::sqrt(rates.gamma_s * rates.gamma_w);
  if (gamma_bar_out) *gamma_bar_out = gamma_bar;
  return 1.0 - lambda_max(pr, sp, gamma_bar);
}

std::vector<SpectrumSample> point_spectrum_scan(
    const Params& pr, const Speed& sp,
    const std::vector<std::complex<double>>& lambda_samples) {
  validate_speed(sp);
  require_front_params(pr);
  for (const auto& lam : lambda_samples) {
    if (std::abs(lam) < 1.0 - 1e-12) {
      throw Error(kInvalid, "point-spectrum samples need |lambda| >= 1");
    }
  }
  const DecayPair rates = decay_rates_for_speed(pr, sp);
  const Tolerances& tol = tolerances();
  const double disk = rates.gamma_s * (1.0 + tol.inside_slack);
  const int N = sp.N();

  std::vector<SpectrumSample> out;
  out.reserve(lambda_samples.size());
  for (const auto& lam : lambda_samples) {
    SpectrumSample sample;
    sample.lambda = lam;
    try {
      const std::vector<Complex> roots = char_roots(pr, sp, lam);
      std::vector<Complex> inside;
      for (const Complex& g : roots) {
        if (std::abs(g) <= disk) inside.push_back(g);
      }
      sample.inside_count = static_cast<int>(inside.size());
      sample.min_dist = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < inside.size(); ++i) {
        for (size_t j = i + 1; j < inside.size(); ++j) {
          sample.min_dist =
              std::min(sample.min_dist, std::abs(inside[i] - inside[j]));
        }
      }
      if (inside.size() < 2) sample.min_dist = 0.0;
      sample.excluded =
          sample.inside_count == N &&
          (N < 2 || sample.min_dist > tol.degenerate_gap);
    } catch (const Error&) {
      sample.inside_count = -1;
      sample.min_dist = 0.0;
      sample.excluded = false;
    }
    out.push_back(sample);
  }
  return out;
}

}  // namespace vlock
