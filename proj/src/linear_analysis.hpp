#pragma once

#include <complex>

#include "types.hpp"

namespace vlock {

struct LinearSpreading {
  double s_lin = 0.0;
  double gamma_lin = 0.0;
};

struct DecayPair {
  double gamma_s = 0.0;  // strong rate, below the envelope minimizer
  double gamma_w = 0.0;  // weak rate, above it
};

// Per-generation multiplier of the pure exponential gamma^i under the
// linearized dynamics: (a + b*gamma + a*gamma^2) / gamma.
std::complex<double> dispersion(std::complex<double> gamma, const Params& pr);

// Propagation speed of the decaying exponential envelope with rate gamma.
double envelope_speed(double gamma, const Params& pr);

// Minimum of the envelope speed over gamma in (0,1). Needs a = r*m/2 < 1
// for the interior minimum to exist.
LinearSpreading linear_spreading_speed(const Params& pr);

// The two rates at which the envelope speed equals p/q; defined only for
// speeds above the linear spreading speed.
DecayPair decay_rates_for_speed(const Params& pr, const Speed& sp);

// Largest migration rate admitting a speed-p/q front: the solution of
// s_lin(r, m) = p/q, saturating at m = min(1, 2/r) when s_lin stays below.
double m_star(double r, const Speed& sp, bool* saturated = nullptr);

}  // namespace vlock
