#include "linear_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vlock {

namespace {

// The envelope speed is monotone on either side of its minimizer; its
// derivative has the sign of F1 - F2 below.
double envelope_slope_sign(double g, double a, double b) {
  const double A = a + b * g + a * g * g;
  const double F1 = (b * g + 2.0 * a * g * g) * (-std::log(g));
  const double F2 = A * (-std::log(A));
  return F1 - F2;
}

void require_interior_migration(const Params& pr) {
  if (!(pr.m > 0.0)) {
    throw Error(kDomain, "linear analysis needs positive migration");
  }
  if (!(pr.a() < 1.0)) {
    std::ostringstream msg;
    msg << "envelope speed has no interior minimum for r*m/2 = " << pr.a();
    throw Error(kDomain, msg.str());
  }
}

}  // namespace

std::complex<double> dispersion(std::complex<double> gamma, const Params& pr) {
  if (gamma == 0.0) {
    throw Error(kInvalid, "dispersion undefined at gamma = 0");
  }
  const double a = pr.a();
  const double b = pr.b();
  return (a + b * gamma + a * gamma * gamma) / gamma;
}

double envelope_speed(double gamma, const Params& pr) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw Error(kInvalid, "envelope speed needs gamma in (0, 1)");
  }
  if (!(pr.m > 0.0)) {
    throw Error(kDomain, "envelope speed needs positive migration");
  }
  const double a = pr.a();
  const double b = pr.b();
  const double A = a + b * gamma + a * gamma * gamma;
  return 1.0 - std::log(A) / std::log(gamma);
}

LinearSpreading linear_spreading_speed(const Params& pr) {
  require_interior_migration(pr);
  const double a = pr.a();
  const double b = pr.b();
  const double tol = tolerances().bisection;
  double lo = 1e-12;
  double hi = 1.0 - 1e-12;
  if (!(envelope_slope_sign(lo, a, b) < 0.0) ||
      !(envelope_slope_sign(hi, a, b) > 0.0)) {
    throw Error(kInternal, "envelope slope bracket failed");
  }
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (envelope_slope_sign(mid, a, b) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  LinearSpreading out;
  out.gamma_lin = 0.5 * (lo + hi);
  out.s_lin = envelope_speed(out.gamma_lin, pr);
  return out;
}

DecayPair decay_rates_for_speed(const Params& pr, const Speed& sp) {
  validate_speed(sp);
  const LinearSpreading lin = linear_spreading_speed(pr);
  const double s = sp.value();
  if (!(s > lin.s_lin)) {
    std::ostringstream msg;
    msg << "speed " << sp.p << "/" << sp.q
        << " does not exceed the linear spreading speed " << lin.s_lin;
    throw Error(kDomain, msg.str());
  }
  const double tol = tolerances().bisection;

  // Strong rate: envelope speed decreases from 1 toward s_lin on
  // (0, gamma_lin); walk the lower bracket down until it stands above s.
  double lo = lin.gamma_lin / 2.0;
  int guard = 0;
  while (envelope_speed(lo, pr) < s) {
    lo /= 2.0;
    if (++guard > 2000) {
      throw Error(kNoConverge, "no lower bracket for the strong decay rate");
    }
  }
  // Converge relative to the rate itself: the strong rate can sit many
  // orders of magnitude below the minimizer and the disk selection later
  // compares roots against it at relative precision.
  double hi = lin.gamma_lin;
  for (int it = 0; it < 2000 && hi - lo > tol * lo; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (envelope_speed(mid, pr) > s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  DecayPair out;
  out.gamma_s = 0.5 * (lo + hi);

  // Weak rate: envelope speed increases without bound on (gamma_lin, 1).
  hi = 0.5 * (1.0 + lin.gamma_lin);
  guard = 0;
  while (envelope_speed(hi, pr) < s) {
    hi = 0.5 * (1.0 + hi);
    if (++guard > 2000) {
      throw Error(kNoConverge, "no upper bracket for the weak decay rate");
    }
  }
  lo = lin.gamma_lin;
  for (int it = 0; it < 2000 && hi - lo > tol * lo; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (envelope_speed(mid, pr) < s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.gamma_w = 0.5 * (lo + hi);
  return out;
}

double m_star(double r, const Speed& sp, bool* saturated) {
  validate_speed(sp);
  if (!(r > 1.0)) {
    throw Error(kInvalid, "growth factor r must exceed 1");
  }
  const double s = sp.value();
  const double m_cap = std::min(1.0, 2.0 / r);
  Params probe{r, m_cap * (1.0 - 1e-9), 1.0 / r};
  if (linear_spreading_speed(probe).s_lin <= s) {
    if (saturated) *saturated = true;
    return m_cap;
  }
  if (saturated) *saturated = false;
  double lo = 1e-12;
  double hi = probe.m;
  const double tol = tolerances().bisection;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    Params pr{r, mid, 1.0 / r};
    if (linear_spreading_speed(pr).s_lin < s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace vlock
