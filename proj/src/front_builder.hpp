#pragma once

#include <vector>

#include "root_engine.hpp"

namespace vlock {

// Root data, matching coefficients and the weighted power sums; everything
// about the front that does not involve the critical density.
struct FrontCore {
  Params params;  // c is not consulted here
  Speed speed;
  FrontRoots roots;
  std::vector<Complex> ks;        // product-formula coefficients
  std::vector<Complex> ks_solve;  // direct linear solve (cross-check)
  double coeff_deviation = 0.0;   // max relative disagreement of the two
  double condition = 1.0;         // estimate for the coefficient system
  std::vector<double> gamma_sums;  // Gamma_n for n = 0 .. 3q+1
};

struct PositivityCertificate {
  bool certified = false;     // tail dominance established from i_star on
  int i_star = 0;             // first index with certified tail dominance
  bool window_positive = false;  // explicit check when not certified
};

// The locked front at a concrete critical density.
struct Front {
  FrontCore core;
  double c = 0.0;
  int left = 0;   // profile window [-left, right]
  int right = 0;
  std::vector<double> phi;  // phi[i + left] is the value at site i
  double residual = 0.0;    // sup-norm fixed-point defect
  PositivityCertificate positivity;
};

// Matching coefficients k_j via the closed product formula, cross-checked
// against the direct solve of the power-sum system V(zeta) k = 1.
void solve_coefficients(const FrontRoots& roots, std::vector<Complex>* ks,
                        std::vector<Complex>* ks_solve, double* deviation,
                        double* condition);

// Gamma_n = Re sum_j k_j zeta_j^{-n}: the profile generalized to the
// fractional site offset n/q. n >= 0; imaginary residue must vanish.
double gamma_sum(const FrontCore& core, int n);

// Roots, coefficients, and power sums at (r, m); the critical density does
// not enter. Verifies Sigma k = 1, conjugate pairing, and the strict
// decrease of Gamma_n.
FrontCore build_front_core(const Params& pr, const Speed& sp);

// Profile value at site i: 1 at or left of the interface, the root
// expansion to its right.
double profile_value(const FrontCore& core, int i);

// Sup-norm defect of the profile as a fixed point of q generations plus a
// p-site left shift, evaluated on a window with the exact analytic tail as
// the right clamp. Window (0, 0) selects the default q+2 / max(40, 4q).
double fixed_point_residual(const FrontCore& core, double c, int left,
                            int right);

// Tail-dominance positivity certificate with explicit checking up to the
// certified index; falls back to a window-only check when the dominance
// bound is unavailable.
PositivityCertificate positivity_certificate(const FrontCore& core,
                                             int window_right);

// Full pipeline at a concrete critical density (recorded, gates nothing).
Front build_front(const Params& pr, const Speed& sp);

}  // namespace vlock
