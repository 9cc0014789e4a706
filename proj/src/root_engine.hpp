#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "linear_analysis.hpp"
#include "types.hpp"

namespace vlock {

using Complex = std::complex<double>;

// The q-p construction roots of the speed-p/q matching polynomial together
// with their branch-consistent q-th inverse roots.
struct FrontRoots {
  std::vector<Complex> gammas;  // strong real root first
  std::vector<Complex> zetas;   // zeta_j^q * gamma_j = 1
  int ell1 = 0;                 // branch exponents: q*ell1 - N*ell2 = -1
  int ell2 = 0;
  double gamma_s = 0.0;
  double gamma_w = 0.0;
};

// z^e for integer e >= 0 by binary exponentiation.
Complex cpow_int(Complex z, int e);

// Exact integer trinomial coefficient: the gamma^k coefficient of
// (x + y*gamma + x*gamma^2)^q collects C(q,l)*C(q-l,k-2l) monomials.
std::int64_t trinomial_multinomial(int q, int k, int l);

// Coefficients (index = power) of (a + b*gamma + a*gamma^2)^q.
std::vector<double> trinomial_coefficients(const Params& pr, int q);

// Relative residual of gamma against (a+b*g+a*g^2)^q - lambda*g^(q-p),
// evaluated on the unexpanded form.
double char_residual(Complex gamma, Complex lambda, const Params& pr,
                     const Speed& sp);

// All 2q roots of the characteristic polynomial at the given lambda,
// companion-matrix eigenvalues polished by Newton on the unexpanded form.
// Every returned root meets the residual tolerance.
std::vector<Complex> char_roots(const Params& pr, const Speed& sp,
                                Complex lambda = 1.0);

// Sorts and verifies the q-p roots inside the strong-decay disk: count,
// modulus gap to the first outside root, strong root realness, conjugate
// closure; attaches the inverse roots.
FrontRoots select_front_roots(const std::vector<Complex>& all_roots,
                              const DecayPair& rates, const Params& pr,
                              const Speed& sp);

// Minimal positive solution of q*ell1 - N*ell2 = -1 with ell1 < N for
// N >= 2; (1, q+1) for N = 1.
void diophantine(int q, int N, int* ell1, int* ell2);

// gamma^(-1/q) on the branch fixed by the exponent pair: integer powers
// only. The N = 1 case takes the positive real root directly.
Complex fractional_root(Complex gamma, const Params& pr, const Speed& sp,
                        int ell1, int ell2);

// Convenience pipeline: decay rates, characteristic roots, selection.
FrontRoots build_front_roots(const Params& pr, const Speed& sp);

}  // namespace vlock
