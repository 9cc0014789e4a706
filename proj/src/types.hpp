#pragma once

#include <stdexcept>
#include <string>

namespace vlock {

// Status codes shared with the C boundary (see include/vlock.h).
enum {
  kOk = 0,
  kInvalid = 1,
  kDomain = 2,
  kDegenerate = 3,
  kNoConverge = 4,
  kWindow = 5,
  kSim = 6,
  kInternal = 7,
};

struct Error : std::runtime_error {
  int code;
  Error(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// Growth factor r, migration fraction m, critical density c.
// Shorthands: a = r*m/2 (migrant growth), b = r*(1-m) (resident growth).
struct Params {
  double r = 0.0;
  double m = 0.0;
  double c = 0.0;

  double a() const { return r * m / 2.0; }
  double b() const { return r * (1.0 - m); }
};

// Rational front speed p/q in lowest terms, 0 < p/q < 1.
struct Speed {
  int p = 0;
  int q = 0;

  int N() const { return q - p; }
  double value() const { return static_cast<double>(p) / q; }
};

// Throws Error(kInvalid) unless r > 1, 0 <= m < 1, 0 < c <= 1 and r*c <= 1.
// m = 0 is admitted for the no-migration simulation case.
void validate_params(const Params& pr);

// Throws Error(kInvalid) unless 1 <= p < q and gcd(p, q) = 1.
void validate_speed(const Speed& sp);

// Front construction additionally needs migration and a < 1.
void require_front_params(const Params& pr);

struct Tolerances {
  double root_residual = 1e-9;   // relative polynomial residual after polish
  double imag_residue = 1e-10;   // imaginary part allowed before real discard
  double coeff_cross = 1e-10;    // product formula vs direct solve agreement
  double fixed_point = 1e-10;    // front residual target
  double bisection = 1e-13;      // bracket width for scalar bisection
  double degenerate_gap = 1e-8;  // modulus gap / node separation floor
  double pair_match = 1e-9;      // conjugate pair matching
  double root_match = 1e-9;      // strong root vs bisected gamma_s
  double inside_slack = 1e-9;    // relative slack of the counting disk
  double spectrum_unit = 1e-10;  // lambda_max at the decay rates vs 1
  double zeta_identity = 1e-10;  // zeta^q * gamma vs 1
};

// Global mutable registry; reads during computation pick up the current
// values, so adjust between calls, not concurrently with them.
Tolerances& tolerances();

// Name-based access for configuration surfaces. set returns false for an
// unknown name; get throws Error(kInvalid).
bool set_tolerance(const std::string& name, double value);
double get_tolerance(const std::string& name);

}  // namespace vlock
