#include "types.hpp"

#include <map>
#include <numeric>
#include <sstream>

namespace vlock {

void validate_params(const Params& pr) {
  std::ostringstream msg;
  if (!(pr.r > 1.0)) {
    msg << "growth factor r must exceed 1, got " << pr.r;
    throw Error(kInvalid, msg.str());
  }
  if (!(pr.m >= 0.0 && pr.m < 1.0)) {
    msg << "migration fraction m must lie in [0, 1), got " << pr.m;
    throw Error(kInvalid, msg.str());
  }
  if (!(pr.c > 0.0 && pr.c <= 1.0)) {
    msg << "critical density c must lie in (0, 1], got " << pr.c;
    throw Error(kInvalid, msg.str());
  }
  if (!(pr.r * pr.c <= 1.0)) {
    msg << "r*c must not exceed 1, got " << pr.r * pr.c;
    throw Error(kInvalid, msg.str());
  }
}

void validate_speed(const Speed& sp) {
  std::ostringstream msg;
  if (!(sp.p >= 1 && sp.p < sp.q)) {
    msg << "speed must satisfy 1 <= p < q, got " << sp.p << "/" << sp.q;
    throw Error(kInvalid, msg.str());
  }
  if (std::gcd(sp.p, sp.q) != 1) {
    msg << "speed " << sp.p << "/" << sp.q << " is not in lowest terms";
    throw Error(kInvalid, msg.str());
  }
}

void require_front_params(const Params& pr) {
  std::ostringstream msg;
  if (!(pr.r > 1.0)) {
    msg << "growth factor r must exceed 1, got " << pr.r;
    throw Error(kInvalid, msg.str());
  }
  if (!(pr.m > 0.0 && pr.m < 1.0)) {
    msg << "front construction needs m in (0, 1), got " << pr.m;
    throw Error(kDomain, msg.str());
  }
  if (!(pr.a() < 1.0)) {
    msg << "front construction needs r*m/2 < 1, got " << pr.a();
    throw Error(kDomain, msg.str());
  }
}

Tolerances& tolerances() {
  static Tolerances tols;
  return tols;
}

namespace {

std::map<std::string, double Tolerances::*> tolerance_fields() {
  return {
      {"root_residual", &Tolerances::root_residual},
      {"imag_residue", &Tolerances::imag_residue},
      {"coeff_cross", &Tolerances::coeff_cross},
      {"fixed_point", &Tolerances::fixed_point},
      {"bisection", &Tolerances::bisection},
      {"degenerate_gap", &Tolerances::degenerate_gap},
      {"pair_match", &Tolerances::pair_match},
      {"root_match", &Tolerances::root_match},
      {"inside_slack", &Tolerances::inside_slack},
      {"spectrum_unit", &Tolerances::spectrum_unit},
      {"zeta_identity", &Tolerances::zeta_identity},
  };
}

}  // namespace

bool set_tolerance(const std::string& name, double value) {
  auto fields = tolerance_fields();
  auto it = fields.find(name);
  if (it == fields.end()) return false;
  if (!(value > 0.0)) {
    throw Error(kInvalid, "tolerance " + name + " must be positive");
  }
  tolerances().*(it->second) = value;
  return true;
}

double get_tolerance(const std::string& name) {
  auto fields = tolerance_fields();
  auto it = fields.find(name);
  if (it == fields.end()) {
    throw Error(kInvalid, "unknown tolerance " + name);
  }
  return tolerances().*(it->second);
}

}  // namespace vlock
