#pragma once

#include <vector>

#include "types.hpp"

namespace vlock {

// Reproduction map: r*u below the critical density, capacity at or above it.
// The threshold comparison is inclusive and exact.
double reproduction(double u, const Params& pr);

// One synchronous generation on a window of n sites. left/right are the
// clamp values used for the missing neighbors beyond the window edges.
void generation_into(const double* u, double* out, int n, const Params& pr,
                     double left, double right);

std::vector<double> generation(const std::vector<double>& u, const Params& pr,
                               double left, double right);

// q generations followed by a shift of p sites to the left. Sites whose
// shifted source falls beyond the window reuse the right clamp. The window
// must hold at least one site untouched by both boundary margins.
std::vector<double> locked_map(const std::vector<double>& u, const Params& pr,
                               const Speed& sp, double left, double right);

}  // namespace vlock
