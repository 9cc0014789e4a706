#pragma once

#include "types.hpp"

namespace vlock {

struct SimConfig {
  int lattice_size = 400;
  int transient_generations = 10000;
  int measure_generations = 10000;
  int capacity_seed_width = 3;
  int shift_trigger_site = 3;
};

struct SpeedMeasurement {
  double measured_speed = 0.0;  // shift_count / generations exactly
  long shift_count = 0;
  long generations = 0;
};

void validate_sim_config(const SimConfig& cfg);

// Domain-shifting speed measurement: capacity seed on the left, zero tail
// on the right, window shifted one site left whenever the trigger site
// reaches capacity. Shifts are counted over the generations that follow
// the transient.
SpeedMeasurement simulate_speed(const Params& pr, const SimConfig& cfg);

// Locked-at-p/q test; tol <= 0 selects the counting-resolution default
// 1/(2*measure_generations).
bool classify_speed(const SpeedMeasurement& meas, const Speed& sp, double tol);

}  // namespace vlock
