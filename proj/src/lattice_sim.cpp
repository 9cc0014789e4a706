#include "lattice_sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "model.hpp"

namespace vlock {

void validate_sim_config(const SimConfig& cfg) {
  std::ostringstream msg;
  if (cfg.lattice_size < 50) {
    msg << "lattice size must be at least 50, got " << cfg.lattice_size;
    throw Error(kInvalid, msg.str());
  }
  if (cfg.transient_generations < 0) {
    throw Error(kInvalid, "transient generation count must be nonnegative");
  }
  if (cfg.measure_generations < 1) {
    throw Error(kInvalid, "measured generation count must be positive");
  }
  if (cfg.capacity_seed_width < 1 ||
      cfg.capacity_seed_width >= cfg.lattice_size) {
    throw Error(kInvalid, "capacity seed width must fit inside the lattice");
  }
  if (cfg.shift_trigger_site < 0 ||
      cfg.shift_trigger_site >= cfg.lattice_size) {
    throw Error(kInvalid, "shift trigger site must lie inside the lattice");
  }
}

SpeedMeasurement simulate_speed(const Params& pr, const SimConfig& cfg) {
  validate_params(pr);
  validate_sim_config(cfg);

  const int n = cfg.lattice_size;
  std::vector<double> u(n, 0.0);
  std::fill(u.begin(), u.begin() + cfg.capacity_seed_width, 1.0);
  std::vector<double> next(n);

  SpeedMeasurement meas;
  meas.generations = cfg.measure_generations;
  const long total = static_cast<long>(cfg.transient_generations) +
                     cfg.measure_generations;
  for (long t = 0; t < total; ++t) {
    generation_into(u.data(), next.data(), n, pr, 1.0, 0.0);
    u.swap(next);

    long shifts = 0;
    while (u[cfg.shift_trigger_site] == 1.0) {
      std::copy(u.begin() + 1, u.end(), u.begin());
      u[n - 1] = 0.0;
      if (++shifts > n) {
        throw Error(kSim, "runaway window shift within one generation");
      }
    }
    if (t >= cfg.transient_generations) {
      meas.shift_count += shifts;
    }
    if (u[n - 1] >= pr.c) {
      std::ostringstream msg;
      msg << "front reached the right boundary at generation " << t
          << "; enlarge the lattice";
      throw Error(kSim, msg.str());
    }
  }
  meas.measured_speed =
      static_cast<double>(meas.shift_count) / cfg.measure_generations;
  return meas;
}

bool classify_speed(const SpeedMeasurement& meas, const Speed& sp,
                    double tol) {
  validate_speed(sp);
  if (tol <= 0.0) {
    tol = 1.0 / (2.0 * meas.generations);
  }
  return std::abs(meas.measured_speed - sp.value()) <= tol;
}

}  // namespace vlock
