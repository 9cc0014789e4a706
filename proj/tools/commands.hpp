#pragma once

#include <string>

#include "run_config.hpp"

namespace tool {

// Worker count: the requested value when positive, else VLOCK_THREADS, else
// the hardware count.  The thread count never affects output bytes; sweep
// results are merged in grid order.
int resolve_threads(int requested);

// Each command reads its parameters from cfg, writes its files under
// out_dir, and prints a one-line summary to stdout.  Hard errors (bad
// configuration, failed construction, io) throw; per-point failures are
// recorded in the output and logged to stderr.
void cmd_staircase(RunConfig& cfg, const std::string& out_dir, int threads);
void cmd_regions(RunConfig& cfg, const std::string& out_dir, int threads);
void cmd_compare(RunConfig& cfg, const std::string& out_dir, int threads);
void cmd_front(RunConfig& cfg, const std::string& out_dir);
void cmd_slin(RunConfig& cfg, const std::string& out_dir);
void cmd_spectrum(RunConfig& cfg, const std::string& out_dir);
void cmd_widths(RunConfig& cfg, const std::string& out_dir);

}  // namespace tool
