#pragma once

#include <map>
#include <string>
#include <vector>

namespace tool {

// Key/value run configuration with dotted section keys ("sim.lattice_size").
// Every consulted key is recorded together with the value actually used,
// defaults included, so output headers can echo the fully resolved run.
class RunConfig {
 public:
  // Parses "key = value" lines; blank lines and "#" comments are skipped.
  void load_file(const std::string& path);

  // Overrides (or introduces) a key, as the command line does.
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  std::vector<std::string> keys() const;

  // Typed lookups with a default. record=false skips the resolved echo;
  // execution plumbing (threads, output paths) must not leak into output.
  double get_double(const std::string& key, double fallback);
  int get_int(const std::string& key, int fallback, bool record = true);
  std::string get_string(const std::string& key, const std::string& fallback,
                         bool record = true);

  // Records a value resolved outside the config (a computed default).
  void note(const std::string& key, double value);
  void note(const std::string& key, const std::string& value);

  // Sorted "key = value" lines for every consulted key.
  std::vector<std::string> resolved_lines() const;

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, std::string> resolved_;
};

}  // namespace tool
