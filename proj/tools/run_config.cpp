#include "run_config.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "csv.hpp"

namespace tool {

namespace {

std::string trim(const std::string& text) {
  const size_t first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const size_t last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& text) {
  throw std::runtime_error("config key " + key + ": cannot parse \"" + text +
                           "\"");
}

}  // namespace

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const size_t eq = text.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key = value");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": empty key or value");
    }
    values_[key] = value;
  }
}

void RunConfig::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

bool RunConfig::has(const std::string& key) const {
  return values_.count(key) != 0;
}

std::vector<std::string> RunConfig::keys() const {
  std::vector<std::string> out;
  out.reserve(values_.size());
  for (const auto& [key, value] : values_) out.push_back(key);
  return out;
}

double RunConfig::get_double(const std::string& key, double fallback) {
  double v = fallback;
  const auto it = values_.find(key);
  if (it != values_.end()) {
    const std::string& text = it->second;
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end) bad_value(key, text);
  }
  resolved_[key] = num(v);
  return v;
}

int RunConfig::get_int(const std::string& key, int fallback, bool record) {
  int v = fallback;
  const auto it = values_.find(key);
  if (it != values_.end()) {
    const std::string& text = it->second;
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end) bad_value(key, text);
  }
  if (record) resolved_[key] = num(v);
  return v;
}

std::string RunConfig::get_string(const std::string& key,
                                  const std::string& fallback, bool record) {
  const auto it = values_.find(key);
  const std::string v = it != values_.end() ? it->second : fallback;
  if (record) resolved_[key] = v;
  return v;
}

void RunConfig::note(const std::string& key, double value) {
  resolved_[key] = num(value);
}

void RunConfig::note(const std::string& key, const std::string& value) {
  resolved_[key] = value;
}

std::vector<std::string> RunConfig::resolved_lines() const {
  std::vector<std::string> out;
  out.reserve(resolved_.size());
  for (const auto& [key, value] : resolved_) {
    out.push_back(key + " = " + value);
  }
  return out;
}

}  // namespace tool
