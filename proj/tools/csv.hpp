#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace tool {

// Shortest round-trip decimal form, identical on every run.
std::string num(double v);
std::string num(int v);
std::string num(long v);

// CSV with "#" comment lines.  Files are opened in binary mode and always
// end lines with "\n" so equal runs produce equal bytes.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void comment(const std::string& text);
  void columns(const std::vector<std::string>& names);
  void row(const std::vector<std::string>& cells);

  // Throws when any write failed; the destructor closes quietly.
  void close();

 private:
  void line(const std::string& text);

  std::ofstream out_;
  std::string path_;
};

}  // namespace tool
