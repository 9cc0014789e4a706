#include "csv.hpp"

#include <charconv>
#include <stdexcept>

namespace tool {

std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string num(int v) { return std::to_string(v); }

std::string num(long v) { return std::to_string(v); }

CsvWriter::CsvWriter(const std::string& path)
    : out_(path, std::ios::binary), path_(path) {
  if (!out_) throw std::runtime_error("cannot open " + path + " for writing");
}

void CsvWriter::line(const std::string& text) { out_ << text << '\n'; }

void CsvWriter::comment(const std::string& text) { line("# " + text); }

void CsvWriter::columns(const std::vector<std::string>& names) { row(names); }

void CsvWriter::row(const std::vector<std::string>& cells) {
  std::string text;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) text += ',';
    text += cells[i];
  }
  line(text);
}

void CsvWriter::close() {
  out_.close();
  if (out_.fail()) throw std::runtime_error("write failed: " + path_);
}

}  // namespace tool
