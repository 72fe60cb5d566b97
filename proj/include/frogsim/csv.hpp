#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>

namespace frogsim {

// Minimal CSV emitter. Fields never contain commas here (points are encoded
// with ';'), so no quoting layer is needed.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path);
  }

  void header(std::initializer_list<std::string> cols) { write_fields(cols); }

  template <class... Ts>
  void row(const Ts&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ","), first = false, out_ << field(fields)), ...);
    out_ << '\n';
  }

  static std::string field(const std::string& s) { return s; }
  static std::string field(const char* s) { return s; }
  static std::string field(bool b) { return b ? "1" : "0"; }
  static std::string field(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
  }
  template <class T>
  static std::string field(T v) requires std::is_integral_v<T> {
    return std::to_string(v);
  }

 private:
  void write_fields(std::initializer_list<std::string> cols) {
    bool first = true;
    for (const auto& c : cols) {
      if (!first) out_ << ',';
      first = false;
      out_ << c;
    }
    out_ << '\n';
  }

  std::ofstream out_;
};

}  // namespace frogsim
