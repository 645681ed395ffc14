#include <charconv>
#include <fstream>
#include <sstream>

#include "edgetrans/cli.hpp"
#include "edgetrans/errors.hpp"

namespace edgetrans::cli {

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw DomainError("write to '" + path + "' failed");
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\r\n";
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw ConsistencyError("csv_table: row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << "\r\n";
  }
  return os.str();
}

}  // namespace edgetrans::cli
