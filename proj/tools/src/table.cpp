#include "squeeze_cli/table.hpp"

#include <cstdio>

#include "squeeze/version.hpp"

namespace squeeze::cli {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

TableWriter::TableWriter(const std::string& path, const std::string& command, const Json& resolved,
                         const std::vector<std::string>& columns, const std::vector<std::string>& notes)
    : path_(path), out_(path) {
  if (!out_) throw ConfigError("output.dir", "cannot write " + path);
  out_ << "# squeeze " << kVersion << "\n";
  out_ << "# command: " << command << "\n";
  out_ << "# config: " << resolved.dump() << "\n";
  for (const auto& n : notes) out_ << "# " << n << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "\t" : "") << columns[i];
  out_ << "\n";
}

TableWriter& TableWriter::operator<<(double v) { return *this << format_number(v); }

TableWriter& TableWriter::operator<<(const std::string& s) {
  if (!first_) out_ << '\t';
  out_ << s;
  first_ = false;
  return *this;
}

void TableWriter::end_row() {
  out_ << '\n';
  first_ = true;
}

}  // namespace squeeze::cli
