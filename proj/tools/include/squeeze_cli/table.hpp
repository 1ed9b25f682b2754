#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "squeeze_cli/config.hpp"

namespace squeeze::cli {

/// Tab-separated table with a commented header carrying the engine version and the
/// resolved config. Numbers are written with 17 significant digits.
class TableWriter {
 public:
  TableWriter(const std::string& path, const std::string& command, const Json& resolved,
              const std::vector<std::string>& columns, const std::vector<std::string>& notes = {});

  TableWriter& operator<<(double v);
  TableWriter& operator<<(const std::string& s);
  void end_row();
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
  bool first_ = true;
};

std::string format_number(double v);

}  // namespace squeeze::cli
