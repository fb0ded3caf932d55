// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"

namespace cli_support {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

inline Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "emcap");
  std::ostringstream out;
  std::ostringstream err;
  const int code = emcap::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

/// Scratch directory for CLI output files.
inline std::filesystem::path scratch_dir() {
  const char* env = std::getenv("EMCAP_CLI_TMP");
  std::filesystem::path dir = env ? env : std::filesystem::temp_directory_path() / "emcap_cli_tmp";
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> comments;
  /// key=value pairs found in comment lines; later lines win.
  std::map<std::string, std::string> values;

  double number(const std::string& key) const { return std::stod(values.at(key)); }

  std::vector<double> column(const std::string& name) const {
    std::size_t idx = 0;
    while (idx < header.size() && header[idx] != name) ++idx;
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(std::stod(r.at(idx)));
    return out;
  }
};

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream s(line);
  while (std::getline(s, cell, sep)) out.push_back(cell);
  return out;
}

inline Csv parse(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      csv.comments.push_back(line.substr(2));
      for (const auto& token : split(line.substr(2), ' ')) {
        const auto eq = token.find('=');
        if (eq != std::string::npos) csv.values[token.substr(0, eq)] = token.substr(eq + 1);
      }
    } else if (csv.header.empty()) {
      csv.header = split(line, ',');
    } else {
      csv.rows.push_back(split(line, ','));
    }
  }
  return csv;
}

}  // namespace cli_support
