#pragma once

// Flat key=value run configuration shared by all CLI commands.
//
// Format: one `key = value` pair per line; `#` starts a comment anywhere in
// a line; blank lines are ignored; later assignments win.  Unknown keys and
// malformed values raise config_error naming the offending key.  Lists are
// comma-separated.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "starframe/errors.hpp"
#include "starframe/rabi.hpp"

namespace starframe {

struct RunConfig {
  RabiParams rabi;  // omega0, beta, omega, t_total, n_grid, orders
  std::uint64_t seed = 20240901;
  int trials = 100;
  std::vector<int> dims = {2, 4, 8};
  std::vector<double> rhos = {0.5, 0.9};
  int substeps = 20;
  bool emit_svg = false;
  bool include_std0 = false;
  std::vector<std::string> frames = {"lab", "std", "biframe"};
  std::string output_path;  // empty: command-specific default
};

namespace detail {

inline std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  const std::size_t a = s.find_first_not_of(ws);
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(ws);
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string cur;
  std::stringstream ss(value);
  while (std::getline(ss, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) items.push_back(cur);
  }
  return items;
}

inline double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "': expected a number, got '" + value + "'");
  }
}

inline long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "': expected an integer, got '" + value + "'");
  }
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw config_error("config key '" + key + "': expected a boolean, got '" + value + "'");
}

}  // namespace detail

inline void validate_config(const RunConfig& cfg) {
  cfg.rabi.validate();
  if (cfg.trials < 0) throw config_error("config key 'trials': must be non-negative");
  if (cfg.dims.empty()) throw config_error("config key 'dims': must be non-empty");
  for (int d : cfg.dims)
    if (d < 1) throw config_error("config key 'dims': dimensions must be positive");
  if (cfg.rhos.empty()) throw config_error("config key 'rhos': must be non-empty");
  for (double r : cfg.rhos)
    if (!(r > 0.0 && r < 1.0))
      throw config_error("config key 'rhos': spectral radii must lie in (0, 1)");
  if (cfg.substeps < 1) throw config_error("config key 'substeps': must be at least 1");
  if (cfg.frames.empty()) throw config_error("config key 'frames': must be non-empty");
  for (const std::string& f : cfg.frames)
    if (f != "lab" && f != "std" && f != "std0" && f != "biframe")
      throw config_error("config key 'frames': unknown frame '" + f + "'");
}

inline RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream lines(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(lines, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = detail::trim(raw);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(line_no) +
                         ": expected 'key = value', got '" + line + "'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty())
      throw config_error("config line " + std::to_string(line_no) + ": empty key");

    if (key == "omega0") {
      cfg.rabi.omega0 = detail::parse_double(key, value);
    } else if (key == "beta") {
      cfg.rabi.beta = detail::parse_double(key, value);
    } else if (key == "omega") {
      cfg.rabi.omega = detail::parse_double(key, value);
    } else if (key == "t_total") {
      cfg.rabi.t_total = detail::parse_double(key, value);
    } else if (key == "n_grid") {
      cfg.rabi.n_grid = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "orders") {
      cfg.rabi.orders.clear();
      for (const std::string& item : detail::split_list(value))
        cfg.rabi.orders.push_back(static_cast<int>(detail::parse_int(key, item)));
      if (cfg.rabi.orders.empty())
        throw config_error("config key 'orders': must list at least one order");
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(detail::parse_int(key, value));
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "dims") {
      cfg.dims.clear();
      for (const std::string& item : detail::split_list(value))
        cfg.dims.push_back(static_cast<int>(detail::parse_int(key, item)));
    } else if (key == "rhos") {
      cfg.rhos.clear();
      for (const std::string& item : detail::split_list(value))
        cfg.rhos.push_back(detail::parse_double(key, item));
    } else if (key == "substeps") {
      cfg.substeps = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "emit_svg") {
      cfg.emit_svg = detail::parse_bool(key, value);
    } else if (key == "include_std0") {
      cfg.include_std0 = detail::parse_bool(key, value);
    } else if (key == "frames") {
      cfg.frames = detail::split_list(value);
    } else if (key == "output_path") {
      cfg.output_path = value;
    } else {
      throw config_error("unknown configuration key '" + key + "'");
    }
  }
  validate_config(cfg);
  return cfg;
}

inline RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

// Confirms the path can be created/appended before any computation starts;
// existing content is left untouched.
inline void ensure_writable(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "ab");
  if (!f) throw config_error("output path '" + path + "' is not writable");
  std::fclose(f);
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw config_error("output path '" + path + "' is not writable");
  out << content;
  if (!out) throw config_error("failed while writing '" + path + "'");
}

}  // namespace starframe
