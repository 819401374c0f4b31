#pragma once

// Test-side reference computations. Nothing here calls into the library's
// envelope code; values are derived by direct loops or closed forms.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace support {

inline std::vector<double> ones_over_i(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 1; i <= n; ++i) v[i - 1] = 1.0 / static_cast<double>(i);
  return v;
}

// h_i = 1 + (-1)^i
inline std::vector<double> alternating_h(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 1; i <= n; ++i) v[i - 1] = i % 2 == 0 ? 2.0 : 0.0;
  return v;
}

// k_i = 1 + ((1 - i) / i)^i
inline std::vector<double> sequence_k(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double di = static_cast<double>(i);
    v[i - 1] = 1.0 + std::pow((1.0 - di) / di, di);
  }
  return v;
}

struct Extremes {
  double max;
  double min;
};

// Plain loop over values[from..end).
inline Extremes extremes_from(const std::vector<double>& v, std::size_t from) {
  Extremes e{-INFINITY, INFINITY};
  for (std::size_t i = from; i < v.size(); ++i) {
    if (v[i] > e.max) e.max = v[i];
    if (v[i] < e.min) e.min = v[i];
  }
  return e;
}

// Largest |a - v_i| over the tail starting at `from`.
inline double tail_deviation(const std::vector<double>& v, std::size_t from, double a) {
  double d = 0.0;
  for (std::size_t i = from; i < v.size(); ++i) d = std::max(d, std::fabs(a - v[i]));
  return d;
}

// Largest pairwise distance in the tail starting at `from`, by brute force.
inline double tail_diameter(const std::vector<double>& v, std::size_t from) {
  double d = 0.0;
  for (std::size_t i = from; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, std::fabs(v[i] - v[j]));
  }
  return d;
}

// Skew tent slopes: rising branch (1 - b) / a, falling branch -1 / (1 - a).
inline double tent_left_slope(double a, double b) { return (1.0 - b) / a; }
inline double tent_right_slope(double a) { return -1.0 / (1.0 - a); }

// One-sided quotient of f at x with step y - x, written out directly.
template <class F>
double quotient(F f, double x, double y) {
  return (f(x) - f(y)) / (x - y);
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') q += "'\\''";
    else q += c;
  }
  return q + "'";
}

// Runs the built CLI binary in a child process and captures stdout.
inline CliResult run_cli(const std::vector<std::string>& args, const std::string& env = "") {
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += shell_quote(NEOCALC_CLI_PATH);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::filesystem::path tmp_dir() {
  std::filesystem::path p(NEOCALC_TEST_TMP);
  std::filesystem::create_directories(p);
  return p;
}

inline std::string write_file(const std::string& name, const std::string& text) {
  const auto path = tmp_dir() / name;
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

inline std::string column_csv(const std::vector<double>& v, bool header = true) {
  std::ostringstream os;
  os.precision(17);
  if (header) os << "value\n";
  for (double d : v) os << d << "\n";
  return os.str();
}

// Validates a JSON file against the shipped schema with python's jsonschema.
// Returns 0 on success, nonzero on failure, -1 when no interpreter is known.
inline int validate_with_schema(const std::string& json_path) {
  const std::string python = NEOCALC_PYTHON;
  if (python.empty()) return -1;
  const std::string script =
      "import json,sys,jsonschema;"
      "s=json.load(open(sys.argv[1]));"
      "jsonschema.validate(json.load(open(sys.argv[2])),s,cls=jsonschema.Draft202012Validator)";
  const std::string cmd = shell_quote(python) + " -c " + shell_quote(script) + " " +
                          shell_quote(NEOCALC_SCHEMA_PATH) + " " + shell_quote(json_path) + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : 1;
}

}  // namespace support
