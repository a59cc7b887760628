#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heunqes/model.hpp"

namespace heunqes::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kConfigError = 2,
  kNoRoot = 3,
};

struct RunConfig {
  PhysicalParams physical;
  int n = 1;
  std::optional<int> n_max;
  std::vector<int> l_list;
  int samples = 201;
  std::optional<double> rho_max;
  std::vector<int> grid{4000};
  std::optional<std::string> output;
  std::string format;  // empty: command default
  int jobs = 0;        // 0: all available processors
  double perturb_omega = 1.0;
  int root_index = 0;
};

// 12 significant digits, shortest form that reproduces the 12-digit value;
// scientific notation below 1e-4 and from 1e6 up.
std::string format_number(double value);

// Shortest text that parses back to exactly `value`.
std::string format_exact(double value);

// Flat "key = value" lines; '#' starts a comment.  Throws std::runtime_error
// on malformed lines.
std::map<std::string, std::string> parse_config_text(const std::string& text);

// Applies one key/value pair to the config; throws std::runtime_error for
// unknown keys or unparsable values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

// '#'-prefixed run header echoing every parameter of the command.
std::string run_header(const std::string& command, const RunConfig& config);

// Entry point shared by the executable and the tests.  args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heunqes::cli
