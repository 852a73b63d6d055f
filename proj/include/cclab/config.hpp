#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "cclab/common.hpp"

namespace cclab {

// schema violations, unknown keys, unreadable files: exit code 2 territory
struct ConfigError : Error {
  using Error::Error;
};

// One experiment: flat key = value lines, '#' starts a comment. The `kind` key
// selects the schema; keys outside the kind's schema are rejected. Defaults are
// per kind and documented in the README table.
struct ExperimentConfig {
  std::string kind;
  std::uint64_t seed = 1;
  std::string out = ".";

  int N = 0;
  int k = 1;
  int n = 1;
  double eps = 0.0;
  double lambda = 0.0;
  double delta = 0.0;
  long samples = 0;
  long budget = 0;
  int trials = 0;
  int reps = 1;
  int pieces = 2;
  int mesh = 128;
  int restarts = 16;
  int rows = 60;
  int f = 2;
  std::string body;
  std::string cover;
  std::string norm;
  std::vector<int> n_list;
  std::vector<double> eps_list;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace cclab
