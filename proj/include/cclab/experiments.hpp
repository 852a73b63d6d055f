#pragma once
#include <string>
#include <utility>
#include <vector>

#include "cclab/config.hpp"

namespace cclab {

struct RunReport {
  ExperimentConfig config;
  std::string status;  // pass | fail | recorded
  std::vector<std::pair<std::string, std::string>> metrics;
  std::string detail;  // witness text when the run failed
  std::string csv_header;
  std::vector<std::string> csv_rows;
  double wall_seconds = 0.0;  // summary file only, never in the CSV
  std::vector<std::string> artifacts;
};

// run the experiment without touching the filesystem
RunReport execute(const ExperimentConfig& cfg);
// execute, then write <out>/<kind>.csv and <out>/<kind>-summary.txt; module
// errors become status = fail, parameter problems propagate as config errors
RunReport run(const ExperimentConfig& cfg);

std::string summary_text(const RunReport& r);

struct BatchMember {
  std::string name;  // config file stem; the member seed derives from it
  ExperimentConfig cfg;
};
struct BatchReport {
  bool pass = false;
  std::vector<std::pair<std::string, std::string>> member_status;  // name -> status
  std::vector<std::string> failed;
  std::vector<std::string> artifacts;
  double wall_seconds = 0.0;
};
// Members run with seed ^ fnv1a(name) on up to `threads` workers; reports merge
// in name order so the output is independent of scheduling. One combined CSV
// per kind (leading name column) plus batch-summary.txt under out_dir. A failing
// member fails the aggregate; an empty member list is a config error.
BatchReport run_batch(std::vector<BatchMember> members, const std::string& out_dir,
                      int threads);

// every *.cfg in the directory, sorted by file stem; empty -> ConfigError
std::vector<BatchMember> load_batch_dir(const std::string& dir);

}  // namespace cclab
