#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cclab/experiments.hpp"

using namespace cclab;

namespace {

// --budget is a single knob for "how hard to try": it caps trial counts,
// restart counts, and search budgets alike
void apply_overrides(ExperimentConfig& cfg, bool has_seed, std::uint64_t seed,
                     bool has_out, const std::string& out, bool has_samples,
                     long samples, bool has_budget, long budget) {
  if (has_seed) cfg.seed = seed;
  if (has_out) cfg.out = out;
  if (has_samples) cfg.samples = samples;
  if (has_budget) {
    cfg.budget = budget;
    cfg.trials = static_cast<int>(budget);
    cfg.restarts = static_cast<int>(budget);
  }
}

int env_threads() {
  const char* v = std::getenv("CCLAB_THREADS");
  if (!v) return 4;
  long t = std::strtol(v, nullptr, 10);
  return t >= 1 ? static_cast<int>(t) : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convex cover lab"};
  app.require_subcommand(1);

  std::string run_path, batch_dir, out;
  std::uint64_t seed = 0;
  long samples = 0, budget = 0;

  CLI::App* runc = app.add_subcommand("run", "run one experiment config file");
  runc->add_option("config", run_path, "experiment config file")->required();
  runc->add_option("--seed", seed, "override the seed");
  runc->add_option("--out", out, "override the output directory");
  runc->add_option("--samples", samples, "override the sample count");
  runc->add_option("--budget", budget, "cap trials, restarts and search budgets");

  CLI::App* batchc = app.add_subcommand("batch", "run every .cfg file in a directory");
  batchc->add_option("dir", batch_dir, "directory of member configs")->required();
  batchc->add_option("--seed", seed, "override every member seed (pre-derivation)");
  batchc->add_option("--out", out, "output directory (default: the batch dir)");
  batchc->add_option("--samples", samples, "override every member sample count");
  batchc->add_option("--budget", budget, "cap trials, restarts and search budgets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // malformed usage is a config problem
  }

  try {
    if (runc->parsed()) {
      ExperimentConfig cfg = parse_config_file(run_path);
      apply_overrides(cfg, runc->count("--seed") > 0, seed, runc->count("--out") > 0, out,
                      runc->count("--samples") > 0, samples, runc->count("--budget") > 0,
                      budget);
      RunReport rep = run(cfg);
      std::cout << summary_text(rep);
      for (const auto& a : rep.artifacts) std::cout << "wrote: " << a << "\n";
      return rep.status == "fail" ? 1 : 0;
    }
    std::vector<BatchMember> members = load_batch_dir(batch_dir);
    for (auto& m : members)
      apply_overrides(m.cfg, batchc->count("--seed") > 0, seed, false, out,
                      batchc->count("--samples") > 0, samples,
                      batchc->count("--budget") > 0, budget);
    std::string out_dir = batchc->count("--out") > 0 ? out : batch_dir;
    BatchReport rep = run_batch(std::move(members), out_dir, env_threads());
    for (const auto& [name, status] : rep.member_status)
      std::cout << name << ": " << status << "\n";
    std::cout << "aggregate: " << (rep.pass ? "pass" : "fail") << "\n";
    if (!rep.failed.empty()) {
      std::cout << "failed:";
      for (const auto& name : rep.failed) std::cout << " " << name;
      std::cout << "\n";
    }
    for (const auto& a : rep.artifacts) std::cout << "wrote: " << a << "\n";
    return rep.pass ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
