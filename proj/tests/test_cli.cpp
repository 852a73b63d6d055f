#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cclab/bodies.hpp"
#include "cclab/body_io.hpp"
#include "cclab/codim.hpp"
#include "cclab/config.hpp"
#include "cclab/experiments.hpp"
#include "doctest.h"

using namespace cclab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::path("cli_scratch") / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string l;
  while (std::getline(ss, l)) out.push_back(l);
  return out;
}

std::vector<std::string> fields_of(const std::string& row) {
  std::vector<std::string> out;
  std::stringstream ss(row);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  return out;
}

// exit status of the installed binary; stdout lands in cli_scratch/stdout.txt
int run_cli(const std::string& args, const std::string& env = "") {
  fs::create_directories("cli_scratch");
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(CCLAB_CLI_PATH) + " " +
                    args + " >cli_scratch/stdout.txt 2>cli_scratch/stderr.txt";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

std::string last_stdout() { return read_file("cli_scratch/stdout.txt"); }

}  // namespace

TEST_CASE("config text: defaults, overrides, comments, lists") {
  ExperimentConfig c = parse_config_text("kind = hilbert-example\n");
  CHECK(c.kind == "hilbert-example");
  CHECK(c.N == 20);
  CHECK(c.k == 2);
  CHECK(c.samples == 100000);
  CHECK(c.seed == 1);
  CHECK(c.out == ".");

  ExperimentConfig d = parse_config_text(
      "# comment line\n"
      "kind = counterexample   # trailing comment\n"
      "\n"
      "N = 8\n"
      "eps_list = 0.5, 0.125\n"
      "seed = 7\n"
      "out = somewhere\n");
  CHECK(d.N == 8);
  CHECK(d.eps_list == std::vector<double>{0.5, 0.125});
  CHECK(d.seed == 7);
  CHECK(d.out == "somewhere");

  ExperimentConfig e = parse_config_text("kind = rho-curve\nn_list = 1,2,3\nbody = cube\n");
  CHECK(e.n_list == std::vector<int>{1, 2, 3});
  CHECK(e.body == "cube");
  CHECK(e.restarts == 8);
}

TEST_CASE("config text: rejections") {
  CHECK_THROWS_AS(parse_config_text(""), ConfigError);                       // no kind
  CHECK_THROWS_AS(parse_config_text("samples = 5\n"), ConfigError);          // no kind
  CHECK_THROWS_AS(parse_config_text("kind = nope\n"), ConfigError);          // unknown kind
  CHECK_THROWS_AS(parse_config_text("kind = hexagon\nN = 3\n"), ConfigError);  // not in schema
  CHECK_THROWS_AS(parse_config_text("kind = diameter\nbogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("kind = diameter\ntrials = x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("kind = diameter\ntrials = 5\ntrials = 6\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text("kind = diameter\ntrials\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("kind = diameter\ntrials =\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("kind = diameter\ntrials = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("kind = translate\neps = -0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("kind = sphere-cover\ncover = moons\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("kind = concentration\nnorm = l3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("kind = counterexample\neps_list = 0.5,-1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_file("no_such_file_anywhere.cfg"), ConfigError);
}

TEST_CASE("body expressions parse to the advertised sets") {
  ConvexBody b = parse_body("ball(l2, 0.5)", 4);
  Vec x = Vec::Zero(4);
  x[0] = 0.5;
  CHECK(gauge(b, x) == doctest::Approx(1.0).epsilon(1e-12));

  ConvexBody cube = parse_body("cube", 3);
  CHECK(contains(cube, Vec::Ones(3), 1e-12));
  CHECK(!contains(cube, Vec::Constant(3, 1.01), 1e-9));

  ConvexBody bx = parse_body("box(0.25)", 3);
  CHECK(gauge(bx, Vec::Ones(3)) == doctest::Approx(4.0).epsilon(1e-12));

  ConvexBody el = parse_body("ellipsoid(0.5, 1)", 3);  // axes 0.5, 1, 1
  Vec p = Vec::Zero(3);
  p[0] = 0.5;
  CHECK(gauge(el, p) == doctest::Approx(1.0).epsilon(1e-12));
  p = Vec::Zero(3);
  p[2] = 1.0;
  CHECK(gauge(el, p) == doctest::Approx(1.0).epsilon(1e-12));

  ConvexBody nb = parse_body("nearball", 4);
  Vec q = Vec::Zero(4);
  q[0] = 0.5;  // first axis half-length 1 - 2^-1
  CHECK(gauge(nb, q) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(violation(nb, q) - violation(near_ball_ellipsoid(4), q)) < 1e-15);

  ConvexBody sh = parse_body(" shift ( ball ( l2 , 1 ) , 1.5 ) ", 3);
  Vec y = Vec::Zero(3);
  y[0] = 1.5;
  y[1] = 0.9;
  CHECK(contains(sh, y, 1e-9));
  CHECK(!contains(sh, Vec::Zero(3), 1e-9));

  ConvexBody sc = parse_body("scale(cube, 0.5)", 2);
  CHECK(contains(sc, Vec::Constant(2, 0.5), 1e-12));
  CHECK(!contains(sc, Vec::Constant(2, 0.51), 1e-9));

  ConvexBody cap = parse_body("cap(cube, ball(l2, 1.2))", 2);
  Vec u = Vec::Zero(2);
  u[0] = 1.0;
  CHECK(contains(cap, u, 1e-9));
  CHECK(!contains(cap, Vec::Ones(2), 1e-9));  // norm sqrt(2) > 1.2
}

TEST_CASE("body expressions: rejections") {
  CHECK_THROWS_AS(parse_body("blob", 3), PreconditionError);
  CHECK_THROWS_AS(parse_body("ball(l3, 1)", 3), PreconditionError);
  CHECK_THROWS_AS(parse_body("ball(l2)", 3), PreconditionError);
  CHECK_THROWS_AS(parse_body("ball(l2, 1) x", 3), PreconditionError);
  CHECK_THROWS_AS(parse_body("ellipsoid(0, 1)", 3), PreconditionError);
  CHECK_THROWS_AS(parse_body("ellipsoid()", 3), PreconditionError);
  CHECK_THROWS_AS(parse_body("cap(cube)", 3), PreconditionError);
  CHECK_THROWS_AS(parse_body("cube", 0), PreconditionError);
}

TEST_CASE("execute: hexagon fills the report") {
  ExperimentConfig cfg = parse_config_text("kind = hexagon\n");
  RunReport r = execute(cfg);
  CHECK(r.status == "pass");
  CHECK(r.csv_header == "samples,mesh_points,max_needed,ok");
  REQUIRE(r.csv_rows.size() == 1);
  auto f = fields_of(r.csv_rows[0]);
  REQUIRE(f.size() == 4);
  CHECK(f[0] == "100000");
  CHECK(f[3] == "1");
  CHECK(r.config.kind == "hexagon");
}

TEST_CASE("run: writes csv and summary artifacts") {
  fs::path dir = scratch("run_artifacts");
  ExperimentConfig cfg = parse_config_text("kind = hexagon\nout = " + dir.string() + "\n");
  RunReport r = run(cfg);
  CHECK(r.status == "pass");
  REQUIRE(r.artifacts.size() == 2);
  CHECK(fs::exists(dir / "hexagon.csv"));
  CHECK(fs::exists(dir / "hexagon-summary.txt"));
  std::string csv = read_file(dir / "hexagon.csv");
  CHECK(lines_of(csv)[0] == "samples,mesh_points,max_needed,ok");
  std::string sum = read_file(dir / "hexagon-summary.txt");
  CHECK(sum.find("status: pass") != std::string::npos);
  CHECK(sum.find("wall_seconds:") != std::string::npos);
}

TEST_CASE("run: module search failure becomes status fail, not a throw") {
  fs::path dir = scratch("run_fail");
  ExperimentConfig cfg = parse_config_text(
      "kind = projection\nN = 6\nrows = 30\ntrials = 1\ndelta = 1e-6\nout = " +
      dir.string() + "\n");
  RunReport r = run(cfg);
  CHECK(r.status == "fail");
  CHECK(!r.detail.empty());
  CHECK(fs::exists(dir / "projection-summary.txt"));
}

TEST_CASE("run: precondition problems propagate to the caller") {
  ExperimentConfig cfg = parse_config_text("kind = translate\nN = 1\n");
  CHECK_THROWS_AS(run(cfg), PreconditionError);
}

TEST_CASE("batch: thread count does not change the merged output") {
  fs::path dir1 = scratch("batch_t1");
  fs::path dir2 = scratch("batch_t3");
  auto members = [] {
    std::vector<BatchMember> m;
    m.push_back({"alpha", parse_config_text("kind = hexagon\n")});
    m.push_back(
        {"beta", parse_config_text("kind = counterexample\nN = 6\neps_list = 0.5, 0.25\n")});
    return m;
  };
  BatchReport b1 = run_batch(members(), dir1.string(), 1);
  BatchReport b3 = run_batch(members(), dir2.string(), 3);
  CHECK(b1.pass);
  CHECK(b3.pass);
  REQUIRE(b1.member_status.size() == 2);
  CHECK(b1.member_status[0].first == "alpha");
  CHECK(b1.member_status[1].first == "beta");
  for (const char* name : {"batch-hexagon.csv", "batch-counterexample.csv"}) {
    std::string a = read_file(dir1 / name);
    std::string b = read_file(dir2 / name);
    CHECK(a == b);
    CHECK(lines_of(a)[0].substr(0, 5) == "name,");
  }
  CHECK(read_file(dir1 / "batch-summary.txt").find("aggregate: pass") != std::string::npos);
}

TEST_CASE("batch: a failing member fails the aggregate and is named") {
  fs::path dir = scratch("batch_fail");
  std::vector<BatchMember> m;
  m.push_back({"good", parse_config_text("kind = hexagon\n")});
  m.push_back({"bad", parse_config_text(
                          "kind = projection\nN = 6\nrows = 30\ntrials = 1\ndelta = 1e-6\n")});
  BatchReport b = run_batch(std::move(m), dir.string(), 2);
  CHECK(!b.pass);
  REQUIRE(b.failed.size() == 1);
  CHECK(b.failed[0] == "bad");
  CHECK(read_file(dir / "batch-summary.txt").find("aggregate: fail") != std::string::npos);
  CHECK_THROWS_AS(run_batch({}, dir.string(), 2), ConfigError);
}

TEST_CASE("cli: hexagon passes and reruns byte-identically") {
  fs::path d1 = scratch("cli_hex1");
  fs::path d2 = scratch("cli_hex2");
  fs::path cfg = d1 / "job.cfg";
  write_file(cfg, "kind = hexagon\nout = " + d1.string() + "\n");
  CHECK(run_cli("run " + cfg.string()) == 0);
  CHECK(last_stdout().find("status: pass") != std::string::npos);
  CHECK(run_cli("run " + cfg.string() + " --out " + d2.string()) == 0);
  CHECK(read_file(d1 / "hexagon.csv") == read_file(d2 / "hexagon.csv"));
  CHECK(lines_of(read_file(d1 / "hexagon.csv"))[0] == "samples,mesh_points,max_needed,ok");
}

TEST_CASE("cli: hilbert example reports the k=2 radius bound") {
  fs::path dir = scratch("cli_hilbert");
  fs::path cfg = dir / "job.cfg";
  write_file(cfg, "kind = hilbert-example\nsamples = 20000\nout = " + dir.string() + "\n");
  CHECK(run_cli("run " + cfg.string()) == 0);
  auto rows = lines_of(read_file(dir / "hilbert-example.csv"));
  REQUIRE(rows.size() == 3);  // header + j=1,2
  CHECK(rows[0] == "j,N,r_bound,uncovered,samples");
  auto f = fields_of(rows[2]);
  REQUIRE(f.size() == 5);
  CHECK(f[0] == "2");
  CHECK(f[1] == "20");
  CHECK(std::strtod(f[2].c_str(), nullptr) == doctest::Approx(0.7587449568).epsilon(1e-6));
  CHECK(f[3] == "0");
  CHECK(f[4] == "20000");
  CHECK(last_stdout().find("r_bound: 0.7587449") != std::string::npos);
}

TEST_CASE("cli: malformed invocations exit 2") {
  fs::path dir = scratch("cli_bad");
  CHECK(run_cli("run no_such_file.cfg") == 2);
  write_file(dir / "badkind.cfg", "kind = nope\n");
  CHECK(run_cli("run " + (dir / "badkind.cfg").string()) == 2);
  write_file(dir / "badkey.cfg", "kind = hexagon\nN = 3\n");
  CHECK(run_cli("run " + (dir / "badkey.cfg").string()) == 2);
  write_file(dir / "badval.cfg", "kind = diameter\ntrials = x\n");
  CHECK(run_cli("run " + (dir / "badval.cfg").string()) == 2);
  CHECK(run_cli("") == 2);                  // missing subcommand
  CHECK(run_cli("run") == 2);               // missing config path
  CHECK(run_cli("frobnicate x") == 2);      // unknown subcommand
  write_file(dir / "ok.cfg", "kind = hexagon\n");
  CHECK(run_cli("run " + (dir / "ok.cfg").string() + " --samples notanumber") == 2);
  // precondition surfaced by the experiment itself, not the parser
  write_file(dir / "thin.cfg", "kind = translate\nN = 1\n");
  CHECK(run_cli("run " + (dir / "thin.cfg").string()) == 2);
}

TEST_CASE("cli: a failed experiment exits 1") {
  fs::path dir = scratch("cli_fail");
  fs::path cfg = dir / "job.cfg";
  write_file(cfg, "kind = projection\nN = 6\nrows = 30\ntrials = 1\ndelta = 1e-6\nout = " +
                      dir.string() + "\n");
  CHECK(run_cli("run " + cfg.string()) == 1);
  CHECK(last_stdout().find("status: fail") != std::string::npos);
}

TEST_CASE("cli: overrides reach the experiment") {
  fs::path dir = scratch("cli_override");
  fs::path cfg = dir / "job.cfg";
  write_file(cfg, "kind = hilbert-example\nout = " + dir.string() + "\n");
  CHECK(run_cli("run " + cfg.string() + " --samples 5000 --seed 99") == 0);
  auto rows = lines_of(read_file(dir / "hilbert-example.csv"));
  CHECK(fields_of(rows[1])[4] == "5000");
  CHECK(last_stdout().find("seed: 99") != std::string::npos);

  // --budget caps trial counts
  fs::path cc = dir / "cc.cfg";
  write_file(cc, "kind = cube-cylinder\nN = 6\npieces = 2\nout = " + dir.string() + "\n");
  CHECK(run_cli("run " + cc.string() + " --budget 2") == 0);
  auto cc_rows = lines_of(read_file(dir / "cube-cylinder.csv"));
  CHECK(cc_rows.size() == 3);  // header + 2 trials
}

TEST_CASE("cli: batch runs a directory and merges by kind") {
  fs::path dir = scratch("cli_batch");
  fs::path out1 = scratch("cli_batch_out1");
  fs::path out2 = scratch("cli_batch_out2");
  write_file(dir / "alpha.cfg", "kind = hexagon\n");
  write_file(dir / "beta.cfg", "kind = counterexample\nN = 6\neps_list = 0.5, 0.25\n");
  CHECK(run_cli("batch " + dir.string() + " --out " + out1.string()) == 0);
  std::string out = last_stdout();
  CHECK(out.find("alpha: pass") != std::string::npos);
  CHECK(out.find("beta: pass") != std::string::npos);
  CHECK(out.find("aggregate: pass") != std::string::npos);
  REQUIRE(fs::exists(out1 / "batch-hexagon.csv"));
  REQUIRE(fs::exists(out1 / "batch-counterexample.csv"));
  auto rows = lines_of(read_file(out1 / "batch-counterexample.csv"));
  CHECK(rows[0] == "name,N,eps,m,tail_dist,outside,verified");
  CHECK(fields_of(rows[1])[0] == "beta");

  // worker count must not leak into the artifacts
  CHECK(run_cli("batch " + dir.string() + " --out " + out2.string(), "CCLAB_THREADS=2") == 0);
  CHECK(read_file(out1 / "batch-hexagon.csv") == read_file(out2 / "batch-hexagon.csv"));
  CHECK(read_file(out1 / "batch-counterexample.csv") ==
        read_file(out2 / "batch-counterexample.csv"));

  // a failing member: exit 1 and the name is reported
  write_file(dir / "gamma.cfg", "kind = projection\nN = 6\nrows = 30\ntrials = 1\ndelta = 1e-6\n");
  CHECK(run_cli("batch " + dir.string() + " --out " + out1.string()) == 1);
  CHECK(last_stdout().find("failed: gamma") != std::string::npos);

  // an empty directory has nothing to run
  fs::path empty = scratch("cli_batch_empty");
  CHECK(run_cli("batch " + empty.string()) == 2);
}
