#include "cclab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace cclab {
namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

long to_long(const std::string& key, const std::string& v) {
  char* end = nullptr;
  long x = std::strtol(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size() || v.empty())
    throw ConfigError("config: key '" + key + "' needs an integer, got \"" + v + "\"");
  return x;
}

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || v.empty())
    throw ConfigError("config: key '" + key + "' needs a number, got \"" + v + "\"");
  return x;
}

template <typename T, typename F>
std::vector<T> to_list(const std::string& key, const std::string& v, F one) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(one(key, trim(item)));
  if (out.empty()) throw ConfigError("config: key '" + key + "' needs a list");
  return out;
}

// keys each kind accepts beyond kind/seed/out
const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"cover-verify", {"N", "k", "samples"}},
      {"hilbert-example", {"N", "k", "samples"}},
      {"cube-cylinder", {"N", "pieces", "trials"}},
      {"diameter", {"N", "pieces", "trials", "mesh", "budget"}},
      {"inradius", {"N", "body", "n", "restarts"}},
      {"rho-curve", {"N", "body", "n_list", "restarts"}},
      {"concentration", {"N", "n", "eps", "trials", "reps", "norm"}},
      {"sphere-cover", {"N", "n", "eps", "cover", "samples"}},
      {"projection", {"N", "rows", "f", "delta", "trials"}},
      {"translate", {"N", "eps"}},
      {"hilbert-codim", {"N", "eps"}},
      {"counterexample", {"N", "eps_list"}},
      {"hexagon", {}},
  };
  return s;
}

void apply_defaults(ExperimentConfig& c) {
  const std::string& k = c.kind;
  if (k == "cover-verify") {
    c.N = 12;
    c.k = 1;
    c.samples = 100000;
  } else if (k == "hilbert-example") {
    c.N = 20;
    c.k = 2;
    c.samples = 100000;
  } else if (k == "cube-cylinder") {
    c.N = 10;
    c.pieces = 3;
    c.trials = 50;
  } else if (k == "diameter") {
    c.N = 3;
    c.pieces = 2;
    c.trials = 100;
    c.mesh = 128;
    c.budget = 20000;
  } else if (k == "inradius") {
    c.N = 8;
    c.body = "ball(l2,1)";
    c.n = 2;
    c.restarts = 16;
  } else if (k == "rho-curve") {
    c.N = 8;
    c.body = "ball(l2,1)";
    c.n_list = {1, 2, 4};
    c.restarts = 8;
  } else if (k == "concentration") {
    c.N = 100;
    c.n = 2;
    c.eps = 0.25;
    c.trials = 100;
    c.reps = 1;
    c.norm = "linf";
  } else if (k == "sphere-cover") {
    c.N = 50;
    c.n = 1;
    c.eps = 0.3;
    c.cover = "hemispheres";
    c.samples = 1000;
  } else if (k == "projection") {
    c.N = 12;
    c.rows = 60;
    c.f = 2;
    c.delta = 0.1;
    c.trials = 1;
  } else if (k == "translate") {
    c.N = 16;
    c.eps = 0.2;
  } else if (k == "hilbert-codim") {
    c.N = 16;
    c.eps = 0.1;
  } else if (k == "counterexample") {
    c.N = 16;
    c.eps_list = {0.5, 0.1, 0.02};
  }
}

void set_key(ExperimentConfig& c, const std::string& key, const std::string& v) {
  if (key == "seed")
    c.seed = static_cast<std::uint64_t>(to_long(key, v));
  else if (key == "out")
    c.out = v;
  else if (key == "N")
    c.N = static_cast<int>(to_long(key, v));
  else if (key == "k")
    c.k = static_cast<int>(to_long(key, v));
  else if (key == "n")
    c.n = static_cast<int>(to_long(key, v));
  else if (key == "eps")
    c.eps = to_double(key, v);
  else if (key == "lambda")
    c.lambda = to_double(key, v);
  else if (key == "delta")
    c.delta = to_double(key, v);
  else if (key == "samples")
    c.samples = to_long(key, v);
  else if (key == "budget")
    c.budget = to_long(key, v);
  else if (key == "trials")
    c.trials = static_cast<int>(to_long(key, v));
  else if (key == "reps")
    c.reps = static_cast<int>(to_long(key, v));
  else if (key == "pieces")
    c.pieces = static_cast<int>(to_long(key, v));
  else if (key == "mesh")
    c.mesh = static_cast<int>(to_long(key, v));
  else if (key == "restarts")
    c.restarts = static_cast<int>(to_long(key, v));
  else if (key == "rows")
    c.rows = static_cast<int>(to_long(key, v));
  else if (key == "f")
    c.f = static_cast<int>(to_long(key, v));
  else if (key == "body")
    c.body = v;
  else if (key == "cover")
    c.cover = v;
  else if (key == "norm")
    c.norm = v;
  else if (key == "n_list")
    c.n_list = to_list<int>(key, v, [](const std::string& kk, const std::string& it) {
      return static_cast<int>(to_long(kk, it));
    });
  else if (key == "eps_list")
    c.eps_list = to_list<double>(key, v, to_double);
  else
    throw ConfigError("config: unknown key '" + key + "'");
}

void check_values(const ExperimentConfig& c) {
  auto positive = [&](const char* name, double v) {
    if (!(v > 0))
      throw ConfigError(std::string("config: '") + name + "' must be positive for kind " +
                        c.kind);
  };
  if (c.kind != "hexagon") positive("N", c.N);
  const std::set<std::string>& keys = schema().at(c.kind);
  if (keys.count("k")) positive("k", c.k);
  if (keys.count("n")) positive("n", c.n);
  if (keys.count("eps")) positive("eps", c.eps);
  if (keys.count("delta")) positive("delta", c.delta);
  if (keys.count("samples")) positive("samples", static_cast<double>(c.samples));
  if (keys.count("trials")) positive("trials", c.trials);
  if (keys.count("reps")) positive("reps", c.reps);
  if (keys.count("pieces")) positive("pieces", c.pieces);
  if (keys.count("mesh")) positive("mesh", c.mesh);
  if (keys.count("restarts")) positive("restarts", c.restarts);
  if (keys.count("rows")) positive("rows", c.rows);
  if (keys.count("f")) positive("f", c.f);
  if (keys.count("budget")) positive("budget", static_cast<double>(c.budget));
  if (keys.count("n_list"))
    for (int n : c.n_list) positive("n_list entry", n);
  if (keys.count("eps_list"))
    for (double e : c.eps_list) positive("eps_list entry", e);
  if (keys.count("cover") && c.cover != "hemispheres" && c.cover != "sectors")
    throw ConfigError("config: 'cover' must be hemispheres or sectors");
  if (keys.count("norm") && c.norm != "l1" && c.norm != "l2" && c.norm != "linf")
    throw ConfigError("config: 'norm' must be l1, l2 or linf");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> kvs;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) +
                        " is not 'key = value': \"" + line + "\"");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config: empty key or value on line " + std::to_string(lineno));
    for (const auto& kv : kvs)
      if (kv.first == key) throw ConfigError("config: duplicate key '" + key + "'");
    kvs.push_back({key, value});
  }
  ExperimentConfig cfg;
  for (const auto& kv : kvs)
    if (kv.first == "kind") cfg.kind = kv.second;
  if (cfg.kind.empty()) throw ConfigError("config: missing 'kind'");
  auto it = schema().find(cfg.kind);
  if (it == schema().end()) throw ConfigError("config: unknown kind '" + cfg.kind + "'");
  apply_defaults(cfg);
  for (const auto& kv : kvs) {
    if (kv.first == "kind") continue;
    if (kv.first != "seed" && kv.first != "out" && !it->second.count(kv.first))
      throw ConfigError("config: key '" + kv.first + "' does not apply to kind " +
                        cfg.kind);
    set_key(cfg, kv.first, kv.second);
  }
  check_values(cfg);
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace cclab
