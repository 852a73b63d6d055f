#include "cclab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "cclab/body_io.hpp"
#include "cclab/codim.hpp"
#include "cclab/concentration.hpp"
#include "cclab/covers.hpp"
#include "cclab/inradius.hpp"
#include "cclab/spaces.hpp"

namespace cclab {
namespace {

// %.17g round-trips doubles, so reruns with the same seed are byte-identical
std::string fd(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Row {
  std::string s;
  Row& raw(const std::string& v) {
    if (!s.empty()) s += ',';
    s += v;
    return *this;
  }
  Row& num(int v) { return raw(std::to_string(v)); }
  Row& num(long v) { return raw(std::to_string(v)); }
  Row& num(std::uint64_t v) { return raw(std::to_string(v)); }
  Row& num(double v) { return raw(fd(v)); }
  Row& flag(bool v) { return raw(v ? "1" : "0"); }
};

void met(RunReport& r, const char* k, const std::string& v) { r.metrics.push_back({k, v}); }
void met(RunReport& r, const char* k, double v) { met(r, k, fd(v)); }
void met(RunReport& r, const char* k, long v) { met(r, k, std::to_string(v)); }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// m random directions with every cell nonempty enough to matter: redraw until
// the pairwise gaps stay away from zero so no constraint row degenerates
std::vector<Vec> split_directions(int N, int m, Rng& rng) {
  for (int attempt = 0; attempt < 100; attempt++) {
    std::vector<Vec> u;
    for (int i = 0; i < m; i++) u.push_back(random_unit_vector(AmbientNorm::L2, N, rng));
    bool ok = true;
    for (int i = 0; i < m && ok; i++)
      for (int j = i + 1; j < m && ok; j++) ok = (u[i] - u[j]).norm() > 1e-9;
    if (ok) return u;
  }
  throw SearchError("split_directions: could not separate directions");
}

// Voronoi cells of the directions: cell i keeps x with u_i . x maximal. The
// cells are convex and their union is the whole ambient set.
std::vector<ConvexBody> voronoi_pieces(const ConvexBody& ambient, int N, int m, Rng& rng) {
  if (m == 1) return {ambient};
  std::vector<Vec> u = split_directions(N, m, rng);
  std::vector<ConvexBody> out;
  for (int i = 0; i < m; i++) {
    Mat A(m - 1, N);
    int r = 0;
    for (int j = 0; j < m; j++)
      if (j != i) A.row(r++) = (u[j] - u[i]).transpose();
    out.push_back(ConvexBody::intersection(
        {ambient, ConvexBody::polytope(A, Vec::Zero(m - 1))}));
  }
  return out;
}

// Same cells over the cube [-1,1]^N, flattened into a single polytope each.
std::vector<ConvexBody> cube_voronoi_polytopes(int N, int m, Rng& rng) {
  Mat cube = Mat::Zero(2 * N, N);
  for (int i = 0; i < N; i++) {
    cube(i, i) = 1.0;
    cube(N + i, i) = -1.0;
  }
  if (m == 1) return {ConvexBody::polytope(cube, Vec::Ones(2 * N))};
  std::vector<Vec> u = split_directions(N, m, rng);
  std::vector<ConvexBody> out;
  for (int i = 0; i < m; i++) {
    Mat A(2 * N + m - 1, N);
    Vec b(2 * N + m - 1);
    A.topRows(2 * N) = cube;
    b.head(2 * N).setOnes();
    int r = 2 * N;
    for (int j = 0; j < m; j++)
      if (j != i) {
        A.row(r) = (u[j] - u[i]).transpose();
        b[r++] = 0.0;
      }
    out.push_back(ConvexBody::polytope(A, b));
  }
  return out;
}

LipschitzFn norm_fn(const std::string& name, int N) {
  LipschitzFn f;
  if (name == "l1") {
    f.evaluator = [](const Vec& x) { return x.lpNorm<1>(); };
    f.tau = std::sqrt(static_cast<double>(N));
  } else if (name == "l2") {
    f.evaluator = [](const Vec& x) { return x.norm(); };
    f.tau = 1.0;
  } else {
    f.evaluator = [](const Vec& x) { return x.lpNorm<Eigen::Infinity>(); };
    f.tau = 1.0;
  }
  return f;
}

// cylinder over the half-plane sign * x_coord >= 0
ConvexBody halfspace_body(int N, int coord, double sign) {
  Mat A = Mat::Zero(1, N);
  A(0, coord) = -sign;
  return ConvexBody::polytope(A, Vec::Zero(1));
}

// cylinder over the planar wedge alpha <= angle(x0, x1) <= alpha + 2pi/3
ConvexBody wedge_body(int N, double alpha) {
  double beta = alpha + 2.0 * M_PI / 3.0;
  Mat A = Mat::Zero(2, N);
  A(0, 0) = std::sin(alpha);
  A(0, 1) = -std::cos(alpha);
  A(1, 0) = -std::sin(beta);
  A(1, 1) = std::cos(beta);
  return ConvexBody::polytope(A, Vec::Zero(2));
}

RunReport do_cover_verify(const ExperimentConfig& cfg) {
  RunReport r;
  Cover c = build_hilbert_cover({cfg.k, cfg.N});
  Rng rng(cfg.seed);
  CoverReport rep = verify_cover(c, cfg.samples, rng, 1e-9);
  bool ok = rep.uncovered.empty() && rep.certificate == "algebraic";
  r.status = ok ? "pass" : "fail";
  if (!ok) r.detail = std::to_string(rep.uncovered.size()) + " uncovered samples";
  met(r, "pieces", (long)c.pieces.size());
  met(r, "max_violation", rep.max_violation);
  met(r, "certificate", rep.certificate);
  r.csv_header = "k,N,samples,uncovered,max_violation,certificate";
  Row row;
  row.num(cfg.k).num(cfg.N).num(rep.total_samples).num((long)rep.uncovered.size());
  row.num(rep.max_violation).raw(rep.certificate);
  r.csv_rows = {row.s};
  return r;
}

RunReport do_hilbert_example(const ExperimentConfig& cfg) {
  RunReport r;
  Cover c = build_hilbert_cover({cfg.k, cfg.N});
  Rng rng(cfg.seed);
  CoverReport rep = verify_cover(c, cfg.samples, rng, 1e-9);
  bool ok = rep.uncovered.empty() && rep.certificate == "algebraic";
  r.status = ok ? "pass" : "fail";
  if (!ok) r.detail = std::to_string(rep.uncovered.size()) + " uncovered samples";
  met(r, "r_bound", rk_bound(cfg.k));
  met(r, "max_violation", rep.max_violation);
  met(r, "certificate", rep.certificate);
  r.csv_header = "j,N,r_bound,uncovered,samples";
  for (int j = 1; j <= cfg.k; j++) {
    Row row;
    row.num(j).num(cfg.N).num(rk_bound(j)).num((long)rep.uncovered.size());
    row.num(rep.total_samples);
    r.csv_rows.push_back(row.s);
  }
  return r;
}

RunReport do_cube_cylinder(const ExperimentConfig& cfg) {
  RunReport r;
  Rng root(cfg.seed);
  long hits = 0;
  r.csv_header = "trial,found,piece,prefix_len,verified";
  for (int t = 0; t < cfg.trials; t++) {
    Rng drv = root.derive(static_cast<std::uint64_t>(t) + 1);
    std::vector<ConvexBody> pieces = cube_voronoi_polytopes(cfg.N, cfg.pieces, drv);
    Cover c{pieces.size() == 1
                ? pieces[0]
                : ConvexBody::box(Vec::Constant(cfg.N, -1.0), Vec::Constant(cfg.N, 1.0)),
            pieces, std::nullopt};
    CubeCylinderResult res = find_cube_cylinder(c, 1e-9);
    bool verified = false;
    if (res.found) {
      verified = true;
      int fixed = static_cast<int>(res.prefix.size());
      int free = cfg.N - fixed;
      Vec v(cfg.N);
      for (int i = 0; i < fixed; i++) v[i] = res.prefix[i];
      if (free <= 16) {
        // every completion vertex of the returned prefix, re-checked from scratch
        for (long mask = 0; mask < (1L << free) && verified; mask++) {
          for (int i = 0; i < free; i++) v[fixed + i] = (mask >> i) & 1 ? 1.0 : -1.0;
          verified = contains(pieces[res.piece], v, 1e-9);
        }
      } else {
        Rng vr(drv.seed() ^ 0x76657274ull);
        for (long s = 0; s < 65536 && verified; s++) {
          for (int i = 0; i < free; i++) v[fixed + i] = vr.bits() & 1 ? 1.0 : -1.0;
          verified = contains(pieces[res.piece], v, 1e-9);
        }
      }
    }
    if (res.found && verified) hits++;
    Row row;
    row.num(t).flag(res.found).num(res.piece).num((long)res.prefix.size()).flag(verified);
    r.csv_rows.push_back(row.s);
  }
  bool all = hits == cfg.trials;
  r.status = all ? "pass" : "fail";
  if (!all)
    r.detail = "cube sub-cylinder missing or unverified in " +
               std::to_string(cfg.trials - hits) + " of " + std::to_string(cfg.trials) +
               " trials";
  met(r, "hits", hits);
  met(r, "trials", (long)cfg.trials);
  return r;
}

RunReport do_diameter(const ExperimentConfig& cfg) {
  RunReport r;
  Rng root(cfg.seed);
  long found = 0;
  r.csv_header = "trial,pieces,found,piece";
  for (int t = 0; t < cfg.trials; t++) {
    Rng drv = root.derive(static_cast<std::uint64_t>(t) + 1);
    ConvexBody ball = ConvexBody::ball(AmbientNorm::L2, Vec::Zero(cfg.N), 1.0);
    Cover c{ball, voronoi_pieces(ball, cfg.N, cfg.pieces, drv), std::nullopt};
    int piece = -1;
    try {
      piece = find_diameter(c, cfg.mesh, drv, cfg.budget).piece;
      found++;
    } catch (const SearchError&) {
    }
    Row row;
    row.num(t).num(cfg.pieces).flag(piece >= 0).num(piece);
    r.csv_rows.push_back(row.s);
  }
  double rate = cfg.trials > 0 ? static_cast<double>(found) / cfg.trials : 0.0;
  r.status = rate >= 0.99 - 1e-12 ? "pass" : "fail";
  if (r.status == "fail")
    r.detail = "diameter pair found in only " + std::to_string(found) + " of " +
               std::to_string(cfg.trials) + " trials";
  met(r, "found", found);
  met(r, "trials", (long)cfg.trials);
  met(r, "rate", rate);
  return r;
}

RunReport do_inradius(const ExperimentConfig& cfg) {
  RunReport r;
  ConvexBody body = parse_body(cfg.body, cfg.N);
  SearchOpts opts;
  opts.restarts = cfg.restarts;
  opts.seed = cfg.seed;
  InscribedBall ball = max_inscribed_ball(body, cfg.n, opts);
  Rng vr(cfg.seed ^ 0x696e726164ull);
  bool ver = verify_inscribed_ball(body, ball, AmbientNorm::L2, vr);
  r.status = ver ? "recorded" : "fail";
  if (!ver) r.detail = "witness ball failed fresh-direction verification";
  met(r, "radius", ball.radius);
  met(r, "certified", ball.certified ? "1" : "0");
  met(r, "verified", ver ? "1" : "0");
  r.csv_header = "n,radius,center_norm,certified,verified";
  Row row;
  row.num(cfg.n).num(ball.radius).num(ball.center.norm()).flag(ball.certified).flag(ver);
  r.csv_rows = {row.s};
  return r;
}

RunReport do_rho_curve(const ExperimentConfig& cfg) {
  RunReport r;
  ConvexBody body = parse_body(cfg.body, cfg.N);
  SearchOpts opts;
  opts.restarts = cfg.restarts;
  opts.seed = cfg.seed;
  RhoCurve curve = rho_hat(body, cfg.n_list, opts);
  r.status = "recorded";
  r.csv_header = "n,radius";
  for (const auto& e : curve.entries) {
    Row row;
    row.num(e.n).num(e.radius);
    r.csv_rows.push_back(row.s);
    met(r, ("radius_n" + std::to_string(e.n)).c_str(), e.radius);
  }
  return r;
}

RunReport do_concentration(const ExperimentConfig& cfg) {
  RunReport r;
  LipschitzFn f = norm_fn(cfg.norm, cfg.N);
  r.csv_header = "N,n,epsilon,trials,successes,best_oscillation,seed";
  long total = 0;
  double best = -1.0;
  for (int rep = 0; rep < cfg.reps; rep++) {
    FlatRateRow row =
        flat_success_rate(f, cfg.N, cfg.n, cfg.eps, cfg.trials,
                          cfg.seed + static_cast<std::uint64_t>(rep));
    total += row.successes;
    best = best < 0 ? row.best_oscillation : std::min(best, row.best_oscillation);
    Row cr;
    cr.num(row.N).num(row.n).num(row.epsilon).num(row.trials).num(row.successes);
    cr.num(row.best_oscillation).num(row.seed);
    r.csv_rows.push_back(cr.s);
  }
  r.status = "recorded";
  met(r, "total_successes", total);
  met(r, "total_trials", (long)cfg.trials * cfg.reps);
  met(r, "best_oscillation", best);
  return r;
}

RunReport do_sphere_cover(const ExperimentConfig& cfg) {
  RunReport r;
  std::vector<ConvexBody> pieces;
  if (cfg.cover == "hemispheres") {
    pieces = {halfspace_body(cfg.N, 0, 1.0), halfspace_body(cfg.N, 0, -1.0)};
  } else {
    for (int k = 0; k < 3; k++) pieces.push_back(wedge_body(cfg.N, 2.0 * M_PI * k / 3.0));
  }
  Rng rng(cfg.seed);
  FlatPick pick = multi_set_flat(pieces, cfg.n, cfg.eps, rng);
  Rng fresh(cfg.seed ^ 0x73706865ull);
  double maxd = 0.0;
  bool ok = pick.index >= 1 && pick.index <= static_cast<int>(pieces.size());
  for (long s = 0; s < cfg.samples && ok; s++) {
    Vec y = pick.subspace.basis *
            random_unit_vector(AmbientNorm::L2, pick.subspace.dim(), fresh);
    double d = dist_to_body(pieces[pick.index - 1], y).value;
    maxd = std::max(maxd, d);
    ok = d <= cfg.eps + 1e-6;
  }
  r.status = ok ? "pass" : "fail";
  if (!ok) r.detail = "fresh subspace sample " + fd(maxd) + " from the picked piece";
  met(r, "piece", (long)pick.index);
  met(r, "dim_f", (long)pick.subspace.dim());
  met(r, "max_dist", maxd);
  r.csv_header = "N,n,eps,cover,piece,dim_f,samples,max_dist";
  Row row;
  row.num(cfg.N).num(cfg.n).num(cfg.eps).raw(cfg.cover).num(pick.index);
  row.num(pick.subspace.dim()).num(cfg.samples).num(maxd);
  r.csv_rows = {row.s};
  return r;
}

RunReport do_projection(const ExperimentConfig& cfg) {
  RunReport r;
  Rng root(cfg.seed);
  r.csv_header = "trial,n_functionals,dim_y,idempotence,gauge_ok";
  bool all = true;
  double worst_idem = 0.0;
  for (int t = 0; t < cfg.trials; t++) {
    Rng drv = root.derive(static_cast<std::uint64_t>(t) + 1);
    long nf = 0;
    int dim_y = -1;
    double idem = 0.0;
    bool ok = false;
    try {
      Mat A(cfg.rows, cfg.N);
      for (int i = 0; i < cfg.rows; i++)
        for (int j = 0; j < cfg.N; j++) A(i, j) = drv.gaussian();
      ConvexBody body = ConvexBody::polytope(A, Vec::Ones(cfg.rows));
      Subspace F = random_subspace(cfg.N, cfg.f, drv);
      ProjectionSystem sys = build_projection(body, F, cfg.delta, drv);
      nf = static_cast<long>(sys.functionals.size());
      dim_y = sys.Y.dim();
      idem = (sys.P * sys.P - sys.P).cwiseAbs().maxCoeff();
      ok = idem <= 1e-8;
      // the gauge bound is only promised on F + Y, so the fresh draws live there
      Rng fresh(drv.seed() ^ 0x70726f6aull);
      for (int s = 0; s < 10000 && ok; s++) {
        Vec z = Vec::Zero(cfg.N);
        for (int j = 0; j < cfg.f; j++) z += fresh.gaussian() * F.basis.col(j);
        for (int j = 0; j < dim_y; j++) z += fresh.gaussian() * sys.Y.basis.col(j);
        ok = gauge(body, sys.P * z) <= (1.0 + cfg.delta) * gauge(body, z) + 1e-6;
      }
    } catch (const Error& e) {
      ok = false;
      if (r.detail.empty()) r.detail = e.what();
    }
    worst_idem = std::max(worst_idem, idem);
    all = all && ok;
    Row row;
    row.num(t).num(nf).num(dim_y).num(idem).flag(ok);
    r.csv_rows.push_back(row.s);
  }
  r.status = all ? "pass" : "fail";
  if (!all && r.detail.empty()) r.detail = "projected gauge exceeded the declared slack";
  met(r, "worst_idempotence", worst_idem);
  met(r, "trials", (long)cfg.trials);
  return r;
}

// 9 x 5 offset grid, step 1/8, in the first two coordinates
std::vector<Vec> planar_grid(int N) {
  std::vector<Vec> O;
  for (int i = -4; i <= 4; i++)
    for (int j = -2; j <= 2; j++) {
      Vec o = Vec::Zero(N);
      o[0] = 0.125 * i;
      o[1] = 0.125 * j;
      O.push_back(o);
    }
  return O;
}

RunReport do_translate(const ExperimentConfig& cfg) {
  if (cfg.N < 2) throw PreconditionError("translate: N must be at least 2");
  RunReport r;
  ConvexBody A = near_ball_ellipsoid(cfg.N);
  Rng rng(cfg.seed);
  TranslateResult tr = translate_theorem({A, planar_grid(cfg.N), cfg.eps}, rng);
  r.status = "pass";
  met(r, "dim_y", (long)tr.Y.dim());
  met(r, "translates", (long)tr.H.size());
  met(r, "max_dist", tr.max_dist);
  met(r, "cover_slack", tr.cover_slack);
  met(r, "refined", tr.refined ? "1" : "0");
  r.csv_header = "N,eps,dim_y,h_count,max_dist,cover_slack,refined";
  Row row;
  row.num(cfg.N).num(cfg.eps).num(tr.Y.dim()).num((long)tr.H.size());
  row.num(tr.max_dist).num(tr.cover_slack).flag(tr.refined);
  r.csv_rows = {row.s};
  return r;
}

RunReport do_hilbert_codim(const ExperimentConfig& cfg) {
  RunReport r;
  Rng rng(cfg.seed);
  HilbertCodimReport rep =
      hilbert_codim(near_ball_ellipsoid(cfg.N), dyadic_box(cfg.N), cfg.eps, rng);
  r.status = "pass";
  met(r, "delta", rep.delta);
  met(r, "cut", (long)rep.cut);
  met(r, "dim_y", (long)rep.Y.dim());
  met(r, "max_dist", rep.max_dist);
  r.csv_header = "N,eps,delta,cut,dim_y,max_dist,samples";
  Row row;
  row.num(cfg.N).num(cfg.eps).num(rep.delta).num(rep.cut).num(rep.Y.dim());
  row.num(rep.max_dist).num(rep.samples);
  r.csv_rows = {row.s};
  return r;
}

RunReport do_counterexample(const ExperimentConfig& cfg) {
  RunReport r;
  Rng rng(cfg.seed);
  CounterexampleReport rep = counterexample_check(cfg.N, cfg.eps_list, rng);
  double axis_err = 0.0;
  for (const auto& a : rep.axis) axis_err = std::max(axis_err, std::abs(a.dist - a.expected));
  bool eps_ok = true;
  r.csv_header = "N,eps,m,tail_dist,outside,verified";
  for (const auto& e : rep.eps_rows) {
    eps_ok = eps_ok && e.outside && e.verified;
    Row row;
    row.num(cfg.N).num(e.eps).num(e.m).num(e.tail_dist).flag(e.outside).flag(e.verified);
    r.csv_rows.push_back(row.s);
  }
  bool ok = rep.split_ok && axis_err <= 1e-9 && eps_ok;
  r.status = ok ? "pass" : "fail";
  if (!ok) r.detail = "split_ok=" + std::string(rep.split_ok ? "1" : "0") +
                      " axis_err=" + fd(axis_err);
  met(r, "split_samples", rep.split_samples);
  met(r, "split_max", rep.split_max);
  met(r, "axis_max_err", axis_err);
  return r;
}

RunReport do_hexagon(const ExperimentConfig&) {
  RunReport r;
  HexagonReport rep = hexagon_check();
  r.status = rep.ok ? "pass" : "fail";
  if (!rep.ok) r.detail = "uncovered disk point, needed " + fd(rep.max_needed);
  met(r, "max_needed", rep.max_needed);
  r.csv_header = "samples,mesh_points,max_needed,ok";
  Row row;
  row.num(rep.samples).num(rep.mesh_points).num(rep.max_needed).flag(rep.ok);
  r.csv_rows = {row.s};
  return r;
}

}  // namespace

RunReport execute(const ExperimentConfig& cfg) {
  RunReport r;
  if (cfg.kind == "cover-verify") r = do_cover_verify(cfg);
  else if (cfg.kind == "hilbert-example") r = do_hilbert_example(cfg);
  else if (cfg.kind == "cube-cylinder") r = do_cube_cylinder(cfg);
  else if (cfg.kind == "diameter") r = do_diameter(cfg);
  else if (cfg.kind == "inradius") r = do_inradius(cfg);
  else if (cfg.kind == "rho-curve") r = do_rho_curve(cfg);
  else if (cfg.kind == "concentration") r = do_concentration(cfg);
  else if (cfg.kind == "sphere-cover") r = do_sphere_cover(cfg);
  else if (cfg.kind == "projection") r = do_projection(cfg);
  else if (cfg.kind == "translate") r = do_translate(cfg);
  else if (cfg.kind == "hilbert-codim") r = do_hilbert_codim(cfg);
  else if (cfg.kind == "counterexample") r = do_counterexample(cfg);
  else if (cfg.kind == "hexagon") r = do_hexagon(cfg);
  else throw ConfigError("unknown kind: " + cfg.kind);
  r.config = cfg;
  return r;
}

std::string summary_text(const RunReport& r) {
  std::ostringstream o;
  o << "kind: " << r.config.kind << "\n";
  o << "status: " << r.status << "\n";
  o << "seed: " << r.config.seed << "\n";
  for (const auto& [k, v] : r.metrics) o << k << ": " << v << "\n";
  if (!r.detail.empty()) o << "detail: " << r.detail << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", r.wall_seconds);
  o << "wall_seconds: " << buf << "\n";
  return o.str();
}

RunReport run(const ExperimentConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  RunReport r;
  try {
    r = execute(cfg);
  } catch (const ConfigError&) {
    throw;
  } catch (const PreconditionError&) {
    throw;  // parameter problems are the caller's, not a failed experiment
  } catch (const Error& e) {
    r.config = cfg;
    r.status = "fail";
    r.detail = e.what();
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out);
  if (!r.csv_header.empty()) {
    std::string p = cfg.out + "/" + cfg.kind + ".csv";
    std::ofstream f(p, std::ios::binary);
    f << r.csv_header << "\n";
    for (const auto& row : r.csv_rows) f << row << "\n";
    r.artifacts.push_back(p);
  }
  std::string sp = cfg.out + "/" + cfg.kind + "-summary.txt";
  std::ofstream f(sp, std::ios::binary);
  f << summary_text(r);
  r.artifacts.push_back(sp);
  return r;
}

std::vector<BatchMember> load_batch_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw ConfigError("batch: not a directory: " + dir);
  std::vector<BatchMember> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".cfg") continue;
    out.push_back({e.path().stem().string(), parse_config_file(e.path().string())});
  }
  std::sort(out.begin(), out.end(),
            [](const BatchMember& a, const BatchMember& b) { return a.name < b.name; });
  if (out.empty()) throw ConfigError("batch: no .cfg files under " + dir);
  return out;
}

BatchReport run_batch(std::vector<BatchMember> members, const std::string& out_dir,
                      int threads) {
  if (members.empty()) throw ConfigError("batch: no members");
  std::sort(members.begin(), members.end(),
            [](const BatchMember& a, const BatchMember& b) { return a.name < b.name; });
  // each member owns a stream derived from its name, so results do not depend
  // on scheduling or on what else sits in the directory
  for (auto& m : members) m.cfg.seed ^= fnv1a(m.name);
  auto t0 = std::chrono::steady_clock::now();
  size_t n = members.size();
  std::vector<RunReport> reports(n);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      RunReport rr;
      try {
        rr = execute(members[i].cfg);
      } catch (const Error& e) {
        rr.config = members[i].cfg;
        rr.status = "fail";
        rr.detail = e.what();
      } catch (const std::exception& e) {
        rr.config = members[i].cfg;
        rr.status = "fail";
        rr.detail = e.what();
      }
      reports[i] = std::move(rr);
    }
  };
  int nt = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int i = 0; i + 1 < nt; i++) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  BatchReport b;
  b.pass = true;
  b.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::map<std::string, std::pair<std::string, std::vector<std::string>>> tables;
  for (size_t i = 0; i < n; i++) {
    const RunReport& rr = reports[i];
    b.member_status.push_back({members[i].name, rr.status});
    if (rr.status == "fail") {
      b.pass = false;
      b.failed.push_back(members[i].name);
    }
    if (rr.csv_header.empty()) continue;
    auto& t = tables[rr.config.kind];
    if (t.first.empty()) t.first = "name," + rr.csv_header;
    for (const auto& row : rr.csv_rows) t.second.push_back(members[i].name + "," + row);
  }
  for (const auto& [kind, t] : tables) {
    std::string p = out_dir + "/batch-" + kind + ".csv";
    std::ofstream f(p, std::ios::binary);
    f << t.first << "\n";
    for (const auto& row : t.second) f << row << "\n";
    b.artifacts.push_back(p);
  }
  std::string sp = out_dir + "/batch-summary.txt";
  {
    std::ofstream f(sp, std::ios::binary);
    f << "members: " << n << "\n";
    for (const auto& [name, status] : b.member_status) f << name << ": " << status << "\n";
    if (!b.failed.empty()) {
      f << "failed:";
      for (const auto& name : b.failed) f << " " << name;
      f << "\n";
    }
    f << "aggregate: " << (b.pass ? "pass" : "fail") << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", b.wall_seconds);
    f << "wall_seconds: " << buf << "\n";
  }
  b.artifacts.push_back(sp);
  return b;
}

}  // namespace cclab
