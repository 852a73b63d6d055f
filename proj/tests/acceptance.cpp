// Acceptance harness: one criterion per invocation (--criterion N), one
// [PASS]/[FAIL] line on stdout, exit 0/1. Criterion 12 reruns the others and
// demands byte-identical digests. Thresholds are pinned inline.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "cclab/bodies.hpp"
#include "cclab/codim.hpp"
#include "cclab/concentration.hpp"
#include "cclab/covers.hpp"
#include "cclab/inradius.hpp"
#include "cclab/rng.hpp"
#include "cclab/spaces.hpp"

using namespace cclab;

namespace {

std::string fd(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
  std::string digest;  // deterministic fingerprint for the rerun check
};

void dig(Outcome& o, const std::string& line) {
  o.digest += line;
  o.digest += '\n';
}

double now_s() {
  using clk = std::chrono::steady_clock;
  static const clk::time_point t0 = clk::now();
  return std::chrono::duration<double>(clk::now() - t0).count();
}

std::vector<Vec> separated_directions(int N, int m, Rng& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Vec> u;
    for (int i = 0; i < m; ++i) u.push_back(random_unit_vector(AmbientNorm::L2, N, rng));
    bool ok = true;
    for (int i = 0; i < m && ok; ++i)
      for (int j = i + 1; j < m && ok; ++j) ok = (u[i] - u[j]).norm() > 1e-9;
    if (ok) return u;
  }
  throw SearchError("separated_directions: degenerate draw");
}

// cell i of the max-inner-product partition, intersected with the ball
std::vector<ConvexBody> ball_cells(int N, int m, Rng& rng) {
  ConvexBody ball = ConvexBody::ball(AmbientNorm::L2, Vec::Zero(N), 1.0);
  if (m == 1) return {ball};
  std::vector<Vec> u = separated_directions(N, m, rng);
  std::vector<ConvexBody> out;
  for (int i = 0; i < m; ++i) {
    Mat A(m - 1, N);
    int r = 0;
    for (int j = 0; j < m; ++j)
      if (j != i) A.row(r++) = (u[j] - u[i]).transpose();
    out.push_back(ConvexBody::intersection({ball, ConvexBody::polytope(A, Vec::Zero(m - 1))}));
  }
  return out;
}

// the same cells over [-1,1]^N, each flattened to a single polytope
std::vector<ConvexBody> cube_cells(int N, int m, Rng& rng) {
  Mat cube = Mat::Zero(2 * N, N);
  for (int i = 0; i < N; ++i) {
    cube(i, i) = 1.0;
    cube(N + i, i) = -1.0;
  }
  if (m == 1) return {ConvexBody::polytope(cube, Vec::Ones(2 * N))};
  std::vector<Vec> u = separated_directions(N, m, rng);
  std::vector<ConvexBody> out;
  for (int i = 0; i < m; ++i) {
    Mat A(2 * N + m - 1, N);
    Vec b(2 * N + m - 1);
    A.topRows(2 * N) = cube;
    b.head(2 * N).setOnes();
    int r = 2 * N;
    for (int j = 0; j < m; ++j)
      if (j != i) {
        A.row(r) = (u[j] - u[i]).transpose();
        b[r++] = 0.0;
      }
    out.push_back(ConvexBody::polytope(A, b));
  }
  return out;
}

ConvexBody halfspace_piece(int N, double sign) {
  Mat A = Mat::Zero(1, N);
  A(0, 0) = -sign;
  return ConvexBody::polytope(A, Vec::Zero(1));
}

ConvexBody wedge_piece(int N, double alpha) {
  double beta = alpha + 2.0 * M_PI / 3.0;
  Mat A = Mat::Zero(2, N);
  A(0, 0) = std::sin(alpha);
  A(0, 1) = -std::cos(alpha);
  A(1, 0) = -std::sin(beta);
  A(1, 1) = std::cos(beta);
  return ConvexBody::polytope(A, Vec::Zero(2));
}

// 1. Cover identity over the (k, N) grid: no uncovered samples, algebraic
// certificate, under 10 s per case.
Outcome crit1() {
  Outcome o;
  o.pass = true;
  double worst_case_s = 0.0;
  for (int k : {1, 2, 3})
    for (int N : {5, 20, 50}) {
      double t0 = now_s();
      Cover c = build_hilbert_cover({k, N});
      Rng rng(0xACC1 ^ static_cast<std::uint64_t>(k * 1000 + N));
      CoverReport rep = verify_cover(c, 100000, rng, 1e-9);
      double dt = now_s() - t0;
      worst_case_s = std::max(worst_case_s, dt);
      bool ok = rep.uncovered.empty() && rep.certificate == "algebraic" && dt < 10.0;
      o.pass = o.pass && ok;
      dig(o, "k=" + std::to_string(k) + " N=" + std::to_string(N) +
                 " uncovered=" + std::to_string(rep.uncovered.size()) +
                 " max_violation=" + fd(rep.max_violation) + " cert=" + rep.certificate);
      if (!ok && o.detail.empty())
        o.detail = "k=" + std::to_string(k) + " N=" + std::to_string(N) + " uncovered=" +
                   std::to_string(rep.uncovered.size()) + " in " + fd(dt) + "s";
    }
  if (o.pass)
    o.detail = "9 cases, 1e5 samples each, algebraic certificate, worst case " +
               fd(worst_case_s) + "s < 10s";
  return o;
}

// 2. Searched inscribed-ball radii of the cover pieces against the closed-form
// bound (+1e-3), and the n=1 witness strictly below 0.95.
Outcome crit2() {
  Outcome o;
  double bound1 = rk_bound(1) + 1e-3;
  double bound2 = rk_bound(2) + 1e-3;
  double worst1 = 0.0, worst2 = 0.0, worst_r1 = 0.0;
  Cover c1 = build_hilbert_cover({1, 12});
  for (size_t j = 0; j < c1.pieces.size(); ++j) {
    SearchOpts opt;
    opt.restarts = 16;
    opt.seed = 0xACC2 + j;
    InscribedBall b2 = max_inscribed_ball(c1.pieces[j], 2, opt);
    worst1 = std::max(worst1, b2.radius);
    SearchOpts o1 = opt;
    o1.seed = 0xACC2 + 100 + j;
    InscribedBall b1 = max_inscribed_ball(c1.pieces[j], 1, o1);
    worst_r1 = std::max(worst_r1, b1.radius);
    dig(o, "k1_piece" + std::to_string(j) + " r2=" + fd(b2.radius) + " r1=" + fd(b1.radius));
  }
  Cover c2 = build_hilbert_cover({2, 12});
  for (size_t j = 0; j < c2.pieces.size(); ++j) {
    SearchOpts opt;
    opt.restarts = 16;
    opt.seed = 0xACC2 + 200 + j;
    InscribedBall b2 = max_inscribed_ball(c2.pieces[j], 2, opt);
    worst2 = std::max(worst2, b2.radius);
    dig(o, "k2_piece" + std::to_string(j) + " r2=" + fd(b2.radius));
  }
  o.pass = worst1 <= bound1 && worst2 <= bound2 && worst_r1 < 0.95;
  o.detail = "worst k=1 radius " + fd(worst1) + " vs " + fd(bound1) + ", worst k=2 radius " +
             fd(worst2) + " vs " + fd(bound2) + ", worst n=1 radius " + fd(worst_r1) +
             " vs 0.95";
  return o;
}

// 3. Hexagon translate cover at tolerance 1e-9.
Outcome crit3() {
  Outcome o;
  HexagonReport rep = hexagon_check();
  o.pass = rep.ok && rep.samples == 100000 && rep.mesh_points == 512 &&
           rep.max_needed <= 1e-9;
  o.detail = "1e5 samples + 512-gon mesh, max needed slack " + fd(rep.max_needed);
  dig(o, "samples=" + std::to_string(rep.samples) + " mesh=" +
             std::to_string(rep.mesh_points) + " max_needed=" + fd(rep.max_needed));
  return o;
}

// 4. Antipodal pair inside one piece for random 2- and 3-cell covers of the
// 3-ball, at least 99 of 100 runs, mesh resolution 128.
Outcome crit4() {
  Outcome o;
  Rng root(0xACC4);
  int hits = 0;
  for (int t = 0; t < 100; ++t) {
    int m = t < 50 ? 2 : 3;
    Rng drv = root.derive(static_cast<std::uint64_t>(t) + 1);
    std::vector<ConvexBody> pieces = ball_cells(3, m, drv);
    Cover c{ConvexBody::ball(AmbientNorm::L2, Vec::Zero(3), 1.0), pieces, std::nullopt};
    int piece = -1;
    try {
      DiameterResult res = find_diameter(c, 128, drv, 20000);
      if (contains(pieces[res.piece], res.x, 1e-6) &&
          contains(pieces[res.piece], Vec(-res.x), 1e-6)) {
        piece = res.piece;
        ++hits;
      }
    } catch (const SearchError&) {
    }
    dig(o, "t=" + std::to_string(t) + " m=" + std::to_string(m) +
               " piece=" + std::to_string(piece));
  }
  o.pass = hits >= 99;
  o.detail = std::to_string(hits) + "/100 runs held an antipodal pair at tol 1e-6";
  return o;
}

// 5. A vertex-verified sub-cube cylinder in every random 3-polytope cover of
// the 10-cube; every completion vertex re-checked.
Outcome crit5() {
  Outcome o;
  Rng root(0xACC5);
  int verified = 0;
  for (int t = 0; t < 50; ++t) {
    Rng drv = root.derive(static_cast<std::uint64_t>(t) + 1);
    std::vector<ConvexBody> pieces = cube_cells(10, 3, drv);
    Cover c{ConvexBody::box(Vec::Constant(10, -1.0), Vec::Constant(10, 1.0)), pieces,
            std::nullopt};
    CubeCylinderResult res = find_cube_cylinder(c, 1e-9);
    bool ok = res.found;
    if (ok) {
      int fixed = static_cast<int>(res.prefix.size());
      int free = 10 - fixed;
      Vec v(10);
      for (int i = 0; i < fixed; ++i) v[i] = res.prefix[i];
      for (long mask = 0; mask < (1L << free) && ok; ++mask) {
        for (int i = 0; i < free; ++i) v[fixed + i] = (mask >> i) & 1 ? 1.0 : -1.0;
        ok = contains(pieces[res.piece], v, 1e-9);
      }
    }
    if (ok) ++verified;
    dig(o, "t=" + std::to_string(t) + " piece=" + std::to_string(res.piece) +
               " prefix_len=" + std::to_string(res.prefix.size()) +
               " ok=" + std::to_string(ok ? 1 : 0));
  }
  o.pass = verified == 50;
  o.detail = std::to_string(verified) + "/50 covers yielded a vertex-verified sub-cylinder";
  return o;
}

// 6. Sup-norm flatness: median success rate non-decreasing in N within 0.1,
// and a genuinely flat best subspace at N=400.
Outcome crit6() {
  Outcome o;
  LipschitzFn f{[](const Vec& x) { return x.lpNorm<Eigen::Infinity>(); }, 1.0};
  const int Ns[4] = {50, 100, 200, 400};
  double med[4] = {0, 0, 0, 0};
  double best400 = 1e300;
  for (int i = 0; i < 4; ++i) {
    std::vector<double> rates;
    double best = 1e300;
    for (int rep = 0; rep < 20; ++rep) {
      FlatRateRow row = flat_success_rate(f, Ns[i], 2, 0.25, 100,
                                          0xACC6 + 1000ull * i + static_cast<std::uint64_t>(rep));
      rates.push_back(static_cast<double>(row.successes) / 100.0);
      best = std::min(best, row.best_oscillation);
      dig(o, "N=" + std::to_string(Ns[i]) + " rep=" + std::to_string(rep) +
                 " successes=" + std::to_string(row.successes) +
                 " best_osc=" + fd(row.best_oscillation));
    }
    std::sort(rates.begin(), rates.end());
    med[i] = 0.5 * (rates[9] + rates[10]);
    if (Ns[i] == 400) best400 = best;
  }
  bool trend = med[1] >= med[0] - 0.1 && med[2] >= med[1] - 0.1 && med[3] >= med[2] - 0.1;
  o.pass = trend && best400 <= 0.5;
  o.detail = "medians " + fd(med[0]) + " " + fd(med[1]) + " " + fd(med[2]) + " " + fd(med[3]) +
             " (slack 0.1), best oscillation at N=400 " + fd(best400) + " <= 0.5";
  return o;
}

// 7. Hemisphere and 3-sector covers of the 49- and 59-spheres: the returned
// piece holds the whole subspace sphere within eps on 1e3 fresh samples.
Outcome crit7() {
  Outcome o;
  o.pass = true;
  int combo = 0;
  for (int N : {50, 60})
    for (int sectors : {0, 1})
      for (double eps : {0.3, 0.4}) {
        ++combo;
        std::vector<ConvexBody> pieces;
        if (sectors == 0) {
          pieces = {halfspace_piece(N, 1.0), halfspace_piece(N, -1.0)};
        } else {
          for (int k = 0; k < 3; ++k) pieces.push_back(wedge_piece(N, 2.0 * M_PI * k / 3.0));
        }
        Rng rng(0xACC7 + 100ull * combo);
        FlatPick pick = multi_set_flat(pieces, 1, eps, rng);
        Rng fresh(0xACC7 + 100ull * combo + 7);
        double maxd = 0.0;
        bool ok = pick.index >= 1 && pick.index <= static_cast<int>(pieces.size());
        for (int s = 0; s < 1000 && ok; ++s) {
          Vec y = pick.subspace.basis * random_unit_vector(AmbientNorm::L2, 1, fresh);
          double d = dist_to_body(pieces[pick.index - 1], y).value;
          maxd = std::max(maxd, d);
          ok = d <= eps + 1e-6;
        }
        o.pass = o.pass && ok;
        dig(o, "N=" + std::to_string(N) + " pieces=" + std::to_string(pieces.size()) +
                   " eps=" + fd(eps) + " index=" + std::to_string(pick.index) +
                   " max_dist=" + fd(maxd));
        if (!ok && o.detail.empty())
          o.detail = "N=" + std::to_string(N) + " eps=" + fd(eps) + " max_dist=" + fd(maxd);
      }
  if (o.pass) o.detail = "8 cover/sphere/eps combinations, 1e3 fresh samples each";
  return o;
}

// 8. Gauge-controlled projections on 20 random polytopes: idempotent within
// 1e-8 and gauge growth within factor 1.1 (+1e-6) on 1e4 samples each.
Outcome crit8() {
  Outcome o;
  Rng root(0xACC8);
  int passed = 0;
  double worst_idem = 0.0;
  for (int t = 0; t < 20; ++t) {
    Rng drv = root.derive(static_cast<std::uint64_t>(t) + 1);
    Mat A(60, 12);
    for (int i = 0; i < 60; ++i)
      for (int j = 0; j < 12; ++j) A(i, j) = drv.gaussian();
    ConvexBody body = ConvexBody::polytope(A, Vec::Ones(60));
    Subspace F = random_subspace(12, 2, drv);
    bool ok = false;
    double idem = -1.0;
    try {
      ProjectionSystem sys = build_projection(body, F, 0.1, drv);
      idem = (sys.P * sys.P - sys.P).cwiseAbs().maxCoeff();
      worst_idem = std::max(worst_idem, idem);
      ok = idem <= 1e-8;
      // the gauge bound is promised on Z = F + Y, so sample there
      Rng fresh(drv.seed() ^ 0x70726f6aull);
      int dy = sys.Y.dim();
      for (int s = 0; s < 10000 && ok; ++s) {
        Vec z = Vec::Zero(12);
        for (int j = 0; j < 2; ++j) z += fresh.gaussian() * F.basis.col(j);
        for (int j = 0; j < dy; ++j) z += fresh.gaussian() * sys.Y.basis.col(j);
        ok = gauge(body, sys.P * z) <= 1.1 * gauge(body, z) + 1e-6;
      }
    } catch (const Error&) {
      ok = false;
    }
    if (ok) ++passed;
    dig(o, "t=" + std::to_string(t) + " idem=" + fd(idem) +
               " ok=" + std::to_string(ok ? 1 : 0));
  }
  o.pass = passed == 20;
  o.detail = std::to_string(passed) + "/20 projections idempotent (worst " + fd(worst_idem) +
             ") with gauge factor 1.1 on 1e4 samples from F + Y";
  return o;
}

// 9. Translate cover of the near-ball body by a planar offset grid at eps=0.2,
// plus the half-radius validation at lambda=0.4 on a balanced ellipsoid.
Outcome crit9() {
  Outcome o;
  std::vector<Vec> O;
  for (int i = -4; i <= 4; ++i)
    for (int j = -2; j <= 2; ++j) {
      Vec v = Vec::Zero(16);
      v[0] = 0.125 * i;
      v[1] = 0.125 * j;
      O.push_back(v);
    }
  Rng r1(0xACC9);
  TranslateResult tr = translate_theorem({near_ball_ellipsoid(16), O, 0.2}, r1);
  bool t_ok = tr.max_dist <= 0.2 + 1e-6 && !tr.H.empty();
  dig(o, "translate dim_y=" + std::to_string(tr.Y.dim()) + " h=" +
             std::to_string(tr.H.size()) + " max_dist=" + fd(tr.max_dist) +
             " cover_slack=" + fd(tr.cover_slack));

  Vec q = Vec::Constant(12, 1.0 / (0.95 * 0.95));
  q[0] = q[1] = 1.0 / (0.55 * 0.55);
  ConvexBody balanced = ConvexBody::quad_lin(q, Vec::Zero(12), 1.0);
  std::vector<Vec> O2;
  for (int i = -5; i <= 5; ++i)
    for (int j = -5; j <= 5; ++j) {
      Vec v = Vec::Zero(12);
      v[0] = 0.09 * i;
      v[1] = 0.09 * j;
      O2.push_back(v);
    }
  Rng r2(0xACC9 + 1);
  HalfRadiusReport hr = half_radius_check(balanced, O2, 0.4, r2);
  dig(o, "half_radius ok=" + std::to_string(hr.requested_ok ? 1 : 0) +
             " largest=" + fd(hr.lambda_largest) + " r0=" + fd(hr.r0));
  o.pass = t_ok && hr.requested_ok;
  o.detail = "translate max_dist " + fd(tr.max_dist) + " <= 0.2+1e-6 with " +
             std::to_string(tr.H.size()) + " translates; lambda 0.4 validated (largest " +
             fd(hr.lambda_largest) + ")";
  return o;
}

// 10. Finite-codimension cut on the near-ball pair at eps=0.1 (delta 0.00125,
// cut 10), exact clamp split on 1e5 samples, axis gaps 2^-n to 1e-9.
Outcome crit10() {
  Outcome o;
  Rng r1(0xACC10);
  HilbertCodimReport rep = hilbert_codim(near_ball_ellipsoid(16), dyadic_box(16), 0.1, r1);
  bool codim_ok = std::abs(rep.delta - 0.00125) <= 1e-12 && rep.cut == 10 &&
                  rep.max_dist <= 0.1 + 1e-6;
  dig(o, "delta=" + fd(rep.delta) + " cut=" + std::to_string(rep.cut) +
             " dim_y=" + std::to_string(rep.Y.dim()) + " max_dist=" + fd(rep.max_dist));

  Rng r2(0xACC10 + 1);
  CounterexampleReport ce = counterexample_check(16, {0.5, 0.1, 0.02}, r2);
  bool split_ok = ce.split_ok && ce.split_samples == 100000;
  double axis_err = 0.0;
  bool axis_ok = ce.axis.size() >= 8;
  for (int n = 1; n <= 8 && axis_ok; ++n) {
    const auto& a = ce.axis[n - 1];
    axis_err = std::max(axis_err, std::abs(a.dist - a.expected));
    axis_ok = a.n == n && std::abs(a.dist - a.expected) <= 1e-9;
    dig(o, "axis n=" + std::to_string(a.n) + " dist=" + fd(a.dist));
  }
  bool eps_ok = true;
  for (const auto& e : ce.eps_rows) {
    eps_ok = eps_ok && e.outside && e.verified;
    dig(o, "eps=" + fd(e.eps) + " m=" + std::to_string(e.m) +
               " ok=" + std::to_string((e.outside && e.verified) ? 1 : 0));
  }
  o.pass = codim_ok && split_ok && axis_ok && eps_ok;
  o.detail = "delta " + fd(rep.delta) + ", cut " + std::to_string(rep.cut) +
             ", split exact on 1e5, axis gap error " + fd(axis_err) + " <= 1e-9";
  return o;
}

// 11. Inscribed-radius curve rules: unit ball pins the curve at 1; doubling the
// body doubles the curve bit-for-bit under a shared seed; the positive part of
// the l1 ball decays strictly and splits exactly.
Outcome crit11() {
  Outcome o;
  SearchOpts opt;
  opt.seed = 0xACC11;
  ConvexBody ball8 = ConvexBody::ball(AmbientNorm::L2, Vec::Zero(8), 1.0);
  RhoCurve unit = rho_hat(ball8, {1, 2, 4, 8}, opt);
  bool unit_ok = true;
  for (const auto& e : unit.entries) {
    unit_ok = unit_ok && std::abs(e.radius - 1.0) <= 1e-6;
    dig(o, "unit n=" + std::to_string(e.n) + " r=" + fd(e.radius));
  }

  ConvexBody A = ConvexBody::intersection(
      {ConvexBody::box(Vec::Constant(5, -1.0), Vec::Constant(5, 1.0)),
       ConvexBody::ball(AmbientNorm::L2, Vec::Zero(5), 1.2)});
  SearchOpts opt2;
  opt2.seed = 0xACC11 + 1;
  opt2.restarts = 8;
  RhoCurve ca = rho_hat(A, {1, 2}, opt2);
  RhoCurve cb = rho_hat(ConvexBody::scale(A, 2.0), {1, 2}, opt2);
  bool scale_ok = ca.entries.size() == cb.entries.size();
  double scale_err = 0.0;
  for (size_t i = 0; i < ca.entries.size() && scale_ok; ++i) {
    scale_err = std::max(scale_err, std::abs(cb.entries[i].radius - 2.0 * ca.entries[i].radius));
    scale_ok = scale_err <= 1e-12;
    dig(o, "scale n=" + std::to_string(ca.entries[i].n) + " r=" + fd(ca.entries[i].radius) +
               " r2=" + fd(cb.entries[i].radius));
  }

  Ell1Report er = ell1_example_check(8, 0xACC11 + 2);
  bool ell1_ok = er.split_ok && er.split_samples == 10000 && er.curve.entries.size() == 3;
  for (size_t i = 0; i + 1 < er.curve.entries.size() && ell1_ok; ++i)
    ell1_ok = er.curve.entries[i].radius > er.curve.entries[i + 1].radius;
  for (const auto& e : er.curve.entries)
    dig(o, "ell1 n=" + std::to_string(e.n) + " r=" + fd(e.radius));

  o.pass = unit_ok && scale_ok && ell1_ok;
  o.detail = std::string("unit ball curve at 1 (tol 1e-6) ") + (unit_ok ? "ok" : "FAIL") +
             "; doubling error " + fd(scale_err) + " <= 1e-12; positive-part curve " +
             (ell1_ok ? "strictly decreasing, split exact on 1e4" : "FAIL");
  return o;
}

Outcome run_criterion(int k);

// 12. Every criterion reruns byte-identically: digests of two fresh runs match.
Outcome crit12() {
  Outcome o;
  o.pass = true;
  for (int k = 1; k <= 11; ++k) {
    Outcome a = run_criterion(k);
    Outcome b = run_criterion(k);
    bool same = a.digest == b.digest && !a.digest.empty();
    o.pass = o.pass && same;
    dig(o, "criterion " + std::to_string(k) + " rerun " + (same ? "identical" : "DIVERGED"));
    if (!same) o.detail += (o.detail.empty() ? "" : ", ") + std::to_string(k);
  }
  if (o.pass)
    o.detail = "criteria 1-11 each ran twice with identical digests";
  else
    o.detail = "digest mismatch in criteria: " + o.detail;
  return o;
}

Outcome run_criterion(int k) {
  switch (k) {
    case 1: return crit1();
    case 2: return crit2();
    case 3: return crit3();
    case 4: return crit4();
    case 5: return crit5();
    case 6: return crit6();
    case 7: return crit7();
    case 8: return crit8();
    case 9: return crit9();
    case 10: return crit10();
    case 11: return crit11();
    case 12: return crit12();
  }
  return {false, "unknown criterion", ""};
}

const char* kLabel[12] = {
    "cover identity with algebraic certificate",
    "piece inscribed-radius bound",
    "hexagon translate cover",
    "antipodal pair inside one cover piece",
    "cube sub-cylinder witness",
    "sup-norm flatness trend",
    "sphere cover flat line",
    "gauge-controlled projection",
    "translate cover and half radius",
    "finite-codimension cut and axis gaps",
    "inscribed-radius curve rules",
    "byte-identical reruns",
};

// wall-clock budgets in seconds (0 = unlimited); criterion 1 also enforces its
// own per-case budget internally
const double kBudget[12] = {90, 60, 5, 30, 60, 300, 120, 120, 180, 120, 120, 0};

}  // namespace

int main(int argc, char** argv) {
  int k = 0;
  for (int i = 1; i + 1 < argc + 1; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) k = std::atoi(argv[i + 1]);
  }
  if (k < 0 || k > 12) {
    std::fprintf(stderr, "usage: acceptance [--criterion 1..12]\n");
    return 2;
  }
  int first = k == 0 ? 1 : k;
  int last = k == 0 ? 12 : k;
  int failures = 0;
  for (int c = first; c <= last; ++c) {
    double t0 = now_s();
    Outcome o;
    try {
      o = run_criterion(c);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double dt = now_s() - t0;
    if (kBudget[c - 1] > 0 && dt >= kBudget[c - 1]) {
      o.pass = false;
      o.detail += " [over budget " + fd(kBudget[c - 1]) + "s]";
    }
    std::printf("[%s] criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c,
                kLabel[c - 1], o.detail.c_str(), dt);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
