#include "cclab/inradius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cclab/simplex.hpp"

namespace cclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// exact sup{lambda : x + lambda * (B_2 cap span(M)) inside body}, or nullopt
// when the representation has no Euclidean recursion (non-L2 ball reps)
std::optional<double> sub_radius_exact(const ConvexBody& b, const Mat& M, const Vec& x) {
  switch (b.kind()) {
    case ConvexBody::Kind::Ball: {
      auto* rep = b.as_ball();
      if (rep->norm != AmbientNorm::L2) return std::nullopt;
      Vec v = x - rep->center;
      Vec vF = M.transpose() * v;
      double perp2 = std::max(0.0, v.squaredNorm() - vF.squaredNorm());
      double disc = rep->radius * rep->radius - perp2;
      if (disc <= 0) return 0.0;
      return std::max(0.0, std::sqrt(disc) - vF.norm());
    }
    case ConvexBody::Kind::Polytope: {
      auto* rep = b.as_polytope();
      double r = kInf;
      for (int i = 0; i < rep->b.size(); ++i) {
        double slack = rep->b(i) - rep->A.row(i).dot(x);
        double den = (M.transpose() * rep->A.row(i).transpose()).norm();
        if (den < 1e-14) {
          if (slack < 0) return 0.0;
          continue;
        }
        r = std::min(r, slack / den);
      }
      return std::max(0.0, r);
    }
    case ConvexBody::Kind::Box: {
      auto* rep = b.as_box();
      double r = kInf;
      for (int i = 0; i < x.size(); ++i) {
        double slack = std::min(rep->hi(i) - x(i), x(i) - rep->lo(i));
        double den = M.row(i).norm();
        if (den < 1e-14) {
          if (slack < 0) return 0.0;
          continue;
        }
        r = std::min(r, slack / den);
      }
      return std::max(0.0, r);
    }
    case ConvexBody::Kind::QuadLin: {
      auto* rep = b.as_quad_lin();
      double s = rep->r - rep->q.dot(x.cwiseProduct(x)) - rep->a.dot(x);
      if (s <= 0) return 0.0;
      Vec c = 2.0 * rep->q.cwiseProduct(x) + rep->a;
      Vec ch = M.transpose() * c;
      Mat B = M.transpose() * rep->q.asDiagonal() * M;
      Eigen::SelfAdjointEigenSolver<Mat> es(B);
      Vec d = es.eigenvalues().cwiseMax(0.0);
      Vec cr = es.eigenvectors().transpose() * ch;
      double cn = cr.norm(), dmax = d.maxCoeff();
      if (cn == 0.0 && dmax == 0.0) return kInf;
      // max over the unit ball of lambda c.w + lambda^2 w'Dw lies between
      // lambda |c| and lambda |c| + lambda^2 dmax, giving closed-form brackets
      double lo, hi = kInf;
      if (dmax == 0.0) lo = s / cn;
      else if (cn == 0.0) lo = std::sqrt(s / dmax);
      else lo = (-cn + std::sqrt(cn * cn + 4.0 * s * dmax)) / (2.0 * dmax);
      if (cn > 0) hi = s / cn;
      if (dmax > 0) hi = std::min(hi, std::sqrt(s / dmax));
      auto f = [&](double lam) {
        return max_quad_over_unit_ball(lam * cr, lam * lam * d);
      };
      for (int it = 0; it < 120 && hi - lo > 1e-13 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) <= s ? lo : hi) = mid;
      }
      return lo;
    }
    case ConvexBody::Kind::Intersection: {
      double r = kInf;
      for (auto& m : b.as_intersection()->members) {
        auto sub = sub_radius_exact(m, M, x);
        if (!sub) return std::nullopt;
        r = std::min(r, *sub);
        if (r == 0.0) break;
      }
      return r;
    }
    case ConvexBody::Kind::Translate: {
      auto* rep = b.as_translate();
      return sub_radius_exact(rep->inner, M, Vec(x - rep->t));
    }
    case ConvexBody::Kind::Scale: {
      auto* rep = b.as_scale();
      auto sub = sub_radius_exact(rep->inner, M, Vec(x / rep->lambda));
      if (!sub) return std::nullopt;
      return rep->lambda * *sub;
    }
  }
  throw Error("unreachable");
}

// sup{t : x + t u inside body} along a fixed direction, by doubling + bisection
double ray_sup(const ConvexBody& b, const Vec& x, const Vec& u) {
  if (violation(b, x) > 0) return 0.0;
  double hi = 1.0;
  int k = 0;
  while (violation(b, Vec(x + hi * u)) <= 0.0) {
    hi *= 2.0;
    if (++k > 500) return kInf;
  }
  double lo = hi * 0.5 >= 1.0 ? hi * 0.5 : 0.0;
  if (violation(b, Vec(x + lo * u)) > 0.0) lo = 0.0;
  for (int it = 0; it < 120 && hi - lo > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (violation(b, Vec(x + mid * u)) <= 0.0 ? lo : hi) = mid;
  }
  return lo;
}

double sub_radius_sampled(const ConvexBody& b, const Mat& M, const Vec& x, AmbientNorm p,
                          int dirs_per_dim, Rng& rng) {
  int n = (int)M.cols();
  double r = kInf;
  auto probe = [&](Vec u) {
    double nn = norm_eval(p, u);
    if (nn < 1e-14) return;
    u /= nn;
    r = std::min(r, ray_sup(b, x, u));
  };
  for (int j = 0; j < n; ++j) {
    probe(M.col(j));
    probe(Vec(-M.col(j)));
  }
  for (int s = 0; s < 2 * n * dirs_per_dim; ++s) {
    Vec w(n);
    for (int i = 0; i < n; ++i) w(i) = rng.gaussian();
    probe(Vec(M * w));
  }
  return r;
}

}  // namespace

FixedRadiusResult inscribed_radius_fixed(const ConvexBody& body, const Subspace& F,
                                         const Vec& x, AmbientNorm p, int dirs_per_dim) {
  if (F.ambient_dim() != body.dim()) throw PreconditionError("inscribed_radius_fixed: dims");
  if (violation(body, x) > tols().membership) return {0.0, false, false};
  if (p == AmbientNorm::L2) {
    auto r = sub_radius_exact(body, F.basis, x);
    if (r) return {*r, true, true};
  }
  Rng rng(0x1f2e3d4cull);
  double r = sub_radius_sampled(body, F.basis, x, p, dirs_per_dim, rng);
  return {r, false, true};
}

bool verify_inscribed_ball(const ConvexBody& body, const InscribedBall& ball, AmbientNorm p,
                           Rng& rng, int m, double shrink, double tol) {
  int n = ball.subspace.dim();
  for (int s = 0; s < m; ++s) {
    Vec w(n);
    for (int i = 0; i < n; ++i) w(i) = rng.gaussian();
    Vec u = ball.subspace.basis * w;
    double nn = norm_eval(p, u);
    if (nn < 1e-14) continue;
    u /= nn;
    if (!contains(body, Vec(ball.center + shrink * ball.radius * u), tol)) return false;
  }
  return true;
}

namespace {

// deterministic preference among equal-radius witnesses
bool better_witness(double r1, const Vec& x1, const Mat& M1, double r2, const Vec& x2,
                    const Mat& M2) {
  if (r1 != r2) return r1 > r2;
  double n1 = x1.norm(), n2 = x2.norm();
  if (n1 != n2) return n1 < n2;
  for (int j = 0; j < M1.cols(); ++j)
    for (int i = 0; i < M1.rows(); ++i)
      if (M1(i, j) != M2(i, j)) return M1(i, j) < M2(i, j);
  return false;
}

// polytope core behind translate/scale wrappers; outer x = alpha * z + shift
struct PolytopeFrame {
  const PolytopeRep* rep = nullptr;
  double alpha = 1.0;
  Vec shift;
};

std::optional<PolytopeFrame> polytope_frame(const ConvexBody& b) {
  PolytopeFrame f;
  f.shift = Vec::Zero(b.dim());
  const ConvexBody* cur = &b;
  for (;;) {
    switch (cur->kind()) {
      case ConvexBody::Kind::Polytope:
        f.rep = cur->as_polytope();
        return f;
      case ConvexBody::Kind::Scale:
        f.alpha *= cur->as_scale()->lambda;
        cur = &cur->as_scale()->inner;
        break;
      case ConvexBody::Kind::Translate:
        f.shift += f.alpha * cur->as_translate()->t;
        cur = &cur->as_translate()->inner;
        break;
      default:
        return std::nullopt;
    }
  }
}

// one exact center step for a polytope core: max lambda over (z, lambda) in
// the core frame, mapped back through the wrappers so scaled copies of a body
// take bitwise-scaled steps
bool polytope_center_lp(const PolytopeFrame& fr, const Mat& M, Vec& x, double& radius) {
  const PolytopeRep& rep = *fr.rep;
  int n = (int)rep.A.cols(), m = (int)rep.b.size();
  Mat A2(m + 1, n + 1);
  Vec b2(m + 1), c2 = Vec::Zero(n + 1);
  A2.setZero();
  for (int i = 0; i < m; ++i) {
    A2.block(i, 0, 1, n) = rep.A.row(i);
    A2(i, n) = (M.transpose() * rep.A.row(i).transpose()).norm();
    b2(i) = rep.b(i);
  }
  A2(m, n) = -1.0;
  c2(n) = 1.0;
  LpResult lp = lp_max(A2, b2, c2);
  if (lp.status != LpStatus::Optimal) return false;
  double r = fr.alpha * lp.value;
  if (r > radius) {
    x = fr.alpha * lp.x.head(n) + fr.shift;
    radius = r;
    return true;
  }
  return false;
}

struct Evaluator {
  const ConvexBody& body;
  AmbientNorm p;
  int dirs;
  Rng dir_rng;
  Evaluator(const ConvexBody& b, AmbientNorm pp, int d, uint64_t seed)
      : body(b), p(pp), dirs(d), dir_rng(seed) {}
  double operator()(const Mat& M, const Vec& x) {
    if (violation(body, x) > tols().membership) return 0.0;
    if (p == AmbientNorm::L2) {
      auto r = sub_radius_exact(body, M, x);
      if (r) return *r;
    }
    Rng local(dir_rng.seed());  // frozen direction set per evaluator
    return sub_radius_sampled(body, M, x, p, dirs, local);
  }
};

}  // namespace

InscribedBall max_inscribed_ball(const ConvexBody& body, int n, const SearchOpts& opts) {
  int N = body.dim();
  if (n < 1 || n > N) throw PreconditionError("max_inscribed_ball: bad subspace dimension");
  Rng seed_rng(opts.seed);
  Rng center_rng = seed_rng.derive(0x77);
  CenterResult base = inner_center(body, opts.p, center_rng);
  if (!(base.radius > 0)) {
    Rng r0(opts.seed);
    return {base.center, random_subspace(N, n, r0), 0.0, false};
  }
  Evaluator eval(body, opts.p, opts.eval_dirs, opts.seed ^ 0xabcdef12ull);
  std::optional<PolytopeFrame> frame;
  if (opts.p == AmbientNorm::L2) frame = polytope_frame(body);

  double best_r = -1.0;
  Vec best_x;
  Mat best_M;
  for (int restart = 0; restart < opts.restarts; ++restart) {
    Rng rng = seed_rng.derive(restart + 1);
    Vec x = base.center;
    Mat M;
    if (restart == 0 && opts.warm) {
      const InscribedBall& w = *opts.warm;
      x = w.center;
      if (w.subspace.dim() >= n) {
        M = w.subspace.basis.leftCols(n);
      } else {
        Subspace ext = extend_subspace(w.subspace, n - w.subspace.dim(), rng);
        M = ext.basis;
      }
    } else {
      M = random_subspace(N, n, rng).basis;
    }
    double radius = eval(M, x);
    double step_x = 0.5, step_th = 0.5;
    for (int it = 0; it < opts.steps; ++it) {
      if (step_x <= 1e-4 && step_th <= 1e-4) break;
      // center step
      bool lp_gain = false;
      if (frame) {
        lp_gain = polytope_center_lp(*frame, M, x, radius);
      } else if (step_x > 1e-4) {
        bool ok = false;
        double scale = std::max(radius, 0.05 * base.radius);
        for (int t = 0; t < 4; ++t) {
          Vec d(N);
          for (int i = 0; i < N; ++i) d(i) = rng.gaussian();
          double dn = d.norm();
          if (dn < 1e-14) continue;
          Vec x2 = x + (step_x * scale / dn) * d;
          double r2 = eval(M, x2);
          if (r2 > radius * (1.0 + 1e-12) && r2 > radius) {
            x = x2;
            radius = r2;
            ok = true;
            break;
          }
        }
        if (!ok) step_x = std::max(1e-4, 0.5 * step_x);
      }
      // subspace rotation step
      if (n < N && step_th > 1e-4) {
        bool ok = false;
        for (int t = 0; t < 4; ++t) {
          Vec wv(n);
          for (int i = 0; i < n; ++i) wv(i) = rng.gaussian();
          double wn = wv.norm();
          if (wn < 1e-14) continue;
          Vec v = M * (wv / wn);
          Vec g(N);
          for (int i = 0; i < N; ++i) g(i) = rng.gaussian();
          Vec w = g - M * (M.transpose() * g);
          double gn = w.norm();
          if (gn < 1e-12) continue;
          w /= gn;
          double th = step_th;
          // rotate the (v, w) plane by th inside each basis column
          Mat M2 = M + (std::cos(th) - 1.0) * v * (v.transpose() * M) +
                   std::sin(th) * w * (v.transpose() * M);
          // re-orthonormalize to stop drift
          Eigen::HouseholderQR<Mat> qr(M2);
          Mat Q = qr.householderQ() * Mat::Identity(N, n);
          Mat R = Q.transpose() * M2;
          for (int j = 0; j < n; ++j)
            if (R(j, j) < 0) Q.col(j) *= -1.0;
          double r2 = eval(Q, x);
          if (r2 > radius * (1.0 + 1e-12) && r2 > radius) {
            M = Q;
            radius = r2;
            ok = true;
            break;
          }
        }
        if (!ok) step_th = std::max(1e-4, 0.5 * step_th);
      } else if (n == N) {
        step_th = 0.0;
      }
      if (frame && !lp_gain && step_th <= 1e-4) break;
    }
    if (better_witness(radius, x, M, best_r, best_x.size() ? best_x : Vec::Zero(N),
                       best_M.size() ? best_M : Mat::Zero(N, n))) {
      best_r = radius;
      best_x = x;
      best_M = M;
    }
  }

  InscribedBall out{best_x, Subspace(best_M), std::max(0.0, best_r), false};
  // final value at full direction budget, then fresh-direction verification;
  // each failed round clamps the radius with the exit times of a fresh batch,
  // so a sampled overestimate shrinks to what the probes actually certify
  FixedRadiusResult fin = inscribed_radius_fixed(body, out.subspace, out.center, opts.p, 64);
  out.radius = std::min(out.radius, fin.radius);
  out.certified = fin.certified;
  Rng vrng = seed_rng.derive(0xbeef);
  for (int rounds = 0; rounds < 8; ++rounds) {
    if (out.radius <= 0.0) return out;
    if (verify_inscribed_ball(body, out, opts.p, vrng)) return out;
    out.certified = false;
    double mb = out.radius;
    for (int s = 0; s < 1200; ++s) {
      Vec w(n);
      for (int i = 0; i < n; ++i) w(i) = vrng.gaussian();
      Vec u = out.subspace.basis * w;
      double nn = norm_eval(opts.p, u);
      if (nn < 1e-14) continue;
      mb = std::min(mb, ray_sup(body, out.center, Vec(u / nn)));
    }
    out.radius = mb * (1.0 - 1e-4);
  }
  throw SearchError("max_inscribed_ball: witness failed re-verification");
}

RhoCurve rho_hat(const ConvexBody& body, const std::vector<int>& n_list,
                 const SearchOpts& opts) {
  for (size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw PreconditionError("rho_hat: n_list must be increasing");
  RhoCurve curve;
  SearchOpts o = opts;
  for (size_t i = 0; i < n_list.size(); ++i) {
    o.seed = opts.seed + 1000003ull * i;
    InscribedBall w = max_inscribed_ball(body, n_list[i], o);
    curve.entries.push_back({n_list[i], w.radius, w});
    o.warm = w;
  }
  // restricting the next witness to a head subspace cannot lose radius, so a
  // backward sweep makes the curve non-increasing
  for (int i = (int)curve.entries.size() - 2; i >= 0; --i) {
    const InscribedBall& next = curve.entries[i + 1].witness;
    Subspace head = next.subspace.head(curve.entries[i].n);
    FixedRadiusResult r = inscribed_radius_fixed(body, head, next.center, opts.p, 64);
    if (r.radius > curve.entries[i].radius) {
      curve.entries[i].radius = r.radius;
      curve.entries[i].witness = {next.center, head, r.radius, r.certified};
    }
  }
  return curve;
}

RhoRulesReport check_rho_rules(const ConvexBody& A, const ConvexBody& B,
                               const std::vector<ConvexBody>& pieces,
                               const std::vector<int>& n_list, const SearchOpts& opts) {
  RhoRulesReport rep;
  Rng rng(opts.seed ^ 0x5151ull);
  rep.subset_ok = true;
  for (int s = 0; s < 1000; ++s) {
    Vec a = sample_in_body_gauge(A, rng);
    if (violation(B, a) > 1e-9) {
      rep.subset_ok = false;
      break;
    }
  }
  if (!rep.subset_ok) throw PreconditionError("check_rho_rules: A not inside B");
  if (!pieces.empty()) {
    Cover c{A, pieces, {}};
    CoverReport cr = verify_cover(c, 2000, rng, 1e-9);
    if (!cr.uncovered.empty())
      throw PreconditionError("check_rho_rules: pieces do not cover A");
  }

  rep.curve_a = rho_hat(A, n_list, opts);
  rep.monotone_ok = true;
  SearchOpts ob = opts;
  for (auto& e : rep.curve_a.entries) {
    ob.warm = e.witness;
    ob.seed = opts.seed + 7919ull * e.n;
    InscribedBall wb = max_inscribed_ball(B, e.n, ob);
    rep.curve_b.entries.push_back({e.n, wb.radius, wb});
    if (wb.radius < e.radius - 1e-12) rep.monotone_ok = false;
  }

  RhoCurve doubled = rho_hat(ConvexBody::scale(A, 2.0), n_list, opts);
  rep.homogeneity_ok = true;
  for (size_t i = 0; i < doubled.entries.size(); ++i) {
    double want = 2.0 * rep.curve_a.entries[i].radius;
    if (std::abs(doubled.entries[i].radius - want) > 1e-12 * std::max(1.0, want))
      rep.homogeneity_ok = false;
  }

  rep.cover_rule_ok = true;
  rep.cover_gap = 0.0;
  if (!pieces.empty()) {
    for (auto& p : pieces) rep.piece_curves.push_back(rho_hat(p, n_list, opts));
    for (size_t i = 0; i < n_list.size(); ++i) {
      double best_piece = 0.0;
      for (auto& pc : rep.piece_curves)
        best_piece = std::max(best_piece, pc.entries[i].radius);
      double gap = rep.curve_a.entries[i].radius - best_piece;
      rep.cover_gap = std::max(rep.cover_gap, gap);
      if (gap > 2e-3) rep.cover_rule_ok = false;
    }
  }
  return rep;
}

Ell1Report ell1_example_check(int N, uint64_t seed) {
  if (N < 2) throw PreconditionError("ell1_example_check: N must be at least 2");
  Ell1Report rep;
  Rng rng(seed);
  rep.split_samples = 10000;
  rep.split_ok = true;
  ConvexBody pos = ConvexBody::intersection(
      {ConvexBody::ball(AmbientNorm::L1, Vec::Zero(N), 1.0),
       ConvexBody::box(Vec::Zero(N), Vec::Constant(N, 1.0))});
  for (long s = 0; s < rep.split_samples; ++s) {
    Vec x = sample_in_ball(AmbientNorm::L1, N, rng);
    Vec a = x.cwiseMax(0.0), ap = (-x).cwiseMax(0.0);
    if ((a - ap - x).lpNorm<Eigen::Infinity>() != 0.0 || violation(pos, a) > 0 ||
        violation(pos, ap) > 0) {
      rep.split_ok = false;
      break;
    }
  }
  SearchOpts o;
  o.p = AmbientNorm::L1;
  o.restarts = 8;
  o.steps = 60;
  o.seed = seed;
  std::vector<int> ns = N >= 8 ? std::vector<int>{1, 2, 4} : std::vector<int>{1, 2, 3};
  rep.curve = rho_hat(pos, ns, o);
  return rep;
}

}  // namespace cclab
