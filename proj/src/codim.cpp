#include "cclab/codim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "cclab/covers.hpp"

namespace cclab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int svd_rank(const Eigen::BDCSVD<Mat>& svd) {
  const Vec& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  double cut = 1e-10 * sv(0);
  int r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

// unit directions of F, expressed in ambient coordinates
std::vector<Vec> section_sphere(const Subspace& F, int res) {
  std::vector<Vec> out;
  if (F.dim() == 1) {
    out.push_back(F.basis.col(0));
    out.push_back(Vec(-F.basis.col(0)));
    return out;
  }
  for (const Vec& u : sphere_mesh(F.dim(), res)) out.push_back(Vec(F.basis * u));
  return out;
}

// outward normal of the first constraint active at a boundary point x
Vec active_normal(const ConvexBody& A, const Vec& x) {
  switch (A.kind()) {
    case ConvexBody::Kind::Ball: {
      const BallRep* rep = A.as_ball();
      Vec w = x - rep->center;
      switch (rep->norm) {
        case AmbientNorm::L2:
          return w;
        case AmbientNorm::L1: {
          Vec s = Vec::Zero(w.size());
          for (int i = 0; i < w.size(); ++i)
            s(i) = w(i) > 0 ? 1.0 : (w(i) < 0 ? -1.0 : 0.0);
          return s;
        }
        case AmbientNorm::Linf: {
          int arg = 0;
          w.cwiseAbs().maxCoeff(&arg);
          Vec s = Vec::Zero(w.size());
          s(arg) = w(arg) >= 0 ? 1.0 : -1.0;
          return s;
        }
      }
      break;
    }
    case ConvexBody::Kind::Polytope: {
      const PolytopeRep* rep = A.as_polytope();
      for (int i = 0; i < rep->A.rows(); ++i)
        if (rep->A.row(i).dot(x) >= rep->b(i) - 1e-6) return rep->A.row(i).transpose();
      throw Error("supporting_functional: no polytope row active at the point");
    }
    case ConvexBody::Kind::QuadLin: {
      const QuadLinRep* rep = A.as_quad_lin();
      return Vec(2.0 * rep->q.cwiseProduct(x) + rep->a);
    }
    case ConvexBody::Kind::Box: {
      const BoxRep* rep = A.as_box();
      for (int i = 0; i < x.size(); ++i) {
        double tol = 1e-6 * std::max(1.0, std::max(std::abs(rep->lo(i)), std::abs(rep->hi(i))));
        Vec s = Vec::Zero(x.size());
        if (x(i) >= rep->hi(i) - tol) {
          s(i) = 1.0;
          return s;
        }
        if (x(i) <= rep->lo(i) + tol) {
          s(i) = -1.0;
          return s;
        }
      }
      throw Error("supporting_functional: no box face active at the point");
    }
    case ConvexBody::Kind::Intersection: {
      for (const ConvexBody& m : A.as_intersection()->members)
        if (gauge(m, x) >= 1.0 - 1e-6) return active_normal(m, x);
      throw Error("supporting_functional: no intersection member active at the point");
    }
    case ConvexBody::Kind::Translate: {
      const TranslateRep* rep = A.as_translate();
      // normal of the inner body at the shifted point supports the translate too
      Vec inner_pt = x - rep->t;
      return active_normal(rep->inner, Vec(inner_pt / gauge(rep->inner, inner_pt)));
    }
    case ConvexBody::Kind::Scale: {
      const ScaleRep* rep = A.as_scale();
      return active_normal(rep->inner, Vec(x / rep->lambda));
    }
  }
  throw Error("supporting_functional: unsupported body kind");
}

}  // namespace

SupportingFunctional supporting_functional(const ConvexBody& A, const Vec& x) {
  double g = gauge(A, x);
  if (!(std::abs(g - 1.0) <= 1e-6))
    throw Error("supporting_functional: point is off the boundary, gauge = " +
                std::to_string(g));
  Vec t = x / g;
  Vec n = active_normal(A, t);
  double d = n.dot(t);
  if (!(d > 1e-12)) throw Error("supporting_functional: degenerate normal at the point");
  return {Vec(n / d), t};
}

std::vector<Vec> boundary_net(const ConvexBody& A, const Subspace& F,
                              double delta_prime) {
  int f = F.dim();
  if (f < 1 || f > 3)
    throw PreconditionError("boundary_net: section dimension must be 1, 2 or 3");
  if (!(delta_prime > 0.0 && delta_prime < 1.0))
    throw PreconditionError("boundary_net: density must lie in (0, 1)");
  if (!(interior_radius_at(A, Vec::Zero(A.dim())) > 0.0))
    throw PreconditionError("boundary_net: 0 must be interior to the body");
  auto lift = [&](const std::vector<Vec>& dirs) {
    std::vector<Vec> pts;
    pts.reserve(dirs.size());
    for (const Vec& u : dirs) pts.push_back(Vec(u / gauge(A, u)));
    return pts;
  };
  if (f == 1) return lift(section_sphere(F, 2));  // the section boundary is 2 points
  double r0 = interior_radius_at(A, Vec::Zero(A.dim()));
  int res_cap = f == 2 ? 4096 : 128;
  for (int res = f == 2 ? 16 : 8; res <= res_cap; res *= 2) {
    std::vector<Vec> net = lift(section_sphere(F, res));
    std::vector<Vec> probe = lift(section_sphere(F, 3 * res));
    // boundary points between probe nodes sit within kappa of one in gauge:
    // chord bound of the probe mesh times the Lipschitz rate of u -> u/gauge(u)
    double R = 0.0;
    for (const Vec& x : probe) R = std::max(R, x.norm());
    R *= 1.05;
    double chord = f == 2 ? M_PI / (3.0 * res) : 2.5 / (3.0 * res);
    double kappa = chord * (R + R * R / r0) / r0;
    if (kappa >= 0.5 * delta_prime) continue;
    size_t last = 0;  // mesh orders are angularly coherent, scan from the last hit
    bool dense = true;
    for (const Vec& x : probe) {
      bool hit = false;
      for (size_t k = 0; k < net.size() && !hit; ++k) {
        size_t i = (last + k) % net.size();
        if (gauge(A, Vec(net[i] - x)) < delta_prime - kappa) {
          hit = true;
          last = i;
        }
      }
      if (!hit) {
        dense = false;
        break;
      }
    }
    if (dense) return net;
  }
  throw SearchError("boundary_net: resolution cap reached before density " +
                    std::to_string(delta_prime));
}

ProjectionSystem build_projection(const ConvexBody& A, const Subspace& F, double delta,
                                  Rng& rng) {
  if (!(delta > 0.0)) throw PreconditionError("build_projection: delta must be positive");
  int f = F.dim(), N = A.dim();
  if (f < 1 || f > 3)
    throw PreconditionError("build_projection: section dimension must be 1, 2 or 3");
  for (const Interval& iv : bounding_box(A))
    if (!(std::isfinite(iv.lo) && std::isfinite(iv.hi)))
      throw PreconditionError("build_projection: body must be bounded");
  double dp = delta / (1.0 + delta);
  std::string why = "no attempt made";
  for (int attempt = 0; attempt < 4; ++attempt, dp *= 0.5) {
    std::vector<Vec> net = boundary_net(A, F, dp);
    std::vector<SupportingFunctional> funcs;
    for (const Vec& x : net) {
      SupportingFunctional sf = supporting_functional(A, x);
      bool dup = false;
      for (const SupportingFunctional& kept : funcs)
        if ((kept.vector - sf.vector).norm() <= 1e-9) {
          dup = true;
          break;
        }
      if (!dup) funcs.push_back(std::move(sf));
    }
    Mat G(static_cast<int>(funcs.size()), N);
    for (size_t i = 0; i < funcs.size(); ++i)
      G.row(static_cast<int>(i)) = funcs[i].vector.transpose();
    Eigen::BDCSVD<Mat> gsvd(G, Eigen::ComputeFullV);
    int gr = svd_rank(gsvd);
    Mat Yb = gsvd.matrixV().rightCols(N - gr);  // kernel of every functional
    {
      // F must stay clear of the kernel or the projection cannot fix it
      Eigen::BDCSVD<Mat> cross(Mat(G * F.basis));
      const Vec& sv = cross.singularValues();
      int cross_rank = 0;
      while (cross_rank < sv.size() && sv(cross_rank) > 1e-9 * std::max(1.0, sv(0)))
        ++cross_rank;
      if (cross_rank < f) {
        why = "section meets the functional kernel";
        continue;
      }
    }
    Mat C(N, f + Yb.cols());
    C << F.basis, Yb;
    Eigen::BDCSVD<Mat> csvd(C, Eigen::ComputeFullU);
    int cr = svd_rank(csvd);
    if (cr < C.cols()) {
      why = "section and kernel fail to form a direct sum";
      continue;
    }
    Mat T(N, N);
    if (cr < N)
      T << C, csvd.matrixU().rightCols(N - cr);
    else
      T = C;
    Mat P = F.basis * T.partialPivLu().inverse().topRows(f);
    if ((P * P - P).cwiseAbs().maxCoeff() > 1e-8) {
      why = "projection failed idempotence";
      continue;
    }
    bool ok = true;
    for (int s = 0; s < 10000 && ok; ++s) {
      Vec za(f), zb(Yb.cols());
      for (int i = 0; i < f; ++i) za(i) = rng.gaussian();
      for (int i = 0; i < zb.size(); ++i) zb(i) = rng.gaussian();
      Vec z = F.basis * za + Yb * zb;
      if (z.norm() < 1e-9) continue;
      if (gauge(A, Vec(P * z)) > (1.0 + delta) * gauge(A, z) + 1e-6) ok = false;
    }
    if (!ok) {
      why = "sampled gauge inequality failed";
      continue;
    }
    ProjectionSystem out;
    out.F = F;
    if (Yb.cols() == 0)
      out.Y.basis = Yb;  // functionals span everything, Z degenerates to F
    else
      out.Y = Subspace(Yb);
    out.functionals = std::move(funcs);
    out.P = std::move(P);
    out.delta = delta;
    out.delta_prime = dp;
    return out;
  }
  throw Error("build_projection: " + why + " after net refinements");
}

namespace {

// upper bound on min over O of dist(A, b - o), probing the nearest offsets only
double nearest_translate_dist(const ConvexBody& A, const Vec& b,
                              const std::vector<Vec>& O, size_t probe) {
  std::vector<std::pair<double, size_t>> order(O.size());
  for (size_t i = 0; i < O.size(); ++i) order[i] = {(b - O[i]).squaredNorm(), i};
  size_t k = std::min(probe, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(k), order.end());
  double best = kInf;
  for (size_t i = 0; i < k; ++i) {
    best = std::min(best, dist_to_body(A, Vec(b - O[order[i].second])).value);
    if (best == 0.0) break;
  }
  return best;
}

// greedy farthest-point picks over the cloud until everything is within t
std::vector<int> greedy_net(const std::vector<Vec>& cloud, double t,
                            const std::vector<int>& subset) {
  std::vector<int> pick;
  if (subset.empty()) return pick;
  std::vector<double> d2(subset.size(), kInf);
  int cur = 0;  // subset order preserves cloud order, so index 0 is the seed
  double t2 = t * t;
  while (true) {
    pick.push_back(subset[cur]);
    double far = 0.0;
    int arg = 0;
    for (size_t i = 0; i < subset.size(); ++i) {
      double v = (cloud[subset[i]] - cloud[subset[cur]]).squaredNorm();
      if (v < d2[i]) d2[i] = v;
      if (d2[i] > far) {
        far = d2[i];
        arg = static_cast<int>(i);
      }
    }
    if (far <= t2) break;
    cur = arg;
  }
  return pick;
}

// step-net of the section F cap A, returned in ambient coordinates sorted by norm.
// Cloud density step/4 (angular chords and radial gaps), greedy radius 3*step/4.
std::vector<Vec> section_net(const ConvexBody& A, const Subspace& F, double step) {
  int f = F.dim();
  double d = step / 4.0;
  double t = 0.75 * step;
  // boundary radius bound from a coarse probe
  double R = 0.0;
  for (const Vec& u : section_sphere(F, f == 2 ? 64 : 12))
    R = std::max(R, 1.0 / gauge(A, u));
  R *= 1.05;
  std::vector<Vec> dirs;  // section coordinates
  if (f == 1) {
    dirs.push_back(Vec::Constant(1, 1.0));
    dirs.push_back(Vec::Constant(1, -1.0));
  } else {
    int res = std::max(f == 2 ? 16 : 8,
                       static_cast<int>(std::ceil((f == 2 ? 6.2832 : 2.5) * R / d)));
    dirs = sphere_mesh(f, res);
  }
  int layers = std::max(1, static_cast<int>(std::ceil(R / d)));
  std::vector<Vec> cloud;
  cloud.push_back(Vec::Zero(f));
  for (const Vec& u : dirs) {
    double r = 1.0 / gauge(A, Vec(F.basis * u));
    for (int j = 1; j <= layers; ++j) cloud.push_back(Vec((r * j / layers) * u));
  }
  std::vector<int> all(cloud.size());
  for (size_t i = 0; i < cloud.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<int> picks;
  if (f < 3) {
    picks = greedy_net(cloud, t, all);
  } else {
    // two-level greedy keeps the cost near linear in the cloud size
    std::vector<int> coarse = greedy_net(cloud, std::max(2.0 * d, R / 3.0), all);
    std::vector<std::vector<int>> cluster(coarse.size());
    for (int i : all) {
      double best = kInf;
      size_t arg = 0;
      for (size_t c = 0; c < coarse.size(); ++c) {
        double v = (cloud[i] - cloud[coarse[c]]).squaredNorm();
        if (v < best) {
          best = v;
          arg = c;
        }
      }
      cluster[arg].push_back(i);
    }
    for (const std::vector<int>& sub : cluster) {
      std::vector<int> part = greedy_net(cloud, t, sub);
      picks.insert(picks.end(), part.begin(), part.end());
    }
  }
  if (picks.size() > 200000)
    throw SearchError("section_net: net size exploded, step is too small");
  std::vector<Vec> H;
  H.reserve(picks.size());
  for (int i : picks) H.push_back(Vec(F.basis * cloud[i]));
  std::sort(H.begin(), H.end(), [](const Vec& a, const Vec& b) {
    return a.squaredNorm() < b.squaredNorm();
  });
  return H;
}

}  // namespace

TranslateResult translate_theorem(const TranslateCoverSpec& spec, Rng& rng) {
  if (!(spec.eps > 0.0))
    throw PreconditionError("translate_theorem: eps must be positive");
  if (spec.O.empty())
    throw PreconditionError("translate_theorem: need at least one offset");
  int N = spec.A.dim();
  Vec shift = Vec::Zero(N);
  ConvexBody A = spec.A;
  if (interior_radius_at(spec.A, Vec::Zero(N)) <= 1e-6) {
    shift = inner_center(spec.A, AmbientNorm::L2, rng).center;
    A = ConvexBody::translate(spec.A, Vec(-shift));
  }
  std::vector<Vec> O;
  O.reserve(spec.O.size());
  for (const Vec& o : spec.O) O.push_back(Vec(o + shift));
  Mat Om(N, static_cast<int>(O.size()));
  for (size_t i = 0; i < O.size(); ++i) Om.col(static_cast<int>(i)) = O[i];
  Eigen::BDCSVD<Mat> osvd(Om, Eigen::ComputeThinU);
  int f = svd_rank(osvd);
  if (f > 3)
    throw PreconditionError("translate_theorem: offsets span more than 3 dimensions");
  // measured cover slack: the offsets must bring every ball point near A, with
  // room to spare, before a bounded leftover argument can mean anything
  double eta = 0.0;
  for (int s = 0; s < 2000; ++s)
    eta = std::max(eta,
                   nearest_translate_dist(A, sample_in_ball(AmbientNorm::L2, N, rng), O, 12));
  if (!(eta < 1.0 - 1e-6))
    throw PreconditionError("translate_theorem: translates leave ball points " +
                            std::to_string(eta) + " away from the body");
  TranslateResult res;
  res.shift = shift;
  res.cover_slack = eta;
  double eps = spec.eps;
  double delta = 0.0;
  Subspace F;
  if (f > 0) {
    F = Subspace(osvd.matrixU().leftCols(f));
    delta = expansion_delta(A, eps / 3.0, AmbientNorm::L2, rng).delta_prime;
  }
  double net_step = eps / 3.0;
  Vec bad;
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (f == 0) {
      res.Y = Subspace(Mat::Identity(N, N));
      res.H = {Vec::Zero(N)};
      res.proj = ProjectionSystem{};
    } else {
      res.proj = build_projection(A, F, delta, rng);
      res.Y = res.proj.Y;
      res.H = section_net(A, F, net_step);
    }
    int dy = res.Y.dim();
    bool ok = true;
    double worst = 0.0;
    res.samples = 10000;
    for (long s = 0; s < res.samples && ok; ++s) {
      Vec y = dy == 0 ? Vec(Vec::Zero(N))
                      : Vec(res.Y.basis * sample_in_ball(AmbientNorm::L2, dy, rng));
      double best = kInf;
      for (const Vec& h : res.H) {
        best = std::min(best,
                        h.squaredNorm() == 0.0
                            ? dist_to_body(A, y).value
                            : dist_to_body(ConvexBody::translate(A, Vec(-h)), y).value);
        if (best <= eps) break;
      }
      worst = std::max(worst, best);
      if (!(best <= eps + 1e-6)) {
        ok = false;
        bad = y;
      }
    }
    res.max_dist = worst;
    if (ok) {
      for (Vec& h : res.H) h += shift;
      return res;
    }
    res.refined = true;
    delta *= 0.5;
    net_step *= 0.5;
  }
  throw Error("translate_theorem: a sample of the kernel ball stayed " +
              std::to_string(res.max_dist) + " from every translate at eps = " +
              std::to_string(eps));
}

HalfRadiusReport half_radius_check(const ConvexBody& A, const std::vector<Vec>& O,
                                   double lambda, Rng& rng) {
  if (!(lambda > 0.0 && lambda < 0.5))
    throw PreconditionError("half_radius_check: lambda must lie in (0, 1/2)");
  int N = A.dim();
  double r0 = interior_radius_at(A, Vec::Zero(N));
  if (!(r0 > 0.0))
    throw PreconditionError("half_radius_check: 0 must be interior to the body");
  for (int s = 0; s < 2000; ++s) {
    Vec x = sample_in_body_gauge(A, rng);
    if (!contains(A, Vec(-x), 1e-7))
      throw PreconditionError("half_radius_check: body is not balanced");
  }
  HalfRadiusReport rep;
  rep.lambda_requested = lambda;
  rep.r0 = r0;
  // lambda (2 + eps/r0) <= 1 keeps lambda * (translates + eps slack) inside A;
  // 0.9 leaves sampling margin
  rep.eps_used = 0.9 * r0 * (1.0 - 2.0 * lambda) / lambda;
  rep.tr = translate_theorem({A, O, rep.eps_used}, rng);
  const Subspace& Y = rep.tr.Y;
  auto passes = [&](double lam, int draws) {
    for (int s = 0; s < draws; ++s) {
      Vec y = Y.dim() == 0 ? Vec(Vec::Zero(N))
                           : Vec(Y.basis * sample_in_ball(AmbientNorm::L2, Y.dim(), rng));
      if (!contains(A, Vec(lam * y), 1e-9)) return false;
    }
    return true;
  };
  rep.requested_ok = passes(lambda, 10000);
  for (double lam = 0.49; lam > 0.005; lam -= 0.01)
    if (passes(lam, 2000)) {
      rep.lambda_largest = lam;
      break;
    }
  return rep;
}

HilbertCodimReport hilbert_codim(const ConvexBody& A, const ConvexBody& K, double eps,
                                 Rng& rng) {
  if (!(eps > 0.0)) throw PreconditionError("hilbert_codim: eps must be positive");
  if (K.kind() != ConvexBody::Kind::Box)
    throw PreconditionError("hilbert_codim: the compact part must be a box");
  int N = A.dim();
  if (K.dim() != N)
    throw PreconditionError("hilbert_codim: dimension mismatch between the bodies");
  for (int s = 0; s < 2000; ++s) {
    Vec a = sample_in_body_gauge(A, rng);
    if (a.norm() > 1.0 + 1e-9)
      throw PreconditionError("hilbert_codim: body leaves the unit ball, |a| = " +
                              std::to_string(a.norm()));
  }
  HilbertCodimReport rep;
  rep.delta = eps * eps / 8.0;
  const BoxRep* box = K.as_box();
  Vec ext = box->lo.cwiseAbs().cwiseMax(box->hi.cwiseAbs());
  rep.cut = 0;
  for (int n = 1; n <= N - 1; ++n)
    if (std::sqrt(ext.tail(N - (n - 1)).squaredNorm()) <= rep.delta) {
      rep.cut = n;
      break;
    }
  if (rep.cut == 0)
    throw Error("hilbert_codim: box extents never drop below delta = " +
                std::to_string(rep.delta));
  rep.Y = Subspace(Mat::Identity(N, N).rightCols(N - rep.cut));
  rep.samples = 10000;
  for (long s = 0; s < rep.samples; ++s) {
    Vec y = rep.Y.basis * random_unit_vector(AmbientNorm::L2, rep.Y.dim(), rng);
    double dist = dist_to_body(A, y).value;
    rep.max_dist = std::max(rep.max_dist, dist);
    if (!(dist <= eps + 1e-6))
      throw Error("hilbert_codim: kernel sphere point sits " + std::to_string(dist) +
                  " from the body at eps = " + std::to_string(eps));
  }
  return rep;
}

ConvexBody near_ball_ellipsoid(int N) {
  Vec q(N);
  for (int i = 0; i < N; ++i) {
    double axis = 1.0 - std::ldexp(1.0, -(i + 1));
    q(i) = 1.0 / (axis * axis);
  }
  return ConvexBody::quad_lin(q, Vec::Zero(N), 1.0);
}

ConvexBody dyadic_box(int N) {
  Vec ext(N);
  for (int i = 0; i < N; ++i) ext(i) = std::ldexp(1.0, -(i + 1));
  return ConvexBody::box(Vec(-ext), ext);
}

CounterexampleReport counterexample_check(int N, const std::vector<double>& eps_list,
                                          Rng& rng) {
  if (N < 4)
    throw PreconditionError("counterexample_check: need at least 4 coordinates");
  ConvexBody A = near_ball_ellipsoid(N);
  Vec q(N), ext(N);
  for (int i = 0; i < N; ++i) {
    ext(i) = std::ldexp(1.0, -(i + 1));
    double axis = 1.0 - ext(i);
    q(i) = 1.0 / (axis * axis);
  }
  CounterexampleReport rep;
  rep.split_samples = 100000;
  for (long s = 0; s < rep.split_samples; ++s) {
    Vec b = sample_in_ball(AmbientNorm::L2, N, rng);
    Vec r = b - b.cwiseMax(Vec(-ext)).cwiseMin(ext);  // remainder after the box clamp
    double v = q.dot(r.cwiseProduct(r));
    rep.split_max = std::max(rep.split_max, v);
    if (v > 1.0 + 1e-9) {
      rep.split_ok = false;
      rep.split_witness = b;
      break;
    }
  }
  for (int n = 1; n <= std::min(8, N); ++n) {
    Vec e = Vec::Zero(N);
    e(n - 1) = 1.0;
    rep.axis.push_back({n, dist_to_body(A, e).value, std::ldexp(1.0, -n)});
  }
  for (double eps : eps_list) {
    if (!(eps >= std::ldexp(1.0, -N)))
      throw PreconditionError("counterexample_check: eps below the axis resolution");
    int m = 0;
    while (std::ldexp(1.0, -(m + 1)) > eps) ++m;
    CounterexampleReport::EpsRow row{eps, m, std::ldexp(1.0, -(m + 1)), false, true};
    Vec e = Vec::Zero(N);
    e(m) = 1.0;  // first trailing axis, 1-based coordinate m+1
    row.outside = violation(A, e) > 0.0;
    for (int s = 0; s < 2000 && row.verified; ++s) {
      Vec u = random_unit_vector(AmbientNorm::L2, N - m, rng);
      Vec y = Vec::Zero(N);
      y.tail(N - m) = u;
      row.verified = dist_to_body(A, y).value <= eps + 1e-6;
    }
    rep.eps_rows.push_back(row);
  }
  return rep;
}

HexagonReport hexagon_check() {
  Mat rows(6, 2);
  Vec rhs = Vec::Constant(6, 0.5);
  for (int k = 0; k < 6; ++k) {
    double th = M_PI / 6.0 + k * M_PI / 3.0;
    rows.row(k) << std::cos(th), std::sin(th);
  }
  ConvexBody A = ConvexBody::polytope(rows, rhs);
  std::vector<Vec> H;
  for (int k = 0; k < 6; ++k) {
    Vec v(2);
    v << std::cos(k * M_PI / 3.0), std::sin(k * M_PI / 3.0);
    H.push_back(Vec(v / std::sqrt(3.0)));  // vertices, circumradius 1/sqrt(3)
  }
  HexagonReport rep;
  rep.ok = true;
  Rng rng(0x68657830756e6974ull);  // fixed stream, the report is deterministic
  auto covered = [&](const Vec& b) {
    double best = kInf;
    for (const Vec& h : H) best = std::min(best, violation(A, Vec(b + h)));
    rep.max_needed = std::max(rep.max_needed, best);
    return best <= 1e-9;
  };
  rep.samples = 100000;
  for (long s = 0; s < rep.samples; ++s) {
    Vec b = sample_in_ball(AmbientNorm::L2, 2, rng);
    if (!covered(b)) {
      rep.ok = false;
      rep.witness = b;
      return rep;
    }
  }
  std::vector<Vec> mesh = sphere_mesh(2, 512);
  rep.mesh_points = static_cast<long>(mesh.size());
  for (const Vec& b : mesh)
    if (!covered(b)) {
      rep.ok = false;
      rep.witness = b;
      return rep;
    }
  return rep;
}

}  // namespace cclab
