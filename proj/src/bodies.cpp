#include "cclab/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "cclab/simplex.hpp"

namespace cclab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ConvexBody ConvexBody::ball(AmbientNorm norm, Vec center, double radius) {
  if (!(radius > 0)) throw PreconditionError("ball: radius must be positive");
  if (center.size() < 1) throw PreconditionError("ball: empty center");
  return ConvexBody(std::make_shared<Node>(Node{BallRep{norm, std::move(center), radius}}));
}

ConvexBody ConvexBody::polytope(Mat A, Vec b) {
  if (A.rows() != b.size()) throw PreconditionError("polytope: A rows != b size");
  if (A.cols() < 1 || A.rows() < 1) throw PreconditionError("polytope: empty system");
  for (int i = 0; i < A.rows(); ++i) {
    double nn = A.row(i).norm();
    if (nn < 1e-12) throw PreconditionError("polytope: zero row");
    A.row(i) /= nn;
    b(i) /= nn;
  }
  return ConvexBody(std::make_shared<Node>(Node{PolytopeRep{std::move(A), std::move(b)}}));
}

ConvexBody ConvexBody::quad_lin(Vec q, Vec a, double r) {
  if (q.size() != a.size()) throw PreconditionError("quad_lin: size mismatch");
  if (q.size() < 1) throw PreconditionError("quad_lin: empty");
  for (int i = 0; i < q.size(); ++i)
    if (q(i) < 0) throw PreconditionError("quad_lin: negative quadratic coefficient");
  return ConvexBody(std::make_shared<Node>(Node{QuadLinRep{std::move(q), std::move(a), r}}));
}

ConvexBody ConvexBody::box(Vec lo, Vec hi) {
  if (lo.size() != hi.size() || lo.size() < 1) throw PreconditionError("box: size mismatch");
  for (int i = 0; i < lo.size(); ++i)
    if (!(lo(i) <= hi(i))) throw PreconditionError("box: lo > hi");
  return ConvexBody(std::make_shared<Node>(Node{BoxRep{std::move(lo), std::move(hi)}}));
}

ConvexBody ConvexBody::intersection(std::vector<ConvexBody> members) {
  if (members.empty()) throw PreconditionError("intersection: no members");
  int n = members[0].dim();
  for (auto& m : members)
    if (m.dim() != n) throw PreconditionError("intersection: dimension mismatch");
  return ConvexBody(std::make_shared<Node>(Node{IntersectionRep{std::move(members)}}));
}

ConvexBody ConvexBody::translate(ConvexBody inner, Vec t) {
  if (t.size() != inner.dim()) throw PreconditionError("translate: dimension mismatch");
  return ConvexBody(std::make_shared<Node>(Node{TranslateRep{std::move(inner), std::move(t)}}));
}

ConvexBody ConvexBody::scale(ConvexBody inner, double lambda) {
  if (!(lambda > 0)) throw PreconditionError("scale: factor must be positive");
  return ConvexBody(std::make_shared<Node>(Node{ScaleRep{std::move(inner), lambda}}));
}

ConvexBody::Kind ConvexBody::kind() const {
  return static_cast<Kind>(node_->v.index());
}

int ConvexBody::dim() const {
  switch (kind()) {
    case Kind::Ball: return (int)as_ball()->center.size();
    case Kind::Polytope: return (int)as_polytope()->A.cols();
    case Kind::QuadLin: return (int)as_quad_lin()->q.size();
    case Kind::Box: return (int)as_box()->lo.size();
    case Kind::Intersection: return as_intersection()->members[0].dim();
    case Kind::Translate: return as_translate()->inner.dim();
    case Kind::Scale: return as_scale()->inner.dim();
  }
  throw Error("unreachable");
}

const BallRep* ConvexBody::as_ball() const { return std::get_if<BallRep>(&node_->v); }
const PolytopeRep* ConvexBody::as_polytope() const { return std::get_if<PolytopeRep>(&node_->v); }
const QuadLinRep* ConvexBody::as_quad_lin() const { return std::get_if<QuadLinRep>(&node_->v); }
const BoxRep* ConvexBody::as_box() const { return std::get_if<BoxRep>(&node_->v); }
const IntersectionRep* ConvexBody::as_intersection() const {
  return std::get_if<IntersectionRep>(&node_->v);
}
const TranslateRep* ConvexBody::as_translate() const { return std::get_if<TranslateRep>(&node_->v); }
const ScaleRep* ConvexBody::as_scale() const { return std::get_if<ScaleRep>(&node_->v); }

double violation(const ConvexBody& b, const Vec& x) {
  switch (b.kind()) {
    case ConvexBody::Kind::Ball: {
      auto* r = b.as_ball();
      return norm_eval(r->norm, x - r->center) - r->radius;
    }
    case ConvexBody::Kind::Polytope: {
      auto* r = b.as_polytope();
      return (r->A * x - r->b).maxCoeff();
    }
    case ConvexBody::Kind::QuadLin: {
      auto* r = b.as_quad_lin();
      return r->q.dot(x.cwiseProduct(x)) + r->a.dot(x) - r->r;
    }
    case ConvexBody::Kind::Box: {
      auto* r = b.as_box();
      double v = -kInf;
      for (int i = 0; i < x.size(); ++i)
        v = std::max(v, std::max(r->lo(i) - x(i), x(i) - r->hi(i)));
      return v;
    }
    case ConvexBody::Kind::Intersection: {
      double v = -kInf;
      for (auto& m : b.as_intersection()->members) v = std::max(v, violation(m, x));
      return v;
    }
    case ConvexBody::Kind::Translate: {
      auto* r = b.as_translate();
      return violation(r->inner, x - r->t);
    }
    case ConvexBody::Kind::Scale: {
      auto* r = b.as_scale();
      return violation(r->inner, x / r->lambda);
    }
  }
  throw Error("unreachable");
}

bool contains(const ConvexBody& b, const Vec& x, double tol) {
  return violation(b, x) <= tol;
}

namespace {

double gauge_bisect(const ConvexBody& b, const Vec& x) {
  if (!(violation(b, Vec::Zero(x.size())) < 0))
    throw PreconditionError("gauge: origin not interior");
  double lo, hi;
  if (contains(b, x, 0.0)) {
    hi = 1.0;
    lo = 0.5;
    int k = 0;
    while (contains(b, x / lo, 0.0)) {
      hi = lo;
      lo *= 0.5;
      if (++k > 1100) return 0.0;  // recession direction
    }
  } else {
    lo = 1.0;
    hi = 2.0;
    int k = 0;
    while (!contains(b, x / hi, 0.0)) {
      lo = hi;
      hi *= 2.0;
      if (++k > 1100) throw SearchError("gauge: no bounded bracket");
    }
  }
  while (hi - lo > tols().bisection_rel * hi) {
    double mid = 0.5 * (lo + hi);
    (contains(b, x / mid, 0.0) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double gauge(const ConvexBody& b, const Vec& x) {
  if (x.lpNorm<Eigen::Infinity>() == 0.0) return 0.0;
  switch (b.kind()) {
    case ConvexBody::Kind::Ball: {
      auto* r = b.as_ball();
      if (r->center.lpNorm<Eigen::Infinity>() == 0.0) return norm_eval(r->norm, x) / r->radius;
      if (r->norm == AmbientNorm::L2) {
        double c2 = r->center.squaredNorm(), rr = r->radius * r->radius;
        if (!(rr > c2)) throw PreconditionError("gauge: origin not interior");
        double cx = r->center.dot(x);
        return (-cx + std::sqrt(cx * cx + (rr - c2) * x.squaredNorm())) / (rr - c2);
      }
      return gauge_bisect(b, x);
    }
    case ConvexBody::Kind::Polytope: {
      auto* r = b.as_polytope();
      double g = 0.0;
      for (int i = 0; i < r->b.size(); ++i) {
        if (!(r->b(i) > 0)) throw PreconditionError("gauge: origin not interior");
        g = std::max(g, r->A.row(i).dot(x) / r->b(i));
      }
      return g;
    }
    case ConvexBody::Kind::QuadLin: {
      auto* r = b.as_quad_lin();
      if (!(r->r > 0)) throw PreconditionError("gauge: origin not interior");
      double ax = r->a.dot(x), qx = r->q.dot(x.cwiseProduct(x));
      return (ax + std::sqrt(ax * ax + 4.0 * r->r * qx)) / (2.0 * r->r);
    }
    case ConvexBody::Kind::Box: {
      auto* r = b.as_box();
      double g = 0.0;
      for (int i = 0; i < x.size(); ++i) {
        if (x(i) > 0) {
          if (!(r->hi(i) > 0)) throw PreconditionError("gauge: origin not interior");
          g = std::max(g, x(i) / r->hi(i));
        } else if (x(i) < 0) {
          if (!(r->lo(i) < 0)) throw PreconditionError("gauge: origin not interior");
          g = std::max(g, x(i) / r->lo(i));
        }
      }
      return g;
    }
    case ConvexBody::Kind::Intersection: {
      double g = 0.0;
      for (auto& m : b.as_intersection()->members) g = std::max(g, gauge(m, x));
      return g;
    }
    case ConvexBody::Kind::Translate:
      return gauge_bisect(b, x);
    case ConvexBody::Kind::Scale: {
      auto* r = b.as_scale();
      return gauge(r->inner, x) / r->lambda;
    }
  }
  throw Error("unreachable");
}

namespace {

SupportResult support_intersection(const ConvexBody& b, const Vec& d) {
  double dn = d.norm();
  if (dn == 0.0) return {0.0, true};
  int n = (int)d.size();
  Vec u = d / dn;
  auto f = [&](const Vec& v) {
    double g = gauge(b, v);
    if (g <= 0) throw SearchError("support: unbounded direction in intersection");
    return d.dot(v) / g;
  };
  double best = f(u);
  Rng local(0x5eed2024ull);
  int evals = 0;
  for (double eta = 0.5; eta > 1e-9 && evals < 60000;) {
    bool improved = false;
    int tries = 12 + 2 * n;
    for (int t = 0; t < tries && evals < 60000; ++t) {
      Vec dir(n);
      if (t == 0)
        dir = d - d.dot(u) * u;
      else
        for (int i = 0; i < n; ++i) dir(i) = local.gaussian();
      dir -= dir.dot(u) * u;
      double dl = dir.norm();
      if (dl < 1e-14) continue;
      Vec u2 = (u + (eta / dl) * dir).normalized();
      double f2 = f(u2);
      ++evals;
      if (f2 > best) {
        best = f2;
        u = u2;
        improved = true;
        break;
      }
    }
    if (!improved) eta *= 0.5;
  }
  return {best, true};
}

}  // namespace

SupportResult support(const ConvexBody& b, const Vec& d) {
  switch (b.kind()) {
    case ConvexBody::Kind::Ball: {
      auto* r = b.as_ball();
      return {r->center.dot(d) + r->radius * norm_eval(dual_norm(r->norm), d), false};
    }
    case ConvexBody::Kind::Polytope: {
      auto* r = b.as_polytope();
      LpResult lp = lp_max(r->A, r->b, d);
      if (lp.status == LpStatus::Unbounded) throw Error("support: unbounded polytope direction");
      if (lp.status == LpStatus::Infeasible) throw PreconditionError("support: empty polytope");
      return {lp.value, false};
    }
    case ConvexBody::Kind::QuadLin: {
      auto* r = b.as_quad_lin();
      double rp = r->r, s2 = 0.0, shift = 0.0;
      for (int i = 0; i < d.size(); ++i) {
        if (r->q(i) == 0.0) {
          if (d(i) != 0.0 || (r->a(i) != 0.0 && d.lpNorm<Eigen::Infinity>() != 0.0))
            throw Error("support: unbounded direction");
          continue;
        }
        rp += r->a(i) * r->a(i) / (4.0 * r->q(i));
        s2 += d(i) * d(i) / r->q(i);
        shift += d(i) * r->a(i) / (2.0 * r->q(i));
      }
      if (rp < 0) throw PreconditionError("support: empty body");
      return {std::sqrt(rp * s2) - shift, false};
    }
    case ConvexBody::Kind::Box: {
      auto* r = b.as_box();
      double v = 0.0;
      for (int i = 0; i < d.size(); ++i) v += std::max(d(i) * r->lo(i), d(i) * r->hi(i));
      return {v, false};
    }
    case ConvexBody::Kind::Intersection:
      return support_intersection(b, d);
    case ConvexBody::Kind::Translate: {
      auto* r = b.as_translate();
      SupportResult s = support(r->inner, d);
      return {s.value + d.dot(r->t), s.approximate};
    }
    case ConvexBody::Kind::Scale: {
      auto* r = b.as_scale();
      SupportResult s = support(r->inner, d);
      return {r->lambda * s.value, s.approximate};
    }
  }
  throw Error("unreachable");
}

double max_quad_over_unit_ball(const Vec& c, const Vec& d) {
  int n = (int)c.size();
  double dmax = 0.0;
  for (int i = 0; i < n; ++i) {
    if (d(i) < 0) throw PreconditionError("max_quad: negative curvature");
    dmax = std::max(dmax, d(i));
  }
  double cn = c.norm();
  if (cn == 0.0) return dmax;
  auto value = [&](const Vec& w) { return c.dot(w) + d.dot(w.cwiseProduct(w)); };
  // KKT: c + 2 diag(d) w = 2 sigma w with sigma >= dmax for the global max.
  auto wsq = [&](double sigma) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      double den = 2.0 * (sigma - d(i));
      s += c(i) * c(i) / (den * den);
    }
    return s;
  };
  bool top_free = true;  // no c mass on the top eigenvalue
  double lim = 0.0;
  for (int i = 0; i < n; ++i) {
    if (d(i) == dmax && c(i) != 0.0) top_free = false;
    if (d(i) < dmax) {
      double den = 2.0 * (dmax - d(i));
      lim += c(i) * c(i) / (den * den);
    }
  }
  if (top_free && lim <= 1.0) {
    Vec w = Vec::Zero(n);
    for (int i = 0; i < n; ++i)
      if (d(i) < dmax) w(i) = c(i) / (2.0 * (dmax - d(i)));
    int j = 0;
    while (d(j) != dmax) ++j;
    w(j) = std::sqrt(std::max(0.0, 1.0 - w.squaredNorm()));
    return value(w);
  }
  double lo = dmax, hi = dmax + 0.5 * cn;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= dmax) break;
    (wsq(mid) > 1.0 ? lo : hi) = mid;
  }
  double sigma = hi;
  Vec w(n);
  for (int i = 0; i < n; ++i) w(i) = c(i) / (2.0 * (sigma - d(i)));
  double wn = w.norm();
  if (wn > 0) w /= wn;
  return value(w);
}

double max_quad_form_over_unit_ball(const Vec& c, const Mat& Q) {
  Eigen::SelfAdjointEigenSolver<Mat> es(Q);
  Vec d = es.eigenvalues().cwiseMax(0.0);
  Vec cr = es.eigenvectors().transpose() * c;
  return max_quad_over_unit_ball(cr, d);
}

namespace {

double quad_growth_radius_l1(const Vec& c, const Vec& q, double s) {
  // min_i positive root of q_i t^2 + |c_i| t = s
  double rho = kInf;
  for (int i = 0; i < c.size(); ++i) {
    double ci = std::abs(c(i)), qi = q(i), t;
    if (qi == 0.0) {
      if (ci == 0.0) continue;
      t = s / ci;
    } else {
      t = (-ci + std::sqrt(ci * ci + 4.0 * qi * s)) / (2.0 * qi);
    }
    rho = std::min(rho, t);
  }
  return rho;
}

double quad_growth_radius_linf(const Vec& c, const Vec& q, double s) {
  double C = c.lpNorm<1>(), Q = q.sum();
  if (Q == 0.0) return C == 0.0 ? kInf : s / C;
  return (-C + std::sqrt(C * C + 4.0 * s * Q)) / (2.0 * Q);
}

double quad_growth_radius_l2(const Vec& c, const Vec& q, double s) {
  double lo = quad_growth_radius_linf(c, q, s);
  double hi = quad_growth_radius_l1(c, q, s);
  if (hi == kInf) return kInf;
  if (hi - lo <= 1e-14 * std::max(1.0, hi)) return lo;
  auto grow = [&](double rho) { return max_quad_over_unit_ball(rho * c, rho * rho * q); };
  for (int it = 0; it < 120 && hi - lo > 1e-13 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (grow(mid) <= s ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

double interior_radius_at(const ConvexBody& b, const Vec& x, AmbientNorm p) {
  int N = (int)x.size();
  switch (b.kind()) {
    case ConvexBody::Kind::Ball: {
      auto* rep = b.as_ball();
      Vec v = x - rep->center;
      double r = rep->radius, rho = -kInf;
      AmbientNorm q = rep->norm;
      if (q == p) rho = r - norm_eval(q, v);
      else if (q == AmbientNorm::Linf) rho = r - v.lpNorm<Eigen::Infinity>();
      else if (q == AmbientNorm::L1) {
        double slack = r - v.lpNorm<1>();
        rho = p == AmbientNorm::L2 ? slack / std::sqrt((double)N) : slack / N;
      } else {  // q = L2
        double rr = r * r - v.squaredNorm();
        if (rr <= 0) return 0.0;
        if (p == AmbientNorm::L1) {
          double m = v.lpNorm<Eigen::Infinity>();
          rho = -m + std::sqrt(m * m + rr);
        } else {
          double m = v.lpNorm<1>();
          rho = (-m + std::sqrt(m * m + N * rr)) / N;
        }
      }
      return std::max(0.0, rho);
    }
    case ConvexBody::Kind::Polytope: {
      auto* rep = b.as_polytope();
      double rho = kInf;
      for (int i = 0; i < rep->b.size(); ++i) {
        double dn = norm_eval(dual_norm(p), Vec(rep->A.row(i).transpose()));
        rho = std::min(rho, (rep->b(i) - rep->A.row(i).dot(x)) / dn);
      }
      return std::max(0.0, rho);
    }
    case ConvexBody::Kind::Box: {
      auto* rep = b.as_box();
      double rho = kInf;
      for (int i = 0; i < N; ++i)
        rho = std::min(rho, std::min(rep->hi(i) - x(i), x(i) - rep->lo(i)));
      return std::max(0.0, rho);
    }
    case ConvexBody::Kind::QuadLin: {
      auto* rep = b.as_quad_lin();
      double s = rep->r - rep->q.dot(x.cwiseProduct(x)) - rep->a.dot(x);
      if (s <= 0) return 0.0;
      Vec c = 2.0 * rep->q.cwiseProduct(x) + rep->a;
      switch (p) {
        case AmbientNorm::L1: return quad_growth_radius_l1(c, rep->q, s);
        case AmbientNorm::Linf: return quad_growth_radius_linf(c, rep->q, s);
        case AmbientNorm::L2: return quad_growth_radius_l2(c, rep->q, s);
      }
      throw Error("unreachable");
    }
    case ConvexBody::Kind::Intersection: {
      double rho = kInf;
      for (auto& m : b.as_intersection()->members)
        rho = std::min(rho, interior_radius_at(m, x, p));
      return rho;
    }
    case ConvexBody::Kind::Translate: {
      auto* rep = b.as_translate();
      return interior_radius_at(rep->inner, x - rep->t, p);
    }
    case ConvexBody::Kind::Scale: {
      auto* rep = b.as_scale();
      return rep->lambda * interior_radius_at(rep->inner, x / rep->lambda, p);
    }
  }
  throw Error("unreachable");
}

namespace {

Vec proj_l1_ball(const Vec& v, double r) {
  if (v.lpNorm<1>() <= r) return v;
  int n = (int)v.size();
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) u[i] = std::abs(v(i));
  std::sort(u.begin(), u.end(), std::greater<double>());
  double csum = 0.0, theta = 0.0;
  for (int k = 0; k < n; ++k) {
    csum += u[k];
    double t = (csum - r) / (k + 1);
    if (t >= (k + 1 < n ? u[k + 1] : 0.0)) {
      theta = t;
      break;
    }
  }
  Vec y(n);
  for (int i = 0; i < n; ++i) {
    double m = std::abs(v(i)) - theta;
    y(i) = m > 0 ? (v(i) > 0 ? m : -m) : 0.0;
  }
  return y;
}

Vec proj_quad_lin(const QuadLinRep& rep, const Vec& x) {
  auto g = [&](const Vec& y) { return rep.q.dot(y.cwiseProduct(y)) + rep.a.dot(y); };
  if (g(x) <= rep.r) return x;
  auto ymu = [&](double mu) {
    Vec y(x.size());
    for (int i = 0; i < x.size(); ++i)
      y(i) = (x(i) - 0.5 * mu * rep.a(i)) / (1.0 + mu * rep.q(i));
    return y;
  };
  double lo = 0.0, hi = 1.0;
  int k = 0;
  while (g(ymu(hi)) > rep.r) {
    lo = hi;
    hi *= 2.0;
    if (++k > 300) throw SearchError("quad_lin projection: no bracket");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    double mid = 0.5 * (lo + hi);
    (g(ymu(mid)) > rep.r ? lo : hi) = mid;
  }
  return ymu(hi);
}

using Projector = std::function<Vec(const Vec&)>;

// Euclidean projectors of s * body + t, exact per constraint.
void flatten_projectors(const ConvexBody& b, double s, Vec t, std::vector<Projector>& out) {
  switch (b.kind()) {
    case ConvexBody::Kind::Ball: {
      auto rep = *b.as_ball();
      Vec c = s * rep.center + t;
      double r = s * rep.radius;
      if (rep.norm == AmbientNorm::L2)
        out.push_back([c, r](const Vec& x) {
          Vec w = x - c;
          double n = w.norm();
          return n <= r ? x : Vec(c + (r / n) * w);
        });
      else if (rep.norm == AmbientNorm::Linf)
        out.push_back([c, r](const Vec& x) {
          Vec w = x - c;
          return Vec(c + w.cwiseMax(-r).cwiseMin(r));
        });
      else
        out.push_back([c, r](const Vec& x) { return Vec(c + proj_l1_ball(x - c, r)); });
      return;
    }
    case ConvexBody::Kind::Box: {
      auto rep = *b.as_box();
      Vec lo = s * rep.lo + t, hi = s * rep.hi + t;
      out.push_back([lo, hi](const Vec& x) { return Vec(x.cwiseMax(lo).cwiseMin(hi)); });
      return;
    }
    case ConvexBody::Kind::Polytope: {
      auto rep = *b.as_polytope();
      for (int i = 0; i < rep.b.size(); ++i) {
        Vec a = rep.A.row(i).transpose();
        double bi = s * rep.b(i) + a.dot(t);
        out.push_back([a, bi](const Vec& x) {
          double ex = a.dot(x) - bi;
          return ex <= 0 ? x : Vec(x - ex * a);
        });
      }
      return;
    }
    case ConvexBody::Kind::QuadLin: {
      auto rep = *b.as_quad_lin();
      // s*body + t is quad_lin again: q' = q/s^2, a' = a/s - 2 q t / s^2,
      // r' = r - sum q_i t_i^2 / s^2 + sum a_i t_i / s
      QuadLinRep tr;
      tr.q = rep.q / (s * s);
      tr.a = rep.a / s - 2.0 * rep.q.cwiseProduct(t) / (s * s);
      tr.r = rep.r - rep.q.dot(t.cwiseProduct(t)) / (s * s) + rep.a.dot(t) / s;
      out.push_back([tr](const Vec& x) { return proj_quad_lin(tr, x); });
      return;
    }
    case ConvexBody::Kind::Intersection: {
      for (auto& m : b.as_intersection()->members) flatten_projectors(m, s, t, out);
      return;
    }
    case ConvexBody::Kind::Translate: {
      auto* rep = b.as_translate();
      flatten_projectors(rep->inner, s, t + s * rep->t, out);
      return;
    }
    case ConvexBody::Kind::Scale: {
      auto* rep = b.as_scale();
      flatten_projectors(rep->inner, s * rep->lambda, t, out);
      return;
    }
  }
  throw Error("unreachable");
}

Vec dykstra(const std::vector<Projector>& projs, const Vec& x) {
  Vec y = x;
  std::vector<Vec> z(projs.size(), Vec::Zero(x.size()));
  for (int cycle = 0; cycle < 2000; ++cycle) {
    double moved = 0.0;
    for (size_t k = 0; k < projs.size(); ++k) {
      Vec w = y + z[k];
      Vec yn = projs[k](w);
      z[k] = w - yn;
      moved += (yn - y).norm();
      y = yn;
    }
    if (moved <= 1e-11 * (1.0 + x.norm())) break;
  }
  return y;
}

}  // namespace

DistResult dist_to_body(const ConvexBody& b, const Vec& x, AmbientNorm p) {
  if (violation(b, x) <= 0.0) return {0.0, true};
  switch (b.kind()) {
    case ConvexBody::Kind::Ball: {
      auto* rep = b.as_ball();
      if (rep->norm == p)
        return {norm_eval(p, Vec(x - rep->center)) - rep->radius, true};
      break;
    }
    case ConvexBody::Kind::Box: {
      auto* rep = b.as_box();
      Vec y = x.cwiseMax(rep->lo).cwiseMin(rep->hi);
      return {norm_eval(p, Vec(x - y)), true};
    }
    case ConvexBody::Kind::Polytope: {
      auto* rep = b.as_polytope();
      if (rep->b.size() == 1) {
        double num = rep->A.row(0).dot(x) - rep->b(0);
        return {num / norm_eval(dual_norm(p), Vec(rep->A.row(0).transpose())), true};
      }
      break;
    }
    case ConvexBody::Kind::Translate: {
      auto* rep = b.as_translate();
      return dist_to_body(rep->inner, Vec(x - rep->t), p);
    }
    case ConvexBody::Kind::Scale: {
      auto* rep = b.as_scale();
      DistResult r = dist_to_body(rep->inner, Vec(x / rep->lambda), p);
      return {rep->lambda * r.value, r.exact};
    }
    default: break;
  }
  std::vector<Projector> projs;
  flatten_projectors(b, 1.0, Vec::Zero(x.size()), projs);
  Vec y;
  bool exact;
  if (projs.size() == 1) {
    y = projs[0](x);
    exact = (p == AmbientNorm::L2);
  } else {
    y = dykstra(projs, x);
    exact = false;
  }
  if (violation(b, y) > tols().membership) {
    // pull onto the body along a segment to an interior anchor
    Rng local(0xd157ull);
    CenterResult anchor = inner_center(b, AmbientNorm::L2, local);
    if (anchor.radius > 0.0) {
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        Vec ym = y + mid * (anchor.center - y);
        (violation(b, ym) > 0.0 ? lo : hi) = mid;
      }
      y = y + hi * (anchor.center - y);
      exact = false;
    } else if (violation(b, y) > tols().membership) {
      throw SearchError("dist_to_body: projection failed to reach the body");
    }
  }
  return {norm_eval(p, Vec(x - y)), exact};
}

std::vector<Interval> bounding_box(const ConvexBody& b) {
  int n = b.dim();
  std::vector<Interval> out(n);
  switch (b.kind()) {
    case ConvexBody::Kind::Ball: {
      auto* rep = b.as_ball();
      for (int i = 0; i < n; ++i)
        out[i] = {rep->center(i) - rep->radius, rep->center(i) + rep->radius};
      return out;
    }
    case ConvexBody::Kind::Box: {
      auto* rep = b.as_box();
      for (int i = 0; i < n; ++i) out[i] = {rep->lo(i), rep->hi(i)};
      return out;
    }
    case ConvexBody::Kind::Polytope: {
      auto* rep = b.as_polytope();
      for (int i = 0; i < n; ++i) {
        Vec d = Vec::Zero(n);
        d(i) = 1.0;
        LpResult up = lp_max(rep->A, rep->b, d);
        LpResult dn = lp_max(rep->A, rep->b, Vec(-d));
        if (up.status == LpStatus::Infeasible) throw PreconditionError("bounding_box: empty polytope");
        out[i] = {dn.status == LpStatus::Unbounded ? -kInf : -dn.value,
                  up.status == LpStatus::Unbounded ? kInf : up.value};
      }
      return out;
    }
    case ConvexBody::Kind::QuadLin: {
      auto* rep = b.as_quad_lin();
      double rp = rep->r;
      bool degenerate = false;
      for (int i = 0; i < n; ++i) {
        if (rep->q(i) == 0.0) {
          if (rep->a(i) != 0.0) degenerate = true;
        } else {
          rp += rep->a(i) * rep->a(i) / (4.0 * rep->q(i));
        }
      }
      for (int i = 0; i < n; ++i) {
        if (degenerate || rep->q(i) == 0.0) {
          out[i] = {-kInf, kInf};
        } else if (rp < 0) {
          out[i] = {kInf, -kInf};  // empty
        } else {
          double m = -rep->a(i) / (2.0 * rep->q(i)), e = std::sqrt(rp / rep->q(i));
          out[i] = {m - e, m + e};
        }
      }
      return out;
    }
    case ConvexBody::Kind::Intersection: {
      for (int i = 0; i < n; ++i) out[i] = {-kInf, kInf};
      for (auto& m : b.as_intersection()->members) {
        auto bb = bounding_box(m);
        for (int i = 0; i < n; ++i) {
          out[i].lo = std::max(out[i].lo, bb[i].lo);
          out[i].hi = std::min(out[i].hi, bb[i].hi);
        }
      }
      return out;
    }
    case ConvexBody::Kind::Translate: {
      auto* rep = b.as_translate();
      out = bounding_box(rep->inner);
      for (int i = 0; i < n; ++i) {
        out[i].lo += rep->t(i);
        out[i].hi += rep->t(i);
      }
      return out;
    }
    case ConvexBody::Kind::Scale: {
      auto* rep = b.as_scale();
      out = bounding_box(rep->inner);
      for (int i = 0; i < n; ++i) {
        out[i].lo *= rep->lambda;
        out[i].hi *= rep->lambda;
      }
      return out;
    }
  }
  throw Error("unreachable");
}

namespace {

CenterResult hill_climb_center(const ConvexBody& b, AmbientNorm p, Vec x0, Rng& rng) {
  int n = (int)x0.size();
  Vec x = std::move(x0);
  double best = interior_radius_at(b, x, p);
  double step = 1.0;
  auto bb = bounding_box(b);
  double span = 0.0;
  for (auto& iv : bb)
    if (std::isfinite(iv.lo) && std::isfinite(iv.hi)) span = std::max(span, iv.hi - iv.lo);
  if (span > 0) step = 0.25 * span;
  for (int round = 0; round < 400 && step > 1e-12 * std::max(1.0, span); ++round) {
    bool improved = false;
    for (int t = 0; t < 2 * n + 8; ++t) {
      Vec dir(n);
      if (t < 2 * n) {
        dir = Vec::Zero(n);
        dir(t / 2) = (t % 2 == 0) ? 1.0 : -1.0;
      } else {
        for (int i = 0; i < n; ++i) dir(i) = rng.gaussian();
        double dn = dir.norm();
        if (dn < 1e-14) continue;
        dir /= dn;
      }
      Vec x2 = x + step * dir;
      double r2 = interior_radius_at(b, x2, p);
      if (r2 > best * (1.0 + 1e-13) && r2 > best) {
        x = x2;
        best = r2;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return {x, best};
}

}  // namespace

CenterResult inner_center(const ConvexBody& b, AmbientNorm p, Rng& rng) {
  switch (b.kind()) {
    case ConvexBody::Kind::Ball: {
      auto* rep = b.as_ball();
      return {rep->center, interior_radius_at(b, rep->center, p)};
    }
    case ConvexBody::Kind::Box: {
      auto* rep = b.as_box();
      Vec c = 0.5 * (rep->lo + rep->hi);
      return {c, interior_radius_at(b, c, p)};
    }
    case ConvexBody::Kind::Polytope: {
      auto* rep = b.as_polytope();
      int n = (int)rep->A.cols(), m = (int)rep->b.size();
      Mat A2(m + 1, n + 1);
      Vec b2(m + 1), c2 = Vec::Zero(n + 1);
      A2.setZero();
      for (int i = 0; i < m; ++i) {
        A2.block(i, 0, 1, n) = rep->A.row(i);
        A2(i, n) = norm_eval(dual_norm(p), Vec(rep->A.row(i).transpose()));
        b2(i) = rep->b(i);
      }
      A2(m, n) = -1.0;
      b2(m) = 0.0;
      c2(n) = 1.0;
      LpResult lp = lp_max(A2, b2, c2);
      if (lp.status == LpStatus::Infeasible)
        throw PreconditionError("inner_center: empty polytope");
      if (lp.status == LpStatus::Unbounded) {
        LpResult feas = lp_max(rep->A, rep->b, Vec::Zero(n));
        if (feas.status != LpStatus::Optimal)
          throw SearchError("inner_center: no feasible point");
        return hill_climb_center(b, p, feas.x, rng);
      }
      Vec c = lp.x.head(n);
      return {c, interior_radius_at(b, c, p)};
    }
    case ConvexBody::Kind::QuadLin: {
      auto* rep = b.as_quad_lin();
      int n = (int)rep->q.size();
      bool pos = true;
      for (int i = 0; i < n; ++i) pos = pos && rep->q(i) > 0;
      if (pos) {
        Vec c(n);
        for (int i = 0; i < n; ++i) c(i) = -rep->a(i) / (2.0 * rep->q(i));
        return {c, interior_radius_at(b, c, p)};
      }
      return hill_climb_center(b, p, Vec::Zero(n), rng);
    }
    case ConvexBody::Kind::Translate: {
      auto* rep = b.as_translate();
      CenterResult r = inner_center(rep->inner, p, rng);
      return {Vec(r.center + rep->t), r.radius};
    }
    case ConvexBody::Kind::Scale: {
      auto* rep = b.as_scale();
      CenterResult r = inner_center(rep->inner, p, rng);
      return {Vec(rep->lambda * r.center), rep->lambda * r.radius};
    }
    case ConvexBody::Kind::Intersection: {
      int n = b.dim();
      Vec start = Vec::Zero(n);
      double best = interior_radius_at(b, start, p);
      for (auto& m : b.as_intersection()->members) {
        try {
          CenterResult c = inner_center(m, p, rng);
          double r = interior_radius_at(b, c.center, p);
          if (r > best) {
            best = r;
            start = c.center;
          }
        } catch (const Error&) {
          // unbounded or degenerate member, other candidates remain
        }
      }
      auto bb = bounding_box(b);
      Vec mid(n);
      bool finite = true;
      for (int i = 0; i < n; ++i) {
        if (!std::isfinite(bb[i].lo) || !std::isfinite(bb[i].hi)) {
          finite = false;
          break;
        }
        mid(i) = 0.5 * (bb[i].lo + bb[i].hi);
      }
      if (finite) {
        double r = interior_radius_at(b, mid, p);
        if (r > best) {
          best = r;
          start = mid;
        }
      }
      return hill_climb_center(b, p, start, rng);
    }
  }
  throw Error("unreachable");
}

Vec boundary_point(const ConvexBody& b, const Vec& u) {
  double g = gauge(b, u);
  if (g <= 0) throw PreconditionError("boundary_point: direction in recession cone");
  return u / g;
}

Vec sample_in_body_gauge(const ConvexBody& b, Rng& rng) {
  int n = b.dim();
  for (int tries = 0; tries < 64; ++tries) {
    Vec u = random_unit_vector(AmbientNorm::L2, n, rng);
    double g = gauge(b, u);
    if (g <= 1e-14) continue;
    double t = std::pow(rng.uniform(), 1.0 / n);
    return (t / g) * u;
  }
  throw SearchError("sample_in_body_gauge: body looks unbounded");
}

}  // namespace cclab
