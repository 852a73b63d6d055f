#include "cclab/covers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace cclab {

namespace {

std::string format_point(const Vec& x) {
  std::string s = "(";
  char buf[40];
  for (int i = 0; i < x.size() && i < 8; ++i) {
    std::snprintf(buf, sizeof buf, "%s%.6g", i ? ", " : "", x(i));
    s += buf;
  }
  if (x.size() > 8) s += ", ...";
  return s + ")";
}

}  // namespace

Cover build_hilbert_cover(const HilbertCoverSpec& spec) {
  if (spec.k < 1) throw PreconditionError("hilbert cover: k must be positive");
  if (spec.N < 2) throw PreconditionError("hilbert cover: need at least two coordinates");
  int N = spec.N, k = spec.k;
  ConvexBody ball = ConvexBody::ball(AmbientNorm::L2, Vec::Zero(N), 1.0);
  std::vector<ConvexBody> pieces;
  for (int j = 1; j <= 2 * k; ++j) {
    Vec q = Vec::Zero(N), a = Vec::Zero(N);
    for (int i = 1; i < N; ++i)
      if (i % (2 * k) == j % (2 * k)) q(i) = k;
    a(0) = (j % 2 == 0) ? 1.0 : -1.0;
    pieces.push_back(
        ConvexBody::intersection({ball, ConvexBody::quad_lin(q, a, 0.5)}));
  }
  return {ball, std::move(pieces), spec};
}

namespace {

// direct uniform sampler for p-balls and their translate/scale images; empty
// result means the caller should fall back to rejection
bool direct_ball_sample(const ConvexBody& b, Rng& rng, Vec& out) {
  switch (b.kind()) {
    case ConvexBody::Kind::Ball: {
      auto* rep = b.as_ball();
      out = rep->center + rep->radius * sample_in_ball(rep->norm, (int)rep->center.size(), rng);
      return true;
    }
    case ConvexBody::Kind::Translate: {
      auto* rep = b.as_translate();
      if (!direct_ball_sample(rep->inner, rng, out)) return false;
      out += rep->t;
      return true;
    }
    case ConvexBody::Kind::Scale: {
      auto* rep = b.as_scale();
      if (!direct_ball_sample(rep->inner, rng, out)) return false;
      out *= rep->lambda;
      return true;
    }
    default:
      return false;
  }
}

}  // namespace

Vec sample_in_ambient(const ConvexBody& ambient, Rng& rng) {
  Vec x;
  if (direct_ball_sample(ambient, rng, x)) return x;
  auto bb = bounding_box(ambient);
  int n = (int)bb.size();
  for (auto& iv : bb)
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi)
      throw SearchError("sample_in_ambient: unbounded or empty ambient");
  Vec p(n);
  for (int tries = 0; tries < 200000; ++tries) {
    for (int i = 0; i < n; ++i) p(i) = rng.uniform(bb[i].lo, bb[i].hi);
    if (violation(ambient, p) <= 0.0) return p;
  }
  throw SearchError("sample_in_ambient: rejection sampling stalled");
}

CoverReport verify_cover(const Cover& c, long n_samples, Rng& rng, double tol) {
  if (n_samples < 1) throw PreconditionError("verify_cover: need at least one sample");
  CoverReport rep;
  rep.total_samples = n_samples;
  rep.max_violation = -std::numeric_limits<double>::infinity();
  int k = c.hilbert ? c.hilbert->k : 0;
  for (long s = 0; s < n_samples; ++s) {
    Vec x = sample_in_ambient(c.ambient, rng);
    double v = std::numeric_limits<double>::infinity();
    for (auto& piece : c.pieces) v = std::min(v, violation(piece, x));
    rep.max_violation = std::max(rep.max_violation, v);
    if (v > tol && (long)rep.uncovered.size() < 64) rep.uncovered.push_back(x);
    if (c.hilbert) {
      // slack_j = 1/2 - (-1)^j x_0 - k sum_{i = j mod 2k} x_i^2 summed over j
      // telescopes to k (1 - sum_{i>=1} x_i^2)
      double sum = 0.0, tail = 0.0;
      for (int j = 1; j <= 2 * k; ++j) {
        double quad = 0.0;
        for (int i = 1; i < x.size(); ++i)
          if (i % (2 * k) == j % (2 * k)) quad += x(i) * x(i);
        sum += 0.5 - (j % 2 == 0 ? 1.0 : -1.0) * x(0) - k * quad;
      }
      for (int i = 1; i < x.size(); ++i) tail += x(i) * x(i);
      double identity = k * (1.0 - tail);
      if (std::abs(sum - identity) > 1e-12 * std::max(1.0, (double)k))
        throw Error("verify_cover: slack identity broken at " + format_point(x));
      if (x.norm() <= 1.0 && sum < -1e-9)
        throw Error("verify_cover: negative total slack inside the ball at " +
                    format_point(x));
    }
  }
  if (c.hilbert) rep.certificate = "algebraic";
  return rep;
}

Cover filter_interior(const Cover& c, double tol, Rng& rng, long recheck_samples) {
  Cover out{c.ambient, {}, c.hilbert};
  for (auto& piece : c.pieces) {
    double radius = 0.0;
    try {
      CenterResult cr = inner_center(piece, AmbientNorm::L2, rng);
      radius = cr.radius;
    } catch (const Error&) {
      radius = 0.0;
    }
    if (radius > tol) out.pieces.push_back(piece);
  }
  if (out.pieces.size() != c.pieces.size()) out.hilbert.reset();
  if (out.pieces.empty())
    throw Error("filter_interior: no piece has interior above tol");
  CoverReport rep = verify_cover(out, recheck_samples, rng, tols().membership);
  if (!rep.uncovered.empty())
    throw Error("filter_interior: filtered family misses " +
                format_point(rep.uncovered.front()));
  return out;
}

ExpansionResult expansion_delta(const ConvexBody& body, double eps, AmbientNorm p, Rng& rng) {
  if (!(eps > 0)) throw PreconditionError("expansion_delta: eps must be positive");
  double r = interior_radius_at(body, Vec::Zero(body.dim()), p);
  if (!(r > 0)) throw PreconditionError("expansion_delta: origin not interior");
  int n = body.dim();
  double delta = eps * r;
  // boundary norm supremum for the reverse inclusion
  double R = 0.0;
  Vec ubest = Vec::Zero(n);
  auto consider = [&](const Vec& u) {
    double v = norm_eval(p, boundary_point(body, u));
    if (v > R) {
      R = v;
      ubest = u / u.norm();
    }
  };
  for (int i = 0; i < 2 * n; ++i) {
    Vec u = Vec::Zero(n);
    u(i / 2) = (i % 2 == 0) ? 1.0 : -1.0;
    consider(u);
  }
  for (int s = 0; s < 1000; ++s) consider(random_unit_vector(AmbientNorm::L2, n, rng));
  for (double step = 0.3; step > 1e-11;) {
    bool improved = false;
    for (int t = 0; t < 20; ++t) {
      Vec d(n);
      for (int i = 0; i < n; ++i) d(i) = rng.gaussian();
      Vec u2 = (ubest + step * d).normalized();
      double v = norm_eval(p, boundary_point(body, u2));
      if (v > R) {
        R = v;
        ubest = u2;
        improved = true;
        break;
      }
    }
    if (!improved) step *= 0.5;
  }
  double delta_prime = eps / R;
  for (int s = 0; s < 1000; ++s) {
    Vec a = sample_in_body_gauge(body, rng);
    Vec u = random_unit_vector(p, n, rng);
    if (gauge(body, Vec(a + delta * u)) > 1.0 + eps + 1e-9)
      throw Error("expansion_delta: forward inclusion failed on a sample");
    if (dist_to_body(body, Vec((1.0 + delta_prime) * a), p).value > eps + 1e-6)
      throw Error("expansion_delta: reverse inclusion failed on a sample");
  }
  return {delta, delta_prime};
}

namespace {

bool ambient_unit_ball(const Cover& c, AmbientNorm& p) {
  if (c.ambient.kind() != ConvexBody::Kind::Ball) return false;
  auto* rep = c.ambient.as_ball();
  if (rep->center.lpNorm<Eigen::Infinity>() != 0.0 || rep->radius != 1.0) return false;
  p = rep->norm;
  return true;
}

}  // namespace

DiameterResult find_diameter(const Cover& c, int resolution, Rng& rng, long budget) {
  AmbientNorm p;
  if (!ambient_unit_ball(c, p))
    throw PreconditionError("find_diameter: ambient must be a unit ball");
  int N = c.ambient.dim();
  if (N < 2) throw PreconditionError("find_diameter: need dimension at least 2");
  const double tol = 1e-6;
  auto gap = [&](const Vec& x, int& piece) {
    double best = std::numeric_limits<double>::infinity();
    piece = -1;
    for (size_t j = 0; j < c.pieces.size(); ++j) {
      double g = std::max(violation(c.pieces[j], x), violation(c.pieces[j], Vec(-x)));
      if (g < best) {
        best = g;
        piece = (int)j;
      }
    }
    return best;
  };
  auto p_normalize = [&](const Vec& u) { return Vec(u / norm_eval(p, u)); };
  std::vector<std::pair<double, Vec>> scan;  // (gap, point), for refinement seeds
  double step0;
  if (N <= 3) {
    step0 = 8.0 / resolution;
    for (auto& u : sphere_mesh(N, resolution)) {
      Vec x = p_normalize(u);
      int piece;
      double g = gap(x, piece);
      if (g <= tol) return {piece, x};
      scan.push_back({g, x});
    }
  } else {
    step0 = 0.3;
    for (long s = 0; s < budget; ++s) {
      Vec x = p_normalize(random_unit_vector(AmbientNorm::L2, N, rng));
      int piece;
      double g = gap(x, piece);
      if (g <= tol) return {piece, x};
      scan.push_back({g, x});
    }
  }
  // The target can be an isolated antipodal pair (three cells meeting at a
  // point), so a single greedy path is not enough: descend from several
  // angularly separated near-miss seeds.
  std::sort(scan.begin(), scan.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Vec> seeds;
  const double sep = 3.0 * step0;
  for (const auto& [g, x] : scan) {
    bool close = false;
    for (const Vec& s : seeds)
      if (std::abs(s.dot(x)) / (s.norm() * x.norm()) > std::cos(sep)) {
        close = true;
        break;
      }
    if (!close) seeds.push_back(x);
    if (seeds.size() == 8) break;
  }
  double best_gap = std::numeric_limits<double>::infinity();
  Vec best_x = scan.front().second;
  int best_piece = -1;
  for (const Vec& seed : seeds) {
    Vec x = seed;
    int piece;
    double g = gap(x, piece);
    double step = std::max(step0, 0.05);
    long evals = 0;
    // random directions rather than axes: the gap is a max of constraint
    // excesses and axis-only descent stalls on its kinks
    while (step > 1e-10 && evals < 20000) {
      bool improved = false;
      for (int t = 0; t < 60; ++t) {
        Vec dir(N);
        for (int i = 0; i < N; ++i) dir(i) = rng.gaussian();
        Vec x2 = p_normalize(Vec(x + step * dir));
        int pc;
        double g2 = gap(x2, pc);
        evals += 1;
        if (g2 < g) {
          g = g2;
          x = x2;
          piece = pc;
          improved = true;
          break;
        }
      }
      if (g <= tol) return {piece, x};
      if (!improved) step *= 0.5;
    }
    if (g < best_gap) {
      best_gap = g;
      best_x = x;
      best_piece = piece;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "find_diameter: no antipodal pair found, best gap %.3g in piece %d",
                best_gap, best_piece);
  throw SearchError(buf);
}

CubeCylinderResult find_cube_cylinder(const Cover& c, double tol) {
  int N = c.ambient.dim();
  if (N > 24) throw PreconditionError("find_cube_cylinder: dimension budget is 24");
  if (c.ambient.kind() != ConvexBody::Kind::Box)
    throw PreconditionError("find_cube_cylinder: ambient must be a box");
  auto* rep = c.ambient.as_box();
  for (int i = 0; i < N; ++i)
    if (rep->lo(i) != -1.0 || rep->hi(i) != 1.0)
      throw PreconditionError("find_cube_cylinder: ambient must be [-1,1]^N");
  // vertices of {prefix} x {-1,1}^(N-i) all inside one piece
  auto piece_holds = [&](const ConvexBody& piece, const std::vector<int>& prefix) {
    int free = N - (int)prefix.size();
    Vec x(N);
    for (size_t i = 0; i < prefix.size(); ++i) x(i) = prefix[i];
    for (long mask = 0; mask < (1L << free); ++mask) {
      for (int i = 0; i < free; ++i)
        x(prefix.size() + i) = (mask >> i & 1) ? 1.0 : -1.0;
      if (violation(piece, x) > tol) return false;
    }
    return true;
  };
  for (int len = 0; len <= N; ++len) {
    std::vector<int> prefix(len, -1);
    while (true) {
      for (size_t j = 0; j < c.pieces.size(); ++j)
        if (piece_holds(c.pieces[j], prefix)) return {(int)j, prefix, true};
      int i = len - 1;
      while (i >= 0 && prefix[i] == 1) prefix[i--] = -1;
      if (i < 0) break;
      prefix[i] = 1;
    }
  }
  return {-1, {}, false};
}

double rk_bound(int k) {
  if (k < 1) throw PreconditionError("rk_bound: k must be at least 1");
  double t = 1.0 - 1.0 / k;
  return std::sqrt((t + std::sqrt(t * t + 3.0)) / (2.0 * k));
}

}  // namespace cclab
