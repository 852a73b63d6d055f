#include "cclab/spaces.hpp"

#include <cmath>

namespace cclab {

const char* norm_name(AmbientNorm p) {
  switch (p) {
    case AmbientNorm::L1: return "l1";
    case AmbientNorm::L2: return "l2";
    case AmbientNorm::Linf: return "linf";
  }
  return "?";
}

AmbientNorm dual_norm(AmbientNorm p) {
  switch (p) {
    case AmbientNorm::L1: return AmbientNorm::Linf;
    case AmbientNorm::Linf: return AmbientNorm::L1;
    default: return AmbientNorm::L2;
  }
}

double norm_eval(AmbientNorm p, const Vec& x) {
  if (x.size() == 0) throw PreconditionError("norm_eval: empty vector");
  switch (p) {
    case AmbientNorm::L1: return x.lpNorm<1>();
    case AmbientNorm::L2: return x.norm();
    case AmbientNorm::Linf: return x.lpNorm<Eigen::Infinity>();
  }
  return 0.0;
}

Subspace::Subspace(Mat b) : basis(std::move(b)) {
  if (basis.cols() < 1 || basis.rows() < basis.cols())
    throw PreconditionError("Subspace: need 1 <= dim <= ambient dim");
  Mat g = basis.transpose() * basis;
  double err = (g - Mat::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
  if (err > 1e-10) throw PreconditionError("Subspace: basis not orthonormal");
}

Vec random_unit_vector(AmbientNorm p, int n, Rng& rng) {
  if (n < 1) throw PreconditionError("random_unit_vector: n >= 1 required");
  while (true) {
    Vec g(n);
    for (int i = 0; i < n; ++i) g[i] = rng.gaussian();
    double s = norm_eval(p, g);
    if (s > 1e-12) return g / s;
  }
}

Subspace random_subspace(int N, int n, Rng& rng) {
  if (n < 1 || n > N) throw PreconditionError("random_subspace: need 1 <= n <= N");
  while (true) {
    Mat g(N, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < N; ++i) g(i, j) = rng.gaussian();
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(N, n);
    Mat r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    bool ok = true;
    for (int j = 0; j < n; ++j) {
      if (std::abs(r(j, j)) < 1e-9) { ok = false; break; }
      if (r(j, j) < 0) q.col(j) = -q.col(j);  // fix sign so the law is Haar
    }
    if (ok) return Subspace(q);
  }
}

Subspace extend_subspace(const Subspace& F, int extra, Rng& rng) {
  int N = F.ambient_dim();
  if (F.dim() + extra > N) throw PreconditionError("extend_subspace: dim overflow");
  Mat b(N, F.dim() + extra);
  b.leftCols(F.dim()) = F.basis;
  int have = F.dim();
  while (have < F.dim() + extra) {
    Vec g(N);
    for (int i = 0; i < N; ++i) g[i] = rng.gaussian();
    g -= b.leftCols(have) * (b.leftCols(have).transpose() * g);
    double s = g.norm();
    if (s < 1e-9) continue;
    b.col(have) = g / s;
    ++have;
  }
  return Subspace(b);
}

Vec project(const Subspace& F, const Vec& x) {
  if (x.size() != F.ambient_dim()) throw PreconditionError("project: dim mismatch");
  return F.basis * (F.basis.transpose() * x);
}

Vec sample_in_ball(AmbientNorm p, int n, Rng& rng) {
  switch (p) {
    case AmbientNorm::L2: {
      Vec u = random_unit_vector(AmbientNorm::L2, n, rng);
      double r = std::pow(rng.uniform(), 1.0 / n);
      return r * u;
    }
    case AmbientNorm::Linf: {
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = rng.uniform(-1.0, 1.0);
      return x;
    }
    case AmbientNorm::L1: {
      // (|x_1|,...,|x_n|, slack) ~ Dirichlet(1,...,1) via iid exponentials
      Vec e(n + 1);
      for (int i = 0; i <= n; ++i) {
        double u = 0.0;
        while (u == 0.0) u = rng.uniform();
        e[i] = -std::log(u);
      }
      double s = e.sum();
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = (rng.uniform() < 0.5 ? -1.0 : 1.0) * e[i] / s;
      return x;
    }
  }
  throw Error("sample_in_ball: unreachable");
}

std::vector<Vec> sphere_mesh(int N, int resolution) {
  if (N != 2 && N != 3)
    throw PreconditionError(
        "sphere_mesh: only N in {2,3} supported; use random sampling for higher N");
  if (resolution < 4) throw PreconditionError("sphere_mesh: resolution >= 4 required");
  std::vector<Vec> out;
  if (N == 2) {
    int m = resolution + (resolution % 2);  // even count keeps antipodal closure
    out.reserve(m);
    for (int k = 0; k < m; ++k) {
      double th = 2.0 * M_PI * k / m;
      Vec v(2);
      v << std::cos(th), std::sin(th);
      out.push_back(v);
    }
  } else {
    int f = resolution;
    out.reserve(4 * f * f + 2);
    for (int i = -f; i <= f; ++i) {
      int jmax = f - std::abs(i);
      for (int j = -jmax; j <= jmax; ++j) {
        int kk = f - std::abs(i) - std::abs(j);
        Vec v(3);
        v << double(i), double(j), double(kk);
        v.normalize();
        out.push_back(v);
        if (kk > 0) {
          v[2] = -v[2];
          out.push_back(v);
        }
      }
    }
  }
  return out;
}

}  // namespace cclab
