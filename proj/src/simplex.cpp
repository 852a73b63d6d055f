#include "cclab/simplex.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace cclab {
namespace {

// Classic dense tableau simplex (KACTL layout). Deterministic pivots:
// ties broken by variable index, which doubles as an anti-cycling rule.
struct Tableau {
  static constexpr double EPS = 1e-9;
  int m, n;
  std::vector<int> N, B;
  std::vector<std::vector<double>> D;

  Tableau(const Mat& A, const Vec& b, const Vec& c)
      : m(static_cast<int>(b.size())),
        n(static_cast<int>(c.size())),
        N(n + 1),
        B(m),
        D(m + 2, std::vector<double>(n + 2)) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) D[i][j] = A(i, j);
    for (int i = 0; i < m; ++i) {
      B[i] = n + i;
      D[i][n] = -1;
      D[i][n + 1] = b[i];
    }
    for (int j = 0; j < n; ++j) {
      N[j] = j;
      D[m][j] = -c[j];
    }
    N[n] = -1;
    D[m + 1][n] = 1;
  }

  void pivot(int r, int s) {
    double* a = D[r].data();
    double inv = 1 / a[s];
    for (int i = 0; i < m + 2; ++i)
      if (i != r && std::abs(D[i][s]) > EPS) {
        double* bb = D[i].data();
        double inv2 = bb[s] * inv;
        for (int j = 0; j < n + 2; ++j) bb[j] -= a[j] * inv2;
        bb[s] = a[s] * inv2;
      }
    for (int j = 0; j < n + 2; ++j)
      if (j != s) D[r][j] *= inv;
    for (int i = 0; i < m + 2; ++i)
      if (i != r) D[i][s] *= -inv;
    D[r][s] = inv;
    std::swap(B[r], N[s]);
  }

  bool simplex(int phase) {
    int x = m + phase - 1;
    for (;;) {
      int s = -1;
      for (int j = 0; j <= n; ++j) {
        if (N[j] == -phase) continue;
        if (s == -1 || std::make_pair(D[x][j], N[j]) < std::make_pair(D[x][s], N[s])) s = j;
      }
      if (D[x][s] >= -EPS) return true;
      int r = -1;
      for (int i = 0; i < m; ++i) {
        if (D[i][s] <= EPS) continue;
        if (r == -1 || std::make_pair(D[i][n + 1] / D[i][s], B[i]) <
                           std::make_pair(D[r][n + 1] / D[r][s], B[r]))
          r = i;
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  // returns objective; +inf if unbounded, -inf if infeasible
  double solve(Vec& x) {
    int r = 0;
    for (int i = 1; i < m; ++i)
      if (D[i][n + 1] < D[r][n + 1]) r = i;
    if (D[r][n + 1] < -EPS) {
      pivot(r, n);
      if (!simplex(2) || D[m + 1][n + 1] < -EPS)
        return -std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i)
        if (B[i] == -1) {
          int s = 0;
          for (int j = 1; j <= n; ++j)
            if (std::make_pair(D[i][j], N[j]) < std::make_pair(D[i][s], N[s])) s = j;
          pivot(i, s);
        }
    }
    bool ok = simplex(1);
    x = Vec::Zero(n);
    for (int i = 0; i < m; ++i)
      if (B[i] < n) x[B[i]] = D[i][n + 1];
    return ok ? D[m][n + 1] : std::numeric_limits<double>::infinity();
  }
};

}  // namespace

LpResult simplex_max(const Mat& A, const Vec& b, const Vec& c) {
  if (A.rows() != b.size() || A.cols() != c.size())
    throw PreconditionError("simplex_max: dimension mismatch");
  Tableau t(A, b, c);
  LpResult res;
  double v = t.solve(res.x);
  if (std::isinf(v))
    res.status = v > 0 ? LpStatus::Unbounded : LpStatus::Infeasible;
  else {
    res.status = LpStatus::Optimal;
    res.value = v;
  }
  return res;
}

LpResult lp_max(const Mat& A, const Vec& b, const Vec& c) {
  // free variables: x = u - v with u, v >= 0
  int n = static_cast<int>(c.size());
  Mat A2(A.rows(), 2 * n);
  A2.leftCols(n) = A;
  A2.rightCols(n) = -A;
  Vec c2(2 * n);
  c2.head(n) = c;
  c2.tail(n) = -c;
  LpResult r = simplex_max(A2, b, c2);
  if (r.status == LpStatus::Optimal) {
    Vec x = r.x.head(n) - r.x.tail(n);
    r.x = x;
  }
  return r;
}

}  // namespace cclab
