#pragma once
#include "cclab/common.hpp"

namespace cclab {

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Vec x;
};

// max c^T x subject to A x <= b, x >= 0. Small dense two-phase simplex.
LpResult simplex_max(const Mat& A, const Vec& b, const Vec& c);

// max c^T x subject to A x <= b, x free (variables split internally).
LpResult lp_max(const Mat& A, const Vec& b, const Vec& c);

}  // namespace cclab
