#pragma once
#include <optional>
#include <vector>

#include "cclab/bodies.hpp"
#include "cclab/common.hpp"
#include "cclab/covers.hpp"
#include "cclab/rng.hpp"
#include "cclab/spaces.hpp"

namespace cclab {

struct FixedRadiusResult {
  double radius = 0.0;
  bool certified = false;    // exact recursion vs sampled directional certificate
  bool center_inside = true;
};

// Largest lambda with x + lambda * (ball(p) restricted to F) inside the body.
// Under the Euclidean ambient norm every representation admits an exact
// recursion (closed forms, or a bisection on a one-dimensional secular
// problem for quadratic constraints); other ambient norms fall back to a
// sampled certificate over 2*dim(F)*dirs_per_dim directions plus the basis.
FixedRadiusResult inscribed_radius_fixed(const ConvexBody& body, const Subspace& F,
                                         const Vec& x, AmbientNorm p = AmbientNorm::L2,
                                         int dirs_per_dim = 64);

struct InscribedBall {
  Vec center;
  Subspace subspace;
  double radius = 0.0;
  bool certified = false;
};

struct SearchOpts {
  int restarts = 16;
  int steps = 200;
  AmbientNorm p = AmbientNorm::L2;
  uint64_t seed = 1;
  int eval_dirs = 8;  // per-dimension directions for sampled evals inside the search
  std::optional<InscribedBall> warm;
};

// Alternating maximization over centers and subspaces; a heuristic lower-bound
// witness finder. The returned witness is re-verified on fresh directions.
InscribedBall max_inscribed_ball(const ConvexBody& body, int n, const SearchOpts& opts);

bool verify_inscribed_ball(const ConvexBody& body, const InscribedBall& ball, AmbientNorm p,
                           Rng& rng, int m = 1000, double shrink = 0.999, double tol = 1e-6);

struct RhoCurve {
  struct Entry {
    int n;
    double radius;
    InscribedBall witness;
  };
  std::vector<Entry> entries;
};

// Curve of best found radii over increasing n; warm-starts each level from the
// previous witness and finishes with a head-restriction sweep that makes the
// curve non-increasing by construction.
RhoCurve rho_hat(const ConvexBody& body, const std::vector<int>& n_list,
                 const SearchOpts& opts);

struct RhoRulesReport {
  bool subset_ok = false;       // witness in A stays valid in B (warm start)
  bool monotone_ok = false;     // curve_b >= curve_a entrywise
  bool homogeneity_ok = false;  // doubling the body doubles the curve, same seed
  bool cover_rule_ok = false;   // curve_a <= max over pieces + 2e-3 (flagged)
  double cover_gap = 0.0;
  RhoCurve curve_a, curve_b;
  std::vector<RhoCurve> piece_curves;
};
RhoRulesReport check_rho_rules(const ConvexBody& A, const ConvexBody& B,
                               const std::vector<ConvexBody>& pieces,
                               const std::vector<int>& n_list, const SearchOpts& opts);

struct Ell1Report {
  bool split_ok = false;
  long split_samples = 0;
  RhoCurve curve;  // on the positive part, ambient L1
};
// Every x in the L1 ball splits as a difference of two points of the positive
// part; the positive part itself only carries low-radius balls.
Ell1Report ell1_example_check(int N, uint64_t seed = 1);

}  // namespace cclab
