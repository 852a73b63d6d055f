#pragma once
#include <functional>
#include <vector>

#include "cclab/bodies.hpp"
#include "cclab/common.hpp"
#include "cclab/rng.hpp"
#include "cclab/spaces.hpp"

namespace cclab {

struct LipschitzFn {
  std::function<double(const Vec&)> evaluator;
  double tau = 1.0;  // declared constant, Euclidean metric
};

// Samples `pairs` random unit-vector pairs; the quotient |f(x)-f(y)|/|x-y|
// must stay within tau * (1 + 1e-6).
bool validate_lipschitz(const LipschitzFn& f, int N, Rng& rng, long pairs = 10000);

struct FlatSubspaceResult {
  Subspace subspace;
  double lambda0 = 0.0;     // midpoint of the sampled range
  double oscillation = 0.0; // sampled max - min on the unit sphere of the subspace
  long trials_used = 0;
};

struct OscillationResult {
  double min = 0.0, max = 0.0, lambda0 = 0.0;
};

// Evaluates f on m_samples uniform unit vectors of F plus the signed basis.
OscillationResult oscillation_on_subspace(const LipschitzFn& f, const Subspace& F,
                                          int m_samples, Rng& rng);

struct FlatSearchReport {
  FlatSubspaceResult best;  // first flat subspace, else the flattest seen
  bool success = false;
  long successes = 0;
  long trials_run = 0;
};

// Draws random n-subspaces until the sampled oscillation is at most 2*eps or
// the trial budget runs out; exhaustion is a valid outcome carrying the best
// seen. Validates the declared Lipschitz constant up front.
FlatSearchReport find_flat_subspace(const LipschitzFn& f, int N, int n, double eps,
                                    int trials, Rng& rng);

// Runs every trial (no early stop) and counts flat draws: the datum the
// experiments tabulate.
struct FlatRateRow {
  int N = 0, n = 0;
  double epsilon = 0.0;
  long trials = 0, successes = 0;
  double best_oscillation = 0.0;
  uint64_t seed = 0;
};
FlatRateRow flat_success_rate(const LipschitzFn& f, int N, int n, double eps, int trials,
                              uint64_t seed);

struct FlatPick {
  int index = 0;  // 1-based piece index
  Subspace subspace;
};

// Two bodies covering the unit sphere: searches for a subspace on which the
// distance to the first body is nearly constant, then picks the body by the
// level of that constant. The returned subspace is re-verified on fresh
// sphere samples of F at tolerance eps + 1e-6.
FlatPick two_set_flat(const ConvexBody& A1, const ConvexBody& A2, int n, double eps,
                      int trials, Rng& rng);

// Head-versus-rest recursion of two_set_flat inside the subspace found at each
// stage, tightening eps by half per stage; intermediate dimensions interpolate
// geometrically between N and n.
FlatPick multi_set_flat(const std::vector<ConvexBody>& pieces, int n, double eps, Rng& rng);

struct SectionReport {
  double best_ratio = 0.0;  // (max p-norm) / (min p-norm) on the section sphere
  Subspace subspace;
  int trials_run = 0;
};

// Random n-subspaces scored by the spread of the p-norm over their Euclidean
// sphere; smaller is closer to a round section.
SectionReport euclidean_section_quality(AmbientNorm p, int N, int n, int trials, Rng& rng);

// Composition: find a near-round section (ratio at most 1 + eps/3), then run
// the flat recursion on its Euclidean sphere against p-norm distances, and
// verify the winning piece on fresh samples of the p-norm sphere of F.
FlatPick sphere_cover_ball_experiment(AmbientNorm p, const std::vector<ConvexBody>& pieces,
                                      int n, double eps, Rng& rng);

}  // namespace cclab
