#pragma once
#include <vector>

#include "cclab/bodies.hpp"
#include "cclab/common.hpp"
#include "cclab/rng.hpp"
#include "cclab/spaces.hpp"

namespace cclab {

// vector . touch_point = 1 and vector . y <= gauge(y) for all y (touch_point is
// snapped onto the boundary first so the normalization is exact in fp).
struct SupportingFunctional {
  Vec vector;
  Vec touch_point;
};

// x must satisfy gauge(A,x) = 1 within 1e-6; 0 interior. Ties (vertices, several
// active members) resolve to the first active constraint, so the result is
// deterministic. Throws Error when no constraint is active at x.
SupportingFunctional supporting_functional(const ConvexBody& A, const Vec& x);

// Points of F cap boundary(A) such that every boundary point x of the section has
// a net point y with gauge(A, y - x) < delta_prime. Mesh images x -> x/gauge(x),
// resolution doubled until a 3x finer probe mesh confirms the density. dim F <= 3.
std::vector<Vec> boundary_net(const ConvexBody& A, const Subspace& F,
                              double delta_prime);

// P projects onto F along Y = intersection of the functional kernels; whatever
// R^N is left over (the section can touch more constraints than dim F) is sent
// to zero as well. On Z = F + Y: gauge(P z) <= (1 + delta) gauge(z).
struct ProjectionSystem {
  Subspace F;
  Subspace Y;
  std::vector<SupportingFunctional> functionals;
  Mat P;                     // N x N, P*P = P
  double delta = 0.0;        // slack the sampled gauge inequality was checked at
  double delta_prime = 0.0;  // net density that produced the functionals
};

// Net density delta/(1+delta). If F meets the kernel or the sampled inequality
// (1e4 draws from F + Y, slack 1e-6) fails, the net is rebuilt at half density,
// up to 3 retries. Body must be bounded with 0 interior.
ProjectionSystem build_projection(const ConvexBody& A, const Subspace& F,
                                  double delta, Rng& rng);

struct TranslateCoverSpec {
  ConvexBody A;
  std::vector<Vec> O;  // translate offsets; span(O) at most 3-dimensional
  double eps = 0.0;
};

// Certified output: 1e4 fresh samples y of the unit ball of Y satisfy
// min over h in H of dist(A - h, y) <= eps + 1e-6. H lies in A and is an
// (eps/3)-net of the section span(O) cap A (greedy farthest point on a radial
// mesh); Y is the kernel of the section's supporting functionals. On a failed
// verification the expansion and net step are halved once before giving up.
struct TranslateResult {
  Subspace Y;
  std::vector<Vec> H;
  ProjectionSystem proj;     // left empty when span(O) = {0}
  double cover_slack = 0.0;  // sup over samples of min-translate distance to A
  double max_dist = 0.0;     // worst verified sample distance
  long samples = 0;
  bool refined = false;
  Vec shift;  // internal recentering of A; outputs are in the original frame
};
TranslateResult translate_theorem(const TranslateCoverSpec& spec, Rng& rng);

// For balanced A, translating by points of A keeps A - H inside 2A, so the
// covered subspace ball survives shrinking below radius 1/2. Validates the
// requested lambda on 1e4 fresh samples of the unit ball of Y, then scans a
// descending grid for the largest passing value (containment is monotone in
// lambda for balanced convex bodies).
struct HalfRadiusReport {
  bool requested_ok = false;
  double lambda_requested = 0.0;
  double lambda_largest = 0.0;
  double eps_used = 0.0;
  double r0 = 0.0;  // interior radius at 0, sets the eps budget
  TranslateResult tr;
};
HalfRadiusReport half_radius_check(const ConvexBody& A, const std::vector<Vec>& O,
                                   double lambda, Rng& rng);

// L2 ambient, A inside the unit ball (sampled), K a box with decaying extents.
// delta = eps^2/8: a chord of the unit ball whose midpoint stays outside
// (1-delta)B has length at most sqrt(8 delta) = eps. The cut is the smallest
// head size whose trailing extent norm (cut coordinate included) drops below
// delta; Y spans the coordinates past the cut.
struct HilbertCodimReport {
  double delta = 0.0;
  int cut = 0;  // 1-based head size
  Subspace Y;
  double max_dist = 0.0;
  long samples = 0;
};
HilbertCodimReport hilbert_codim(const ConvexBody& A, const ConvexBody& K,
                                 double eps, Rng& rng);

// Ellipsoid with 1-based axis n of half-length 1 - 2^-n: swells toward the unit
// ball but contains no unit sphere of any trailing-coordinate subspace.
ConvexBody near_ball_ellipsoid(int N);
// Box with extents 2^-n. Clamping any unit vector into the box leaves a
// remainder inside the ellipsoid, so ball = ellipsoid + box exactly.
ConvexBody dyadic_box(int N);

struct CounterexampleReport {
  long split_samples = 0;
  bool split_ok = true;
  double split_max = 0.0;  // worst quadratic value of a clamped remainder
  Vec split_witness;
  struct AxisRow {
    int n;  // 1-based coordinate
    double dist;
    double expected;  // 2^-n
  };
  std::vector<AxisRow> axis;
  struct EpsRow {
    double eps;
    int m;             // head size: trailing sphere past m sits within eps
    double tail_dist;  // 2^-(m+1), the worst trailing axis gap
    bool outside;      // the first trailing axis still leaves the ellipsoid
    bool verified;
  };
  std::vector<EpsRow> eps_rows;
};
// (i) the exact clamp split on uniform ball samples, (ii) trailing axis
// distances: every trailing-coordinate sphere leaves the ellipsoid, yet for any
// eps some head size m brings it within eps.
CounterexampleReport counterexample_check(int N, const std::vector<double>& eps_list,
                                          Rng& rng);

struct HexagonReport {
  long samples = 0;
  long mesh_points = 0;
  bool ok = false;
  double max_needed = 0.0;  // worst min-over-vertex violation seen
  Vec witness;              // uncovered point, set when !ok
};
// Regular hexagon of circumradius 1/sqrt(3): translates by its own vertex set
// cover the unit disk. 1e5 interior samples plus the 512-gon boundary mesh,
// membership tolerance 1e-9. Fixed internal sampling stream.
HexagonReport hexagon_check();

}  // namespace cclab
