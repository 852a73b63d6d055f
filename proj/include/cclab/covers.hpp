#pragma once
#include <optional>
#include <string>
#include <vector>

#include "cclab/bodies.hpp"
#include "cclab/common.hpp"
#include "cclab/rng.hpp"

namespace cclab {

struct HilbertCoverSpec {
  int k = 1;  // number of pieces is 2k
  int N = 3;  // coordinates indexed 0..N-1
};

struct Cover {
  ConvexBody ambient;
  std::vector<ConvexBody> pieces;
  std::optional<HilbertCoverSpec> hilbert;  // set when built by build_hilbert_cover
};

struct CoverReport {
  long total_samples = 0;
  std::vector<Vec> uncovered;
  double max_violation = 0.0;  // max over samples of min-piece violation
  std::string certificate;     // "algebraic" when the slack identity was checked
};

// Pieces A_j, j=1..2k: unit L2 ball intersected with
// { k * sum_{i >= 1, i = j mod 2k} x_i^2 + (-1)^j x_0 <= 1/2 }.
// Any N >= 2 is accepted; residue classes missing from {1..N-1} give a purely
// linear piece and the covering identity still holds.
Cover build_hilbert_cover(const HilbertCoverSpec& spec);

// Uniform sample from the ambient set: direct for p-balls (and affine images),
// rejection from the bounding box otherwise.
Vec sample_in_ambient(const ConvexBody& ambient, Rng& rng);

CoverReport verify_cover(const Cover& c, long n_samples, Rng& rng, double tol);

// Keeps pieces whose best found inscribed-ball radius exceeds tol, then
// re-verifies coverage; failure exposes a witness point in the error message.
Cover filter_interior(const Cover& c, double tol, Rng& rng, long recheck_samples = 10000);

struct ExpansionResult {
  double delta;        // body + delta * ball(p)  inside  (1+eps) * body
  double delta_prime;  // (1+delta') * body  inside  body + eps * ball(p)
};
ExpansionResult expansion_delta(const ConvexBody& body, double eps, AmbientNorm p, Rng& rng);

struct DiameterResult {
  int piece = -1;
  Vec x;  // unit vector with x and -x in the same piece (tol 1e-6)
};
DiameterResult find_diameter(const Cover& c, int resolution, Rng& rng, long budget = 20000);

struct CubeCylinderResult {
  int piece = -1;
  std::vector<int> prefix;  // entries in {-1, +1}
  bool found = false;
};
// Ambient must be the cube [-1,1]^N. Breadth-first over prefixes, -1 before +1;
// a hit means one piece holds every completion vertex of the prefix.
CubeCylinderResult find_cube_cylinder(const Cover& c, double tol = 1e-9);

// sqrt( (1/2k)(1 - 1/k) + (1/2k) sqrt((1 - 1/k)^2 + 3) ), decreasing to 0.
double rk_bound(int k);

}  // namespace cclab
