#pragma once
#include <vector>

#include "cclab/common.hpp"
#include "cclab/rng.hpp"

namespace cclab {

enum class AmbientNorm { L1, L2, Linf };

const char* norm_name(AmbientNorm p);
AmbientNorm dual_norm(AmbientNorm p);

double norm_eval(AmbientNorm p, const Vec& x);

// Subspace of R^N with an orthonormal basis (columns). B^T B = I within 1e-10.
struct Subspace {
  Mat basis;  // N x n

  Subspace() = default;
  explicit Subspace(Mat b);

  int ambient_dim() const { return static_cast<int>(basis.rows()); }
  int dim() const { return static_cast<int>(basis.cols()); }

  // first k basis columns; used when a witness is restricted to fewer dimensions
  Subspace head(int k) const { return Subspace(basis.leftCols(k)); }
};

// Gaussian vector rescaled to the requested unit sphere.
Vec random_unit_vector(AmbientNorm p, int n, Rng& rng);

// Haar-distributed n-dim subspace of R^N: Gaussian matrix, then orthonormalization.
Subspace random_subspace(int N, int n, Rng& rng);

// Extend F by `extra` random directions orthogonal to it (keeps existing columns).
Subspace extend_subspace(const Subspace& F, int extra, Rng& rng);

// Orthogonal projection onto F: B (B^T x). Idempotent, linear, L2 contraction.
Vec project(const Subspace& F, const Vec& x);

// Uniform point in the unit ball of the given norm (center 0, radius 1).
Vec sample_in_ball(AmbientNorm p, int n, Rng& rng);

// Deterministic antipodally-closed mesh of the Euclidean unit sphere, N in {2,3}.
// N=2: `resolution` equally spaced directions (rounded up to even).
// N=3: octahedral grid {|i|+|j|+|k| = f} normalized, f = resolution.
// Covering radius is <= pi/resolution (N=2, arc) and <= 2.5/resolution (N=3, chord).
std::vector<Vec> sphere_mesh(int N, int resolution);

}  // namespace cclab
