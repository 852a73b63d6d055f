#pragma once
#include <memory>
#include <variant>
#include <vector>

#include "cclab/common.hpp"
#include "cclab/rng.hpp"
#include "cclab/spaces.hpp"

namespace cclab {

class ConvexBody;

struct BallRep {
  AmbientNorm norm;
  Vec center;
  double radius;
};

// {x : A x <= b}; rows are rescaled to unit Euclidean norm at construction so row
// slack reads as Euclidean distance.
struct PolytopeRep {
  Mat A;
  Vec b;
};

// {x : sum_i q_i x_i^2 + a.x <= r}, q >= 0 entrywise.
struct QuadLinRep {
  Vec q;
  Vec a;
  double r;
};

struct BoxRep {
  Vec lo, hi;
};

struct IntersectionRep {
  std::vector<ConvexBody> members;
};

struct TranslateRep;
struct ScaleRep;

class ConvexBody {
 public:
  static ConvexBody ball(AmbientNorm norm, Vec center, double radius);
  static ConvexBody polytope(Mat A, Vec b);
  static ConvexBody quad_lin(Vec q, Vec a, double r);
  static ConvexBody box(Vec lo, Vec hi);
  static ConvexBody intersection(std::vector<ConvexBody> members);
  static ConvexBody translate(ConvexBody inner, Vec t);
  static ConvexBody scale(ConvexBody inner, double lambda);

  enum class Kind { Ball, Polytope, QuadLin, Box, Intersection, Translate, Scale };
  Kind kind() const;
  int dim() const;

  const BallRep* as_ball() const;
  const PolytopeRep* as_polytope() const;
  const QuadLinRep* as_quad_lin() const;
  const BoxRep* as_box() const;
  const IntersectionRep* as_intersection() const;
  const TranslateRep* as_translate() const;
  const ScaleRep* as_scale() const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
  explicit ConvexBody(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
};

struct TranslateRep {
  ConvexBody inner;
  Vec t;
};

struct ScaleRep {
  ConvexBody inner;
  double lambda;
};

struct ConvexBody::Node {
  std::variant<BallRep, PolytopeRep, QuadLinRep, BoxRep, IntersectionRep, TranslateRep,
               ScaleRep>
      v;
};

// Signed constraint excess: <= 0 inside, > 0 outside. Recursion is exact for
// Intersection/Translate/Scale; contains(b,x,tol) is violation(b,x) <= tol.
double violation(const ConvexBody& b, const Vec& x);
bool contains(const ConvexBody& b, const Vec& x, double tol);

// Minkowski gauge inf{t > 0 : x/t in body}. Requires 0 in the interior. Closed
// forms everywhere except Translate, which bisects to relative 1e-10.
double gauge(const ConvexBody& b, const Vec& x);

struct SupportResult {
  double value = 0.0;
  bool approximate = false;  // true when an Intersection ascent was involved
};
SupportResult support(const ConvexBody& b, const Vec& d);

// Largest rho with x + rho * (unit ball of p) inside the body; 0 if x outside.
double interior_radius_at(const ConvexBody& b, const Vec& x,
                          AmbientNorm p = AmbientNorm::L2);

struct DistResult {
  double value = 0.0;
  bool exact = false;  // when false, value is still a guaranteed upper bound
};
DistResult dist_to_body(const ConvexBody& b, const Vec& x,
                        AmbientNorm p = AmbientNorm::L2);

// Per-coordinate extent; +-inf entries mean unbounded in that coordinate.
struct Interval {
  double lo, hi;
};
std::vector<Interval> bounding_box(const ConvexBody& b);

// A point with a large interior radius (Chebyshev center for Polytope via LP,
// closed-form centers otherwise, hill climbing as fallback). Deterministic.
struct CenterResult {
  Vec center;
  double radius;  // interior_radius_at(body, center, p)
};
CenterResult inner_center(const ConvexBody& b, AmbientNorm p, Rng& rng);

// Boundary point in direction u: u / gauge(u).
Vec boundary_point(const ConvexBody& b, const Vec& u);

// Random point of the body, gauge-radial law (coverage sampling, not uniform).
Vec sample_in_body_gauge(const ConvexBody& b, Rng& rng);

// max c.w + w^T diag(d) w over ||w||_2 <= 1, d >= 0 (secular equation solve).
double max_quad_over_unit_ball(const Vec& c, const Vec& d);
// Same with a symmetric PSD matrix Q (eigendecomposition then the diagonal case).
double max_quad_form_over_unit_ball(const Vec& c, const Mat& Q);

}  // namespace cclab
