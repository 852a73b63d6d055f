#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "cclab/covers.hpp"

using namespace cclab;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

ConvexBody unit_ball(int n) { return ConvexBody::ball(AmbientNorm::L2, Vec::Zero(n), 1.0); }

ConvexBody halfspace_cap(int n, Vec normal, double offset) {
  Mat A(1, n);
  A.row(0) = normal.transpose();
  Vec b(1);
  b << offset;
  return ConvexBody::intersection({unit_ball(n), ConvexBody::polytope(A, b)});
}

// independent reading of the same bound: the largest lambda admitting t with
// t^2 + lambda^2 <= 1 and k lambda^2 - t <= 1/2
double rk_oracle(int k) {
  double lo = 0.0, hi = 1.0;
  auto feasible = [&](double lam) {
    double need_t = k * lam * lam - 0.5;
    return need_t <= std::sqrt(std::max(0.0, 1.0 - lam * lam));
  };
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

TEST_CASE("rk bound values and shape") {
  CHECK(rk_bound(1) == doctest::Approx(0.9306048591).epsilon(1e-9));
  CHECK(rk_bound(1) == doctest::Approx(std::pow(0.75, 0.25)).epsilon(1e-12));
  CHECK(rk_bound(2) == doctest::Approx(0.7587449568).epsilon(1e-9));
  CHECK(rk_bound(10) < rk_bound(2));
  CHECK(rk_bound(2) < rk_bound(1));
  CHECK(rk_bound(4000) < 0.02);
  CHECK_THROWS_AS(rk_bound(0), PreconditionError);
}

TEST_CASE("rk bound matches the two-dimensional feasibility oracle") {
  for (int k = 1; k <= 6; ++k)
    CHECK(rk_bound(k) == doctest::Approx(rk_oracle(k)).epsilon(1e-9));
}

TEST_CASE("hilbert cover construction") {
  Cover c = build_hilbert_cover({1, 3});
  REQUIRE(c.pieces.size() == 2);
  Vec e0 = Vec::Zero(3);
  e0(0) = 1;
  CHECK(contains(c.pieces[0], e0, 0));       // -x0 <= 1/2 holds at x0 = 1
  CHECK(!contains(c.pieces[1], e0, 1e-9));   // +x0 <= 1/2 fails
  for (auto& p : c.pieces) CHECK(contains(p, Vec::Zero(3), 0));

  CHECK(build_hilbert_cover({2, 5}).pieces.size() == 4);
  CHECK(build_hilbert_cover({3, 5}).pieces.size() == 6);  // empty residue classes are fine
  CHECK_THROWS_AS(build_hilbert_cover({0, 5}), PreconditionError);
  CHECK_THROWS_AS(build_hilbert_cover({1, 1}), PreconditionError);
}

TEST_CASE("hilbert cover verifies with the algebraic certificate") {
  Rng rng(101);
  for (auto [k, N] : std::vector<std::pair<int, int>>{{1, 5}, {2, 20}, {3, 5}}) {
    Cover c = build_hilbert_cover({k, N});
    CoverReport rep = verify_cover(c, 10000, rng, 1e-9);
    CHECK(rep.uncovered.empty());
    CHECK(rep.max_violation <= 1e-12);
    CHECK(rep.certificate == "algebraic");
  }
}

TEST_CASE("verify_cover flags genuine gaps") {
  Rng rng(7);
  Cover whole{unit_ball(2), {unit_ball(2)}, {}};
  CoverReport ok = verify_cover(whole, 1000, rng, 1e-9);
  CHECK(ok.uncovered.empty());
  CHECK(ok.max_violation <= 0.0);

  Vec n1(2);
  n1 << -1, 0;
  Cover half{unit_ball(2), {halfspace_cap(2, n1, 0.0)}, {}};  // x >= 0 only
  CoverReport bad = verify_cover(half, 1000, rng, 1e-9);
  CHECK(!bad.uncovered.empty());
  CHECK(bad.max_violation > 0.1);
}

TEST_CASE("verify_cover is reproducible for a fixed seed") {
  Cover c = build_hilbert_cover({2, 8});
  Rng r1(5), r2(5);
  CoverReport a = verify_cover(c, 2000, r1, 1e-9);
  CoverReport b = verify_cover(c, 2000, r2, 1e-9);
  CHECK(a.max_violation == b.max_violation);
}

TEST_CASE("filter_interior drops flat pieces and keeps coverage") {
  Rng rng(13);
  Vec z2 = Vec::Zero(2);
  auto segment = ConvexBody::box(vec2(-1, 0), vec2(1, 0));
  Cover c{unit_ball(2), {unit_ball(2), segment}, {}};
  Cover f = filter_interior(c, 1e-6, rng);
  CHECK(f.pieces.size() == 1);

  Cover h = build_hilbert_cover({1, 3});
  Cover hf = filter_interior(h, 1e-6, rng);
  CHECK(hf.pieces.size() == 2);
  CHECK(hf.hilbert.has_value());
}

TEST_CASE("filter_interior exposes a witness when it breaks the cover") {
  Rng rng(19);
  Vec n1(2), n2(2);
  n1 << -1, 0;
  n2 << 1, 0;
  // cap on the left is essential but thin
  Cover c{unit_ball(2), {halfspace_cap(2, n1, 0.9), halfspace_cap(2, n2, -0.9)}, {}};
  CHECK_THROWS_AS(filter_interior(c, 0.2, rng), Error);
}

TEST_CASE("expansion constants") {
  Rng rng(29);
  ExpansionResult ball = expansion_delta(unit_ball(2), 0.1, AmbientNorm::L2, rng);
  CHECK(ball.delta == doctest::Approx(0.1));
  CHECK(ball.delta_prime == doctest::Approx(0.1).epsilon(1e-9));

  Mat A(6, 2);
  Vec b(6);
  for (int k = 0; k < 6; ++k) {
    double th = M_PI / 6 + k * M_PI / 3;
    A(k, 0) = std::cos(th);
    A(k, 1) = std::sin(th);
    b(k) = 0.5;
  }
  ExpansionResult hex = expansion_delta(ConvexBody::polytope(A, b), 0.2, AmbientNorm::L2, rng);
  CHECK(hex.delta == doctest::Approx(0.1));
  CHECK(hex.delta_prime == doctest::Approx(0.2 * std::sqrt(3.0)).epsilon(1e-6));
}

TEST_CASE("find_diameter on split disks and random cells") {
  Rng rng(31);
  Vec n1(2), n2(2);
  n1 << 1, 0;
  n2 << -1, 0;
  Cover halves{unit_ball(2), {halfspace_cap(2, n1, 0.0), halfspace_cap(2, n2, 0.0)}, {}};
  DiameterResult d = find_diameter(halves, 64, rng);
  CHECK(std::abs(d.x(0)) < 1e-6);
  CHECK(std::abs(std::abs(d.x(1)) - 1.0) < 1e-9);
  CHECK(contains(halves.pieces[d.piece], d.x, 1e-6));
  CHECK(contains(halves.pieces[d.piece], Vec(-d.x), 1e-6));

  // three halfspace cells around random directions in dimension 3
  std::vector<ConvexBody> cells;
  std::vector<Vec> dirs;
  for (int i = 0; i < 3; ++i) dirs.push_back(random_unit_vector(AmbientNorm::L2, 3, rng));
  for (int i = 0; i < 3; ++i) {
    Mat A(2, 3);
    Vec b = Vec::Zero(2);
    int r = 0;
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      A.row(r++) = (dirs[j] - dirs[i]).transpose();  // closer to dirs[i]
    }
    cells.push_back(ConvexBody::intersection({unit_ball(3), ConvexBody::polytope(A, b)}));
  }
  Cover voronoi{unit_ball(3), cells, {}};
  DiameterResult d3 = find_diameter(voronoi, 128, rng);
  CHECK(contains(voronoi.pieces[d3.piece], d3.x, 1e-6));
  CHECK(contains(voronoi.pieces[d3.piece], Vec(-d3.x), 1e-6));
  CHECK(d3.x.norm() == doctest::Approx(1.0).epsilon(1e-9));

  Cover single{unit_ball(2), {unit_ball(2)}, {}};
  DiameterResult ds = find_diameter(single, 16, rng);
  CHECK(ds.piece == 0);
}

TEST_CASE("cube cylinder search") {
  auto cube = [](int n) {
    return ConvexBody::box(Vec::Constant(n, -1.0), Vec::Constant(n, 1.0));
  };
  {
    Mat A1(1, 2), A2(1, 2);
    A1 << 1, 0;
    A2 << -1, 0;
    Vec b = Vec::Zero(1);
    Cover c{cube(2),
            {ConvexBody::intersection({cube(2), ConvexBody::polytope(A1, b)}),
             ConvexBody::intersection({cube(2), ConvexBody::polytope(A2, b)})},
            {}};
    CubeCylinderResult r = find_cube_cylinder(c);
    REQUIRE(r.found);
    CHECK(r.piece == 0);
    CHECK(r.prefix == std::vector<int>{-1});
  }
  {
    Cover c{cube(3), {cube(3)}, {}};
    CubeCylinderResult r = find_cube_cylinder(c);
    REQUIRE(r.found);
    CHECK(r.prefix.empty());
  }
  {
    // voronoi cells of three random centers cover the 10-cube
    Rng rng(37);
    int N = 10;
    std::vector<Vec> centers;
    for (int i = 0; i < 3; ++i) {
      Vec c(N);
      for (int j = 0; j < N; ++j) c(j) = rng.uniform(-1, 1);
      centers.push_back(c);
    }
    std::vector<ConvexBody> cells;
    for (int i = 0; i < 3; ++i) {
      Mat A(2, N);
      Vec b(2);
      int r = 0;
      for (int j = 0; j < 3; ++j) {
        if (j == i) continue;
        A.row(r) = 2.0 * (centers[j] - centers[i]).transpose();
        b(r) = centers[j].squaredNorm() - centers[i].squaredNorm();
        ++r;
      }
      cells.push_back(ConvexBody::intersection({cube(N), ConvexBody::polytope(A, b)}));
    }
    Cover c{cube(N), cells, {}};
    CubeCylinderResult res = find_cube_cylinder(c);
    REQUIRE(res.found);
    // re-verify every completion vertex by membership
    int free = N - (int)res.prefix.size();
    Vec x(N);
    for (size_t i = 0; i < res.prefix.size(); ++i) x(i) = res.prefix[i];
    for (long mask = 0; mask < (1L << free); ++mask) {
      for (int i = 0; i < free; ++i)
        x(res.prefix.size() + i) = (mask >> i & 1) ? 1.0 : -1.0;
      CHECK(contains(c.pieces[res.piece], x, 1e-9));
    }
  }
}
