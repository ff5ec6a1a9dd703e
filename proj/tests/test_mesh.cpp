// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <sstream>

#include "hsie/mesh.hpp"
#include "hsie/segmentation.hpp"

using namespace hsie;
using doctest::Approx;

namespace {

const char* kUnitSquare = R"(mesh2d 1
# unit square, two triangles
mat 0 1.0
v 0 0
v 1 0
v 1 1
v 0 1
t 0 1 2 0
t 0 2 3 0
be 0 1 1
be 1 2 1
be 2 3 1
be 3 0 1
)";

Mesh2D unit_square() {
  std::istringstream in(kUnitSquare);
  return load_mesh(in);
}

// xorshift64* generator, fixed seed; uniform in [0,1).
struct Rng {
  std::uint64_t s = 0x9E3779B97F4A7C15ull;
  double operator()() {
    s ^= s >> 12;
    s ^= s << 25;
    s ^= s >> 27;
    return ((s * 0x2545F4914F6CDD1Dull) >> 11) * 0x1.0p-53;
  }
};

} // namespace

TEST_CASE("unit square loads with 4 vertices and closed loop") {
  const Mesh2D m = unit_square();
  CHECK(m.vertices.size() == 4);
  CHECK(m.triangles.size() == 2);
  CHECK(m.boundary_edges.size() == 4);
  CHECK(m.outer_loop.size() == 4);
}

TEST_CASE("negative orientation is corrected") {
  std::string text = kUnitSquare;
  const auto pos = text.find("t 0 1 2 0");
  text.replace(pos, 9, "t 0 2 1 0");
  std::istringstream in(text);
  const Mesh2D m = load_mesh(in);
  // Orientation restored: positive signed area.
  const auto& t = m.triangles[0];
  const Eigen::Vector2d d1 = m.vertices[t.v[1]] - m.vertices[t.v[0]];
  const Eigen::Vector2d d2 = m.vertices[t.v[2]] - m.vertices[t.v[0]];
  CHECK(d1.x() * d2.y() - d1.y() * d2.x() > 0.0);
}

TEST_CASE("parse and structure errors carry positions") {
  std::istringstream bad("mesh2d 1\nv 0\n");
  CHECK_THROWS_AS(load_mesh(bad), ParseError);

  std::istringstream nohdr("v 0 0\n");
  CHECK_THROWS_AS(load_mesh(nohdr), ParseError);

  // Missing one boundary edge -> open loop.
  std::string text = kUnitSquare;
  text.erase(text.find("be 3 0 1"));
  std::istringstream in(text);
  CHECK_THROWS_AS(load_mesh(in), OpenBoundaryLoop);
}

TEST_CASE("non-convex outer boundary is rejected") {
  std::istringstream in(R"(mesh2d 1
mat 0 1.0
v 0 0
v 2 0
v 2 2
v 1 0.5
t 0 1 3 0
t 1 2 3 0
be 0 1 1
be 1 2 1
be 2 3 1
be 3 0 1
)");
  CHECK_THROWS_AS(load_mesh(in), NonConvexBoundary);
}

TEST_CASE("save/load round-trips exactly") {
  RectGridSpec spec;
  spec.x_lines = {0.0, 0.3333333333333333, 1.0};
  spec.y_lines = {0.0, 0.123456789012345678, 0.5, 1.0};
  spec.materials[0] = 2.1025;
  spec.materials[1] = 11.56;
  spec.boxes.push_back({0.0, 0.0, 1.0, 0.5, 1});
  const Mesh2D m = generate_rect_grid(spec);
  std::ostringstream out;
  save_mesh(m, out);
  std::istringstream in(out.str());
  const Mesh2D my2 = load_mesh(in);
  REQUIRE(my2.vertices.size() == m.vertices.size());
  for (size_t i = 0; i < m.vertices.size(); ++i) {
    CHECK(my2.vertices[i].x() == m.vertices[i].x());
    CHECK(my2.vertices[i].y() == m.vertices[i].y());
  }
  std::ostringstream out2;
  save_mesh(my2, out2);
  CHECK(out.str() == out2.str());
}

TEST_CASE("uniform refinement preserves structure") {
  const Mesh2D m = unit_square();
  const Mesh2D f = refine_uniform(m);
  CHECK(f.triangles.size() == 8);
  CHECK(f.boundary_edges.size() == 8);
  CHECK(f.vertices.size() == 4 + 5); // 4 edge midpoints + diagonal midpoint
}

TEST_CASE("trapezoid params: rectangle and square-bisector cases") {
  SUBCASE("rectangle") {
    const auto p = trapezoid_params({0, 0}, {1, 0}, {1, 1}, {0, 1});
    CHECK(p.h_eta == Approx(1.0));
    CHECK(p.h_xi == Approx(1.0));
    CHECK(p.a == Approx(0.0));
    CHECK(p.b == Approx(0.0));
    CHECK((p.rot - Eigen::Matrix2d::Identity()).norm() == Approx(0.0));
  }
  SUBCASE("square edge with 45-degree rays of length sqrt(2)") {
    const auto p = trapezoid_params({0, 0}, {1, 0}, {2, 1}, {-1, 1});
    CHECK(p.h_eta == Approx(1.0));
    CHECK(p.a == Approx(1.0));
    CHECK(p.b == Approx(1.0));
    CHECK(p.h_xi == Approx(1.0));
  }
  SUBCASE("rigid-motion invariance of the scalar parameters") {
    Rng rng;
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::Vector2d v1(rng(), rng());
      const Eigen::Vector2d v2 = v1 + Eigen::Vector2d(1 + rng(), 0.0);
      const Eigen::Vector2d v3 = v2 + Eigen::Vector2d(0.4 * rng(), 0.7 + rng());
      const Eigen::Vector2d v4 = v1 + Eigen::Vector2d(-0.4 * rng(), 0.7 + rng());
      const auto p = trapezoid_params(v1, v2, v3, v4);
      const double phi = 2.0 * M_PI * rng();
      Eigen::Matrix2d rot;
      rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
      const Eigen::Vector2d shift(10 * rng() - 5, 10 * rng() - 5);
      const auto q = trapezoid_params(rot * v1 + shift, rot * v2 + shift,
                                      rot * v3 + shift, rot * v4 + shift);
      CHECK(q.h_eta == Approx(p.h_eta).epsilon(1e-13));
      CHECK(q.h_xi == Approx(p.h_xi).epsilon(1e-13));
      CHECK(q.a == Approx(p.a).epsilon(1e-13));
      CHECK(q.b == Approx(p.b).epsilon(1e-13));
    }
  }
  SUBCASE("degenerate input throws") {
    CHECK_THROWS_AS(trapezoid_params({0, 0}, {1, 0}, {2, 0}, {-1, 0}),
                    DegenerateTrapezoid);
  }
}

TEST_CASE("unit square bisector trapezoids are symmetric") {
  const Mesh2D m = unit_square();
  const Segmentation seg =
      build_segmentation(m, SegmentationStrategy::trapezoids_normal_bisector);
  CHECK(seg.edges.size() == 4);
  CHECK(seg.corners.empty());
  CHECK(seg.rays.size() == 4);
  const double s = std::sin(M_PI / 4.0);
  for (const auto& e : seg.edges) {
    CHECK(e.trap.h_eta == Approx(1.0));
    CHECK(e.trap.a == Approx(s).epsilon(1e-14));
    CHECK(e.trap.b == Approx(s).epsilon(1e-14));
    CHECK(e.trap.h_xi == Approx(s).epsilon(1e-14));
  }
  // Rays point along the diagonals.
  for (const auto& r : seg.rays) {
    CHECK(std::abs(r.dir.x()) == Approx(s).epsilon(1e-14));
    CHECK(std::abs(r.dir.y()) == Approx(s).epsilon(1e-14));
  }
}

TEST_CASE("unit square strips and triangles") {
  const Mesh2D m = unit_square();
  const Segmentation seg =
      build_segmentation(m, SegmentationStrategy::strips_and_triangles);
  CHECK(seg.edges.size() == 4);
  CHECK(seg.corners.size() == 4);
  for (const auto& c : seg.corners) {
    const Eigen::Vector2d n1 = seg.rays[c.ray_prev].dir;
    const Eigen::Vector2d n2 = seg.rays[c.ray_next].dir;
    CHECK(n1.dot(n2) == Approx(0.0).epsilon(1e-14));
    CHECK(n1.norm() == Approx(1.0));
    CHECK(n2.norm() == Approx(1.0));
  }
}

TEST_CASE("regular hexagon with centroid reference point is congruent") {
  Mesh2D m;
  m.materials[0] = 1.0;
  m.vertices.emplace_back(0.0, 0.0);
  for (int k = 0; k < 6; ++k)
    m.vertices.emplace_back(std::cos(M_PI * k / 3.0), std::sin(M_PI * k / 3.0));
  for (int k = 0; k < 6; ++k) {
    m.triangles.push_back({{0, 1 + k, 1 + (k + 1) % 6}, 0});
    m.boundary_edges.push_back({{1 + k, 1 + (k + 1) % 6}, 1});
  }
  validate_mesh(m);
  const Segmentation seg =
      build_segmentation(m, SegmentationStrategy::trapezoids_reference_point,
                         Eigen::Vector2d(0.0, 0.0));
  REQUIRE(seg.edges.size() == 6);
  const auto& t0 = seg.edges[0].trap;
  for (const auto& e : seg.edges) {
    CHECK(e.trap.h_eta == Approx(t0.h_eta).epsilon(1e-14));
    CHECK(e.trap.h_xi == Approx(t0.h_xi).epsilon(1e-14));
    CHECK(e.trap.a == Approx(t0.a).epsilon(1e-14));
    CHECK(e.trap.b == Approx(t0.b).epsilon(1e-14));
  }
  // Outside reference point is rejected.
  CHECK_THROWS_AS(
      build_segmentation(m, SegmentationStrategy::trapezoids_reference_point,
                         Eigen::Vector2d(5.0, 0.0)),
      ConfigError);
}

TEST_CASE("segment footprints tile the exterior band without overlap") {
  RectGridSpec spec;
  spec.x_lines = {0.0, 1.0, 2.5, 3.5};
  spec.y_lines = {0.0, 0.8, 2.0};
  spec.materials[0] = 1.0;
  const Mesh2D m = generate_rect_grid(spec);
  const double band = 1.7;

  for (const auto strategy : {SegmentationStrategy::trapezoids_normal_bisector,
                              SegmentationStrategy::strips_and_triangles}) {
    const Segmentation seg = build_segmentation(m, strategy);
    Rng rng;
    int tested = 0;
    for (int trial = 0; trial < 20000 && tested < 10000; ++trial) {
      // Sample inside a random segment's footprint, then count containments.
      const int pick =
          static_cast<int>(rng() * (seg.edges.size() + seg.corners.size()));
      Eigen::Vector2d p;
      const double margin = 1e-7;
      if (pick < static_cast<int>(seg.edges.size())) {
        const auto& es = seg.edges[pick];
        const auto& e = m.boundary_edges[es.edge];
        const double eta = margin + (1 - 2 * margin) * rng();
        const double xi = margin + (band - 2 * margin) * rng();
        if (es.kind == Segmentation::EdgeSegment::Kind::strip) {
          const Eigen::Vector2d v1 = m.vertices[e.v[0]];
          const Eigen::Vector2d v2 = m.vertices[e.v[1]];
          p = v1 + eta * (v2 - v1) + xi * es.normal;
        } else {
          const Eigen::Vector2d v1 = m.vertices[e.v[0]];
          const auto& t = es.trap;
          const Eigen::Vector2d local(t.h_eta * eta - t.b * xi +
                                          (t.a + t.b) * eta * xi,
                                      t.h_xi * xi);
          p = t.rot * local + v1;
        }
      } else {
        const auto& c = seg.corners[pick - seg.edges.size()];
        const double xi = margin + (band - 2 * margin) * rng();
        const double et = margin + (band - 2 * margin) * rng();
        p = m.vertices[c.vertex] + xi * seg.rays[c.ray_prev].dir +
            et * seg.rays[c.ray_next].dir;
      }

      int hits = 0;
      bool near_boundary = false;
      const double tol = 1e-12;
      for (size_t s = 0; s < seg.edges.size(); ++s) {
        const auto lc = edge_segment_coords(seg, m, static_cast<int>(s), p);
        if (!lc) continue;
        const double eta = lc->x(), xi = lc->y();
        if (eta > tol && eta < 1 - tol && xi > tol && xi < band - tol) ++hits;
        else if (eta > -tol && eta < 1 + tol && xi > -tol && xi < band + tol)
          near_boundary = true;
      }
      for (size_t c = 0; c < seg.corners.size(); ++c) {
        const auto lc = corner_segment_coords(seg, m, static_cast<int>(c), p);
        if (!lc) continue;
        const double et = lc->x(), xi = lc->y();
        if (et > tol && et < band - tol && xi > tol && xi < band - tol) ++hits;
        else if (et > -tol && et < band + tol && xi > -tol && xi < band + tol)
          near_boundary = true;
      }
      if (near_boundary) continue; // shared-face points are ambiguous
      CHECK(hits == 1);
      ++tested;
    }
    CHECK(tested >= 10000);
  }
}

TEST_CASE("jacobian of every trapezoid stays positive") {
  RectGridSpec spec;
  spec.x_lines = {0.0, 0.5, 1.25, 2.0};
  spec.y_lines = {0.0, 1.0};
  spec.materials[0] = 3.0;
  const Mesh2D m = generate_rect_grid(spec);
  const Segmentation seg =
      build_segmentation(m, SegmentationStrategy::trapezoids_normal_bisector);
  for (const auto& e : seg.edges) {
    CHECK(e.trap.h_xi * e.trap.h_eta > 0.0);
    CHECK(e.trap.a + e.trap.b >= -1e-13);
  }
}
