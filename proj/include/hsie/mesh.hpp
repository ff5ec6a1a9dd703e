// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hsie/types.hpp"

namespace hsie {

// Triangulated interior domain. Boundary edges are oriented with the
// interior on the left; the outer loop is counter-clockwise and must be a
// convex polygon. Material values are the refraction coefficient n(x)
// multiplying kappa^2 in the Helmholtz operator (the squared index for
// physical media).
struct Mesh2D {
  struct Tri {
    int v[3];
    int material;
  };
  struct BoundaryEdge {
    int v[2];
    int tag;
  };

  std::vector<Eigen::Vector2d> vertices;
  std::vector<Tri> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  std::map<int, double> materials;

  // Indices into boundary_edges forming the outer loop, in loop order.
  std::vector<int> outer_loop;

  double n_of(int material_id) const;
  double edge_length(int boundary_edge) const;
};

// Line-based text format, see README. Throws ParseError / NonConvexBoundary /
// OpenBoundaryLoop.
Mesh2D load_mesh(std::istream& in);
Mesh2D load_mesh_file(const std::string& path);
void save_mesh(const Mesh2D& mesh, std::ostream& out);
void save_mesh_file(const Mesh2D& mesh, const std::string& path);

// Orientation fix, boundary-loop closure, outer-loop convexity. Called by
// load_mesh and the generator; call manually after building a Mesh2D by hand.
void validate_mesh(Mesh2D& mesh);

// Red refinement: every triangle splits into four, boundary edges into two.
Mesh2D refine_uniform(const Mesh2D& mesh);

// Structured generator for rectangles with axis-aligned rectangular
// inclusions. Grid lines are given explicitly; each grid cell is split into
// two triangles. Boundary tags: 1 left, 2 right, 3 bottom, 4 top.
struct RectGridSpec {
  std::vector<double> x_lines, y_lines; // ascending, >= 2 entries each
  struct Box {
    double x0, y0, x1, y1;
    int material;
  };
  std::vector<Box> boxes; // later boxes override earlier ones
  int background_material = 0;
  std::map<int, double> materials;
};
Mesh2D generate_rect_grid(const RectGridSpec& spec);

} // namespace hsie
