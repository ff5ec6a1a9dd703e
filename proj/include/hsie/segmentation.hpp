// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "hsie/mesh.hpp"
#include "hsie/types.hpp"

namespace hsie {

enum class SegmentationStrategy {
  strips_and_triangles,
  trapezoids_normal_bisector,
  trapezoids_reference_point,
};

// Map parameters of one infinite trapezoid. a and b are signed distances;
// |J| = h_xi (h_eta + (a+b) xi) stays positive iff a+b >= 0.
struct TrapezoidParams {
  double h_eta, h_xi, a, b;
  Eigen::Matrix2d rot;
};

// v1->v2 is the boundary edge, v1->v4 and v2->v3 the first-layer rays.
TrapezoidParams trapezoid_params(const Eigen::Vector2d& v1,
                                 const Eigen::Vector2d& v2,
                                 const Eigen::Vector2d& v3,
                                 const Eigen::Vector2d& v4);

// Exterior segmentation of the outer boundary loop. Rays are stored once per
// (vertex, direction) and referenced by the adjacent segments, so shared ray
// geometry is identical by construction. First-layer rays have unit length.
struct Segmentation {
  SegmentationStrategy strategy;

  struct Ray {
    int vertex;
    Eigen::Vector2d dir; // unit
  };
  std::vector<Ray> rays;

  struct EdgeSegment {
    enum class Kind { strip, trapezoid } kind;
    int edge; // index into mesh.boundary_edges
    int ray_start, ray_end;
    Eigen::Vector2d normal; // outward unit normal
    TrapezoidParams trap;   // trapezoids only
    double material_n;
  };
  std::vector<EdgeSegment> edges;

  // strips_and_triangles: one infinite triangle per non-collinear corner,
  // spanned by the normals of the previous and next strip.
  struct CornerSegment {
    int vertex;
    int ray_prev, ray_next;
    double material_n;
  };
  std::vector<CornerSegment> corners;
};

Segmentation
build_segmentation(const Mesh2D& mesh, SegmentationStrategy strategy,
                   std::optional<Eigen::Vector2d> reference_point = {});

// Reference coordinates of a physical point relative to a segment; first
// component eta (transverse), second xi (radial). The point lies in the
// xi <= L footprint iff eta in [0,1] (edge segments) resp. both in [0,L]
// (corner segments) and xi in [0,L].
std::optional<Eigen::Vector2d> edge_segment_coords(const Segmentation& seg,
                                                   const Mesh2D& mesh, int index,
                                                   const Eigen::Vector2d& p);
std::optional<Eigen::Vector2d> corner_segment_coords(const Segmentation& seg,
                                                     const Mesh2D& mesh,
                                                     int index,
                                                     const Eigen::Vector2d& p);

} // namespace hsie
