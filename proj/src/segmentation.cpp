// SPDX-License-Identifier: Apache-2.0
#include <Eigen/Dense>

#include "hsie/segmentation.hpp"

#include <cmath>
#include <map>

namespace hsie {

TrapezoidParams trapezoid_params(const Eigen::Vector2d& v1,
                                 const Eigen::Vector2d& v2,
                                 const Eigen::Vector2d& v3,
                                 const Eigen::Vector2d& v4) {
  TrapezoidParams p{};
  p.h_eta = (v2 - v1).norm();
  if (p.h_eta <= 0.0) throw DegenerateTrapezoid("boundary edge has zero length");
  const Eigen::Vector2d d43 = v4 - v3;
  const double den = d43.norm();
  if (den <= 0.0) throw DegenerateTrapezoid("first-layer ray points coincide");
  p.a = d43.dot(v2 - v3) / den;
  p.b = (-d43).dot(v1 - v4) / den;
  const double hxi2 = (v3 - v2).squaredNorm() - p.a * p.a;
  if (!(hxi2 > 0.0))
    throw DegenerateTrapezoid("ray collapses onto the boundary edge");
  p.h_xi = std::sqrt(hxi2);
  // Orthogonal edge frame (tangent, normal) with the normal chosen on the
  // side of the rays, so the reference strip maps onto the segment. The
  // element matrices only see |J| and J^-1 J^-T and are unaffected by the
  // handedness of the frame.
  const Eigen::Vector2d t = (v2 - v1) / p.h_eta;
  Eigen::Vector2d nrm(-t.y(), t.x());
  if (nrm.dot((v3 - v2) + (v4 - v1)) < 0.0) nrm = -nrm;
  p.rot.col(0) = t;
  p.rot.col(1) = nrm;
  return p;
}

namespace {

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

} // namespace

Segmentation build_segmentation(const Mesh2D& mesh,
                                SegmentationStrategy strategy,
                                std::optional<Eigen::Vector2d> reference_point) {
  Segmentation seg;
  seg.strategy = strategy;
  const auto& loop = mesh.outer_loop;
  const int ne = static_cast<int>(loop.size());
  if (ne < 3) throw OpenBoundaryLoop("outer loop has fewer than 3 edges");

  double diam = 0.0;
  for (const int ei : loop) diam = std::max(diam, mesh.edge_length(ei));

  // Outward normals, interior on the left of each oriented edge.
  std::vector<Eigen::Vector2d> normal(ne);
  for (int k = 0; k < ne; ++k) {
    const auto& e = mesh.boundary_edges[loop[k]];
    const Eigen::Vector2d d = mesh.vertices[e.v[1]] - mesh.vertices[e.v[0]];
    const double len = d.norm();
    if (len < 1e-14 * diam)
      throw DegenerateEdge("outer boundary edge " + std::to_string(loop[k]) +
                           " has zero length");
    normal[k] = Eigen::Vector2d(d.y(), -d.x()) / len;
  }

  // Refraction coefficient of the triangle adjacent to each boundary edge.
  std::map<std::pair<int, int>, double> edge_n;
  for (const auto& t : mesh.triangles)
    for (int k = 0; k < 3; ++k) {
      const int a = std::min(t.v[k], t.v[(k + 1) % 3]);
      const int b = std::max(t.v[k], t.v[(k + 1) % 3]);
      edge_n[{a, b}] = mesh.n_of(t.material);
    }
  const auto material_of = [&](int edge_index) {
    const auto& e = mesh.boundary_edges[edge_index];
    return edge_n.at({std::min(e.v[0], e.v[1]), std::max(e.v[0], e.v[1])});
  };

  if (strategy == SegmentationStrategy::trapezoids_reference_point) {
    if (!reference_point)
      throw ConfigError("reference-point segmentation needs a point P0");
    for (int k = 0; k < ne; ++k) {
      const auto& e = mesh.boundary_edges[loop[k]];
      if (normal[k].dot(*reference_point - mesh.vertices[e.v[0]]) >= 0.0)
        throw ConfigError("reference point P0 must lie strictly inside the polygon");
    }
  }

  const bool trapezoids =
      strategy != SegmentationStrategy::strips_and_triangles;

  // Rays per loop vertex; vertex k is the end of edge k and start of edge k+1.
  // ray_at[k] holds {ray along normal[k], ray along normal[k+1]} for strip
  // corners and a single shared ray otherwise.
  std::vector<std::pair<int, int>> ray_at(ne);
  std::vector<bool> has_corner(ne, false);
  for (int k = 0; k < ne; ++k) {
    const int knext = (k + 1) % ne;
    const int vertex = mesh.boundary_edges[loop[k]].v[1];
    const double turn = cross2(normal[k], normal[knext]);
    const bool collinear = std::abs(turn) < 1e-12;
    if (trapezoids) {
      Eigen::Vector2d dir;
      if (strategy == SegmentationStrategy::trapezoids_reference_point)
        dir = (mesh.vertices[vertex] - *reference_point).normalized();
      else
        dir = (normal[k] + normal[knext]).normalized();
      const int id = static_cast<int>(seg.rays.size());
      seg.rays.push_back({vertex, dir});
      ray_at[k] = {id, id};
    } else if (collinear) {
      const int id = static_cast<int>(seg.rays.size());
      seg.rays.push_back({vertex, (normal[k] + normal[knext]).normalized()});
      ray_at[k] = {id, id};
    } else {
      if (turn < 0.0)
        throw NonConvexBoundary("outer loop turns clockwise at vertex " +
                                std::to_string(vertex));
      const int id0 = static_cast<int>(seg.rays.size());
      seg.rays.push_back({vertex, normal[k]});
      seg.rays.push_back({vertex, normal[knext]});
      ray_at[k] = {id0, id0 + 1};
      has_corner[k] = true;
    }
  }

  for (int k = 0; k < ne; ++k) {
    const int kprev = (k + ne - 1) % ne;
    Segmentation::EdgeSegment s{};
    s.edge = loop[k];
    s.normal = normal[k];
    s.ray_start = ray_at[kprev].second;
    s.ray_end = ray_at[k].first;
    s.material_n = material_of(loop[k]);
    if (trapezoids) {
      s.kind = Segmentation::EdgeSegment::Kind::trapezoid;
      const auto& e = mesh.boundary_edges[loop[k]];
      const Eigen::Vector2d v1 = mesh.vertices[e.v[0]];
      const Eigen::Vector2d v2 = mesh.vertices[e.v[1]];
      s.trap = trapezoid_params(v1, v2, v2 + seg.rays[s.ray_end].dir,
                                v1 + seg.rays[s.ray_start].dir);
      if (s.trap.a + s.trap.b < -1e-12)
        throw RayCrossing("rays of boundary edge " + std::to_string(loop[k]) +
                          " cross at finite distance (a+b < 0)");
    } else {
      s.kind = Segmentation::EdgeSegment::Kind::strip;
    }
    seg.edges.push_back(s);
  }

  if (!trapezoids) {
    for (int k = 0; k < ne; ++k) {
      if (!has_corner[k]) continue;
      Segmentation::CornerSegment c{};
      c.vertex = mesh.boundary_edges[loop[k]].v[1];
      c.ray_prev = ray_at[k].first;
      c.ray_next = ray_at[k].second;
      const double n_prev = seg.edges[k].material_n;
      const double n_next = seg.edges[(k + 1) % ne].material_n;
      if (n_prev != n_next)
        throw Error("corner_material_mismatch",
                    "corner at vertex " + std::to_string(c.vertex) +
                        " sits between edges of different exterior media");
      c.material_n = n_prev;
      seg.corners.push_back(c);
    }
  }
  return seg;
}

std::optional<Eigen::Vector2d> edge_segment_coords(const Segmentation& seg,
                                                   const Mesh2D& mesh, int index,
                                                   const Eigen::Vector2d& p) {
  const auto& s = seg.edges.at(index);
  const auto& e = mesh.boundary_edges[s.edge];
  const Eigen::Vector2d v1 = mesh.vertices[e.v[0]];
  if (s.kind == Segmentation::EdgeSegment::Kind::strip) {
    const double len = mesh.edge_length(s.edge);
    const Eigen::Vector2d t = (mesh.vertices[e.v[1]] - v1) / len;
    const Eigen::Vector2d d = p - v1;
    return Eigen::Vector2d(d.dot(t) / len, d.dot(s.normal));
  }
  const Eigen::Vector2d local = s.trap.rot.transpose() * (p - v1);
  const double xi = local.y() / s.trap.h_xi;
  const double den = s.trap.h_eta + (s.trap.a + s.trap.b) * xi;
  if (den <= 0.0) return std::nullopt;
  const double eta = (local.x() + s.trap.b * xi) / den;
  return Eigen::Vector2d(eta, xi);
}

std::optional<Eigen::Vector2d> corner_segment_coords(const Segmentation& seg,
                                                     const Mesh2D& mesh,
                                                     int index,
                                                     const Eigen::Vector2d& p) {
  const auto& c = seg.corners.at(index);
  Eigen::Matrix2d j;
  j.col(0) = seg.rays[c.ray_prev].dir;
  j.col(1) = seg.rays[c.ray_next].dir;
  if (std::abs(j.determinant()) < 1e-12) return std::nullopt;
  const Eigen::Vector2d xi_eta = j.inverse() * (p - mesh.vertices[c.vertex]);
  return Eigen::Vector2d(xi_eta.y(), xi_eta.x()); // (eta, xi) ordering
}

} // namespace hsie
