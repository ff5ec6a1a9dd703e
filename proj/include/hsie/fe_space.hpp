// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "hsie/basis.hpp"
#include "hsie/mesh.hpp"
#include "hsie/segmentation.hpp"
#include "hsie/types.hpp"

namespace hsie {

// Conforming nodal Lagrange space of order p on the triangulation. DOF order:
// mesh vertices, then (p-1) per unique edge (from the lower vertex index to
// the higher), then cell bubbles. Traces on boundary edges coincide with
// Lagrange1D(p) on [0,1] in the orientation of the stored edge.
class FeSpace {
public:
  FeSpace(const Mesh2D& mesh, int order);

  const Mesh2D& mesh() const { return *mesh_; }
  int order() const { return order_; }
  int dof_count() const { return dof_count_; }
  const TriangleBasis& basis() const { return basis_; }

  const std::vector<int>& cell_dofs(int tri) const { return cell_dofs_[tri]; }
  // p+1 global DOFs along a boundary edge, endpoint-to-endpoint in the
  // stored edge orientation.
  const std::vector<int>& trace_dofs(int boundary_edge) const {
    return boundary_trace_[boundary_edge];
  }
  // Physical positions of the p+1 trace nodes of a boundary edge.
  std::vector<Eigen::Vector2d> trace_nodes(int boundary_edge) const;

  bool on_outer_boundary(int dof) const { return is_trace_[dof]; }
  int outer_trace_count() const { return n_trace_; }

private:
  const Mesh2D* mesh_;
  int order_;
  int dof_count_;
  int n_trace_;
  TriangleBasis basis_;
  std::vector<std::vector<int>> cell_dofs_;
  std::vector<std::vector<int>> boundary_trace_;
  std::vector<bool> is_trace_;
};

// Interior bilinear forms: S = grad-grad, M = n-weighted mass, both complex
// symmetric, quadrature exact for degree 2p.
void assemble_interior(const FeSpace& space, ComplexSparseMatrix& stiffness,
                       ComplexSparseMatrix& mass);

// Physical 1D matrices of a boundary edge of the given length:
// stiff = int b' b' ds, mass = int b b ds.
struct EdgeMatrices {
  RealMatrix stiff, mass;
};
EdgeMatrices edge_matrices(int order, double length);

// Reference-edge matrices with the trapezoid weights
//   b1 = int b_m' (h_xi^2 + (b-(a+b)eta)^2) b_n' deta
//   b2 = int b_m' ((b-(a+b)eta)/h_xi) b_n deta
//   b0 = int b_m b_n deta
struct WeightedTraceMatrices {
  RealMatrix b0, b1, b2;
};
WeightedTraceMatrices weighted_trace_matrices(int order,
                                              const TrapezoidParams& trap);

// Pointwise reference field for error measurement.
struct ReferenceField {
  std::function<Complex(double, double)> value;
  std::function<Eigen::Vector2cd(double, double)> grad;
};

// Relative H1(interior) error of an FE coefficient vector.
double h1_relative_error(const FeSpace& space, const ComplexVector& coeffs,
                         const ReferenceField& ref);

// Values of the FE function at mesh vertices (nodal basis: a gather).
ComplexVector vertex_values(const FeSpace& space, const ComplexVector& coeffs);

} // namespace hsie
