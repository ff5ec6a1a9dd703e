// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "hsie/types.hpp"

namespace hsie {

// Nodal Lagrange basis of given order on [0,1] with Gauss-Lobatto nodes.
// Evaluation goes through a Legendre modal expansion; well conditioned for
// the supported orders (<= 7).
class Lagrange1D {
public:
  explicit Lagrange1D(int order);

  int order() const { return order_; }
  const std::vector<double>& nodes() const { return nodes_; }

  // (npts x order+1) basis values / derivatives at the given points.
  RealMatrix values_at(const std::vector<double>& pts) const;
  RealMatrix derivs_at(const std::vector<double>& pts) const;

private:
  int order_;
  std::vector<double> nodes_;
  RealMatrix coef_; // modal-to-nodal: basis i = sum_k coef_(k,i) P_k
};

// Nodal basis on the reference triangle {x,y >= 0, x+y <= 1}.
// Vertex order (0,0), (1,0), (0,1); edges 0:(v0,v1), 1:(v1,v2), 2:(v2,v0).
// Edge nodes sit at the interior Gauss-Lobatto parameters of Lagrange1D, so
// traces coincide with the 1D nodal basis on every edge.
class TriangleBasis {
public:
  explicit TriangleBasis(int order);

  struct NodeRole {
    enum Kind { Vertex, Edge, Interior } kind;
    int entity; // vertex index / edge index / unused
    int index;  // position along the edge (0-based), or interior counter
  };

  int order() const { return order_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Eigen::Vector2d>& nodes() const { return nodes_; }
  const std::vector<NodeRole>& roles() const { return roles_; }

  // (npts x ndofs) values at reference points.
  RealMatrix values_at(const std::vector<double>& x,
                       const std::vector<double>& y) const;
  // d/dx and d/dy, each (npts x ndofs).
  std::pair<RealMatrix, RealMatrix> grads_at(const std::vector<double>& x,
                                             const std::vector<double>& y) const;

private:
  int order_;
  std::vector<Eigen::Vector2d> nodes_;
  std::vector<NodeRole> roles_;
  RealMatrix vand_inv_; // modal Vandermonde inverse
};

} // namespace hsie
