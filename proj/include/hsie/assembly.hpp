// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "hsie/exterior.hpp"
#include "hsie/fe_space.hpp"
#include "hsie/hardy.hpp"
#include "hsie/segmentation.hpp"
#include "hsie/types.hpp"

namespace hsie {

// Global numbering: FE DOFs keep their FeSpace indices (boundary traces are
// shared with the exterior blocks), then per-edge Hardy DOFs of interior
// trace nodes, then one Hardy ladder per ray (shared between the adjacent
// segments), then corner-private Hardy DOFs.
struct DofMap {
  int n_total = 0;
  int n_interior = 0; // FE DOFs not on the outer boundary
  int n_trace = 0;    // FE DOFs on the outer boundary
  int n_hardy = 0;

  // local -> global, aligned with Segmentation::edges / corners.
  std::vector<std::vector<int>> edge_dofs;
  std::vector<std::vector<int>> corner_dofs;
};

DofMap build_dof_map(const FeSpace& space, const Segmentation& seg,
                     const HardyParams& hardy);

// Incoming-field trace data on designated inflow edges, as coefficient
// vectors in the edge trace basis. neumann is the outward normal derivative.
struct IncomingField {
  struct EdgeData {
    int edge; // index into mesh.boundary_edges
    ComplexVector dirichlet, neumann;
  };
  std::vector<EdgeData> edges;
};

struct GlobalSystem {
  ComplexSparseMatrix S, M; // discrete operator is S - kappa^2 M
  DofMap dofmap;
  // Cached per-edge-segment local matrices; needed to eliminate the incoming
  // Dirichlet trace on inflow edges.
  std::vector<ExteriorElementMatrices> edge_local;
};

GlobalSystem assemble_global(const FeSpace& space, const Segmentation& seg,
                             const HardyParams& hardy);

// Right-hand side for (S - kappa^2 M) x = rhs with the exterior unknowns on
// inflow edges representing the scattered field: the substitution
// u_s0 = u0 - g_D moves exterior-block columns to the rhs, and the Neumann
// jump adds edge mass terms. Requires g_D to vanish at corners shared with
// edges that carry no data.
ComplexVector apply_incoming(const GlobalSystem& sys, const FeSpace& space,
                             const Segmentation& seg, const IncomingField& inc,
                             Complex kappa);

} // namespace hsie
