// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hsie/fe_space.hpp"
#include "hsie/hardy.hpp"
#include "hsie/segmentation.hpp"
#include "hsie/types.hpp"

namespace hsie {

// Local matrices of one exterior segment, complex symmetric. Index layout is
// radial-major: local = i * n_trace + m for edge segments (radial i = 0 is
// the boundary trace, trace node m runs along the edge in its stored
// orientation); corner segments use local = i * n_radial + j with both
// indices radial (i along the previous strip normal, j along the next).
struct ExteriorElementMatrices {
  DenseMatrix S, M;
  int n_trace = 0;
  int n_radial = 0;
  bool corner = false;
};

// kron with the radial factor major: out[(i,m),(j,n)] = radial(i,j)*trace(m,n).
DenseMatrix kron_radial_major(const DenseMatrix& radial,
                              const DenseMatrix& trace);

// Semi-infinite strip over an edge:
//   S = S_hsm (x) mass + M_hsm (x) stiff,   M = n_seg * M_hsm (x) mass.
ExteriorElementMatrices strip_matrices(const EdgeMatrices& em,
                                       const HardyParams& p, double n_seg);

// Infinite corner triangle between two strips with unit normals n1, n2.
// With J = [n1 n2] and G = |J| J^{-1} J^{-T}:
//   S = G11 S(x)M + G22 M(x)S + G12 C(x)C^T + G21 C^T(x)C,  C = -2 T+^T T-,
//   M = n_seg |J| M(x)M.
ExteriorElementMatrices triangle_matrices(const Eigen::Vector2d& n1,
                                          const Eigen::Vector2d& n2,
                                          const HardyParams& p, double n_seg);

// Infinite trapezoid. Radial operators use the resolvent of
// h_eta I + (a+b) D at the size of the T image space:
//   M_xi = -(2 h_xi / (i k0)) T-^T (h_eta I + (a+b) D) T-
//   L00  = -(2 / (i k0 h_xi)) T-^T (h_eta I + (a+b) D)^{-1} T-
//   L01  = -2 T-^T T+,  L10 = L01^T
//   L11  = -(2 i k0 / h_xi) T+^T (h_eta I + (a+b) D) T+
//   S = L00(x)b1 + L01(x)b2 + L10(x)b2^T + L11(x)b0,  M = n_seg * M_xi(x)b0.
ExteriorElementMatrices trapezoid_matrices(const TrapezoidParams& trap,
                                           const WeightedTraceMatrices& tm,
                                           const HardyParams& p, double n_seg);

} // namespace hsie
