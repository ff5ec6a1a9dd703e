// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "hsie/hardy.hpp"
#include "hsie/types.hpp"

namespace hsie {

// Radial Helmholtz problem on [0, a] with Neumann datum u'(0) = g and the
// Hardy-space transparent condition at r = a. The refraction coefficient is
// piecewise constant: values[k] on (breaks[k-1], breaks[k]) with implicit
// endpoints 0 and a, and n = 1 beyond a.
struct Problem1D {
  double a = 1.0;
  std::vector<double> n_breaks;
  std::vector<double> n_values{1.0};
  Complex kappa{1.0, 0.0};
  Complex g{0.0, 0.0};
  int fe_order = 1;
  int n_cells = 1;
  HardyParams hardy{Complex(1.0, 0.0), 0};
  enum class Bc0 { neumann, dirichlet } bc0 = Bc0::neumann;
};

struct Solution1D {
  ComplexVector interior;     // FE coefficients, left to right
  Complex u0{};               // trace at r = a (same as interior tail)
  ComplexVector hardy_coeffs; // U part of the decomposition, length N+1
  std::vector<double> grid;   // r-positions of the interior DOFs

  // Monomial coefficients of the transformed exterior solution,
  // \hat U = T_-(u0, U) / (i kappa0); length N+2.
  ComplexVector hardy_transform(const HardyParams& p) const;
};

struct System1D {
  ComplexSparseMatrix S, M;
  ComplexVector rhs;
  int n_interior = 0; // leading FE block; Hardy DOFs follow
  std::vector<double> grid;
};

// S holds the derivative term plus the exterior stiffness block, M the
// n-weighted mass plus the exterior mass block; the discrete problem is
// (S - kappa^2 M) x = rhs with rhs = -g at the r = 0 DOF. kappa never enters
// the matrices.
System1D assemble_1d(const Problem1D& prob);

Solution1D solve_scattering_1d(const Problem1D& prob);

// Eigenpairs of S x = kappa^2 M x nearest the shift. Uses homogeneous
// Neumann or Dirichlet data at r = 0 per prob.bc0; prob.g must be zero.
std::vector<std::pair<Complex, Solution1D>>
solve_resonance_1d(const Problem1D& prob, Complex shift, int n_want = 1,
                   double tol = 1e-8);

} // namespace hsie
