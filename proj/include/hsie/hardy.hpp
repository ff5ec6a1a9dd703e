// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hsie/types.hpp"

namespace hsie {

// Tuning wavenumber kappa0 (positive real part) and the number N of
// trigonometric monomials beyond the boundary degree of freedom. Every ray
// carries N+1 Hardy coefficients plus the shared boundary value.
struct HardyParams {
  Complex kappa0;
  int n_modes;

  HardyParams(Complex k0, int n) : kappa0(k0), n_modes(n) {
    if (!(k0.real() > 0.0))
      throw Error("invalid_hardy_params", "Re(kappa0) > 0 required");
    if (n < 0)
      throw Error("invalid_hardy_params", "n_modes >= 0 required");
  }
};

// Decomposition operators T_± on (u0, U), square of size (n_modes+2): the
// image coefficient of degree n_modes+1 is retained, which makes the Schur
// products T^T T reproduce the element matrices without extra truncation.
// Row/column 0 is the boundary degree of freedom.
DenseMatrix make_T(int n_modes, int sign);

// Galerkin matrix of (DF)(z) = ((z-1)^2 F'(z) + (z-1) F(z)) / (2 i kappa0)
// on the monomials z^0..z^{n_modes}; symmetric tridiagonal, size n_modes+1.
DenseMatrix make_D(int n_modes, Complex kappa0);

// (alpha I + beta D)^{-1} by dense factorization. Throws SingularResolvent
// when a pivot falls below 1e-12 * max|alpha I + beta D|.
DenseMatrix make_resolvent(int n_modes, Complex kappa0, Complex alpha,
                           double beta);

// One-dimensional infinite-element matrices on (u0, U):
//   S = -2 i kappa0 T_+^T T_+,   M = (2 i / kappa0) T_-^T T_-,
// both complex symmetric of size (n_modes+2). The discrete operator of the
// exterior problem is S - kappa^2 M.
DenseMatrix hsm_stiffness_1d(const HardyParams& p);
DenseMatrix hsm_mass_1d(const HardyParams& p);

// Exact monomial coefficients of the transformed outgoing wave
// u_boundary * e^{i kappa r}: coefficient j is
// u_boundary / (i (kappa+kappa0)) * ((kappa-kappa0)/(kappa+kappa0))^j,
// j = 0..n_modes. Test oracle for discrete solutions.
ComplexVector reference_hardy_coefficients(Complex kappa, const HardyParams& p,
                                           Complex u_boundary);

// Exact symmetrization helper: returns (A + A^T)/2 entries copied from the
// upper triangle so the result is bitwise symmetric.
DenseMatrix symmetrized(const DenseMatrix& a);

} // namespace hsie
