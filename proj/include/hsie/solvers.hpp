// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "hsie/types.hpp"

namespace hsie {

// Sparse LU with fill-reducing (COLAMD) ordering; factorization is reused
// across solves. Throws SingularMatrix on a failed factorization.
class SparseLuSolver {
public:
  explicit SparseLuSolver(const ComplexSparseMatrix& a);

  ComplexVector solve(const ComplexVector& b) const;
  // Solve with up to max_refine iterative-refinement steps; returns the
  // solution and the final relative residual |Ax-b| / |b|.
  std::pair<ComplexVector, double> solve_refined(const ComplexVector& b,
                                                 int max_refine = 3) const;

private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Direct solve with a relative-residual guarantee of 1e-10 (after up to
// three refinement steps). Throws ResidualTooLarge otherwise.
ComplexVector lu_solve(const ComplexSparseMatrix& a, const ComplexVector& b);

struct EigResult {
  std::vector<Complex> eigenvalues; // kappa^2
  std::vector<ComplexVector> eigenvectors;
  std::vector<double> residuals; // |S x - kappa^2 M x| / |x|
  int iterations = 0;
  int restarts = 0;
};

// Shift-invert Arnoldi on (S - shift M)^{-1} M with a fixed seeded start
// vector (seed 0x48534945); returns the n_want eigenvalues nearest the shift
// with residuals below tol. Deterministic for fixed inputs.
EigResult shift_invert_eigs(const ComplexSparseMatrix& s,
                            const ComplexSparseMatrix& m, Complex shift,
                            int n_want, double tol, int max_krylov = 0);

} // namespace hsie
