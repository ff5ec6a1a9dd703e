// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace hsie {

using Complex = std::complex<double>;

using DenseMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Global operators are complex symmetric (plain transpose, never conjugate).
using ComplexSparseMatrix = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

// Base for all library errors; `kind` is a stable machine-readable tag.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

#define HSIE_DEFINE_ERROR(Name, tag)                                          \
  class Name : public Error {                                                 \
  public:                                                                      \
    explicit Name(const std::string& msg) : Error(tag, msg) {}                \
  }

HSIE_DEFINE_ERROR(ParseError, "parse_error");
HSIE_DEFINE_ERROR(NonConvexBoundary, "non_convex_boundary");
HSIE_DEFINE_ERROR(OpenBoundaryLoop, "open_boundary_loop");
HSIE_DEFINE_ERROR(DegenerateEdge, "degenerate_edge");
HSIE_DEFINE_ERROR(RayCrossing, "ray_crossing");
HSIE_DEFINE_ERROR(DegenerateTrapezoid, "degenerate_trapezoid");
HSIE_DEFINE_ERROR(DegenerateCorner, "degenerate_corner");
HSIE_DEFINE_ERROR(SingularResolvent, "singular_resolvent");
HSIE_DEFINE_ERROR(MissingMaterial, "missing_material");
HSIE_DEFINE_ERROR(InconsistentRays, "inconsistent_rays");
HSIE_DEFINE_ERROR(MissingTraceData, "missing_trace_data");
HSIE_DEFINE_ERROR(SingularMatrix, "singular_matrix");
HSIE_DEFINE_ERROR(ResidualTooLarge, "residual_too_large");
HSIE_DEFINE_ERROR(SingularSystem, "singular_system");
HSIE_DEFINE_ERROR(ConvergenceFailure, "convergence_failure");
HSIE_DEFINE_ERROR(ShiftIsEigenvalue, "shift_is_eigenvalue");
HSIE_DEFINE_ERROR(NoGuidedMode, "no_guided_mode");
HSIE_DEFINE_ERROR(BranchOutOfRange, "branch_out_of_range");
HSIE_DEFINE_ERROR(ConfigError, "config_error");

#undef HSIE_DEFINE_ERROR

} // namespace hsie
