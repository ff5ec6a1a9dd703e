// SPDX-License-Identifier: Apache-2.0
#include "hsie/hardy.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace hsie {

DenseMatrix symmetrized(const DenseMatrix& a) {
  DenseMatrix s = a;
  for (int i = 0; i < s.rows(); ++i)
    for (int j = i + 1; j < s.cols(); ++j) {
      const Complex v = 0.5 * (a(i, j) + a(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  return s;
}

DenseMatrix make_T(int n_modes, int sign) {
  if (n_modes < 0) throw std::invalid_argument("make_T: n_modes >= 0");
  if (sign != 1 && sign != -1) throw std::invalid_argument("make_T: sign is +-1");
  const int n = n_modes + 2;
  DenseMatrix t = DenseMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    t(i, i) = 0.5;
    if (i + 1 < n) t(i, i + 1) = 0.5 * sign;
  }
  return t;
}

DenseMatrix make_D(int n_modes, Complex kappa0) {
  if (n_modes < 0) throw std::invalid_argument("make_D: n_modes >= 0");
  if (!(kappa0.real() > 0.0))
    throw std::invalid_argument("make_D: Re(kappa0) > 0");
  const int n = n_modes + 1;
  const Complex scale = 1.0 / (Complex(0.0, 2.0) * kappa0);
  DenseMatrix d = DenseMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    d(j, j) = -double(2 * j + 1) * scale;
    if (j + 1 < n) {
      d(j, j + 1) = double(j + 1) * scale;
      d(j + 1, j) = d(j, j + 1);
    }
  }
  return d;
}

DenseMatrix make_resolvent(int n_modes, Complex kappa0, Complex alpha,
                           double beta) {
  const int n = n_modes + 1;
  DenseMatrix a = beta * make_D(n_modes, kappa0);
  a.diagonal().array() += alpha;
  const double norm = a.cwiseAbs().maxCoeff();
  Eigen::FullPivLU<DenseMatrix> lu(a);
  lu.setThreshold(0.0);
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > 1e-12 * norm))
    throw SingularResolvent("alpha I + beta D is singular at size " +
                            std::to_string(n));
  return lu.inverse();
}

DenseMatrix hsm_stiffness_1d(const HardyParams& p) {
  const DenseMatrix t = make_T(p.n_modes, +1);
  return symmetrized(Complex(0.0, -2.0) * p.kappa0 * (t.transpose() * t));
}

DenseMatrix hsm_mass_1d(const HardyParams& p) {
  const DenseMatrix t = make_T(p.n_modes, -1);
  return symmetrized(Complex(0.0, 2.0) / p.kappa0 * (t.transpose() * t));
}

ComplexVector reference_hardy_coefficients(Complex kappa, const HardyParams& p,
                                           Complex u_boundary) {
  if (!((kappa / p.kappa0).real() > 0.0))
    throw Error("invalid_hardy_params",
                "pole condition requires Re(kappa/kappa0) > 0");
  const Complex ratio = (kappa - p.kappa0) / (kappa + p.kappa0);
  const Complex c0 = u_boundary / (Complex(0.0, 1.0) * (kappa + p.kappa0));
  ComplexVector c(p.n_modes + 1);
  Complex cur = c0;
  for (int j = 0; j <= p.n_modes; ++j) {
    c(j) = cur;
    cur *= ratio;
  }
  return c;
}

} // namespace hsie
