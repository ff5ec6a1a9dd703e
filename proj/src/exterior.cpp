// SPDX-License-Identifier: Apache-2.0
#include <Eigen/Dense>

#include "hsie/exterior.hpp"

#include <cmath>

namespace hsie {

DenseMatrix kron_radial_major(const DenseMatrix& radial,
                              const DenseMatrix& trace) {
  const int nr = static_cast<int>(radial.rows());
  const int nt = static_cast<int>(trace.rows());
  DenseMatrix out(nr * nt, nr * nt);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nr; ++j)
      out.block(i * nt, j * nt, nt, nt) = radial(i, j) * trace;
  return out;
}

ExteriorElementMatrices strip_matrices(const EdgeMatrices& em,
                                       const HardyParams& p, double n_seg) {
  const DenseMatrix s_h = hsm_stiffness_1d(p);
  const DenseMatrix m_h = hsm_mass_1d(p);
  const DenseMatrix mass = em.mass.cast<Complex>();
  const DenseMatrix stiff = em.stiff.cast<Complex>();
  ExteriorElementMatrices r;
  r.n_radial = p.n_modes + 2;
  r.n_trace = static_cast<int>(em.mass.rows());
  r.S = kron_radial_major(s_h, mass) + kron_radial_major(m_h, stiff);
  r.M = n_seg * kron_radial_major(m_h, mass);
  return r;
}

ExteriorElementMatrices triangle_matrices(const Eigen::Vector2d& n1,
                                          const Eigen::Vector2d& n2,
                                          const HardyParams& p, double n_seg) {
  Eigen::Matrix2d jac;
  jac.col(0) = n1;
  jac.col(1) = n2;
  const double det = jac.determinant();
  if (std::abs(det) < 1e-12)
    throw DegenerateCorner("corner normals are collinear");
  Eigen::Matrix2d g = std::abs(det) * (jac.inverse() * jac.inverse().transpose());
  g(1, 0) = g(0, 1);

  const DenseMatrix s_h = hsm_stiffness_1d(p);
  const DenseMatrix m_h = hsm_mass_1d(p);
  const DenseMatrix t_p = make_T(p.n_modes, +1);
  const DenseMatrix t_m = make_T(p.n_modes, -1);
  const DenseMatrix c_dp = -2.0 * (t_p.transpose() * t_m); // test d, trial plain
  const DenseMatrix c_pd = c_dp.transpose();

  ExteriorElementMatrices r;
  r.corner = true;
  r.n_radial = p.n_modes + 2;
  r.S = g(0, 0) * kron_radial_major(s_h, m_h) +
        g(1, 1) * kron_radial_major(m_h, s_h) +
        g(0, 1) * kron_radial_major(c_dp, c_pd) +
        g(1, 0) * kron_radial_major(c_pd, c_dp);
  r.M = (n_seg * std::abs(det)) * kron_radial_major(m_h, m_h);
  return r;
}

ExteriorElementMatrices trapezoid_matrices(const TrapezoidParams& trap,
                                           const WeightedTraceMatrices& tm,
                                           const HardyParams& p, double n_seg) {
  const int n = p.n_modes;
  const Complex i_k0 = Complex(0.0, 1.0) * p.kappa0;
  const double apb = trap.a + trap.b;

  const DenseMatrix t_p = make_T(n, +1);
  const DenseMatrix t_m = make_T(n, -1);
  // D at the size of the T image space (one degree above the ansatz).
  DenseMatrix w = apb * make_D(n + 1, p.kappa0);
  w.diagonal().array() += trap.h_eta;
  const DenseMatrix w_inv = make_resolvent(n + 1, p.kappa0, trap.h_eta, apb);

  const DenseMatrix m_xi =
      symmetrized((-2.0 * trap.h_xi / i_k0) * (t_m.transpose() * w * t_m));
  const DenseMatrix l00 =
      symmetrized((-2.0 / (i_k0 * trap.h_xi)) * (t_m.transpose() * w_inv * t_m));
  const DenseMatrix l01 = -2.0 * (t_m.transpose() * t_p);
  const DenseMatrix l10 = l01.transpose();
  const DenseMatrix l11 =
      symmetrized((-2.0 * i_k0 / trap.h_xi) * (t_p.transpose() * w * t_p));

  const DenseMatrix b0 = tm.b0.cast<Complex>();
  const DenseMatrix b1 = tm.b1.cast<Complex>();
  const DenseMatrix b2 = tm.b2.cast<Complex>();

  ExteriorElementMatrices r;
  r.n_radial = n + 2;
  r.n_trace = static_cast<int>(tm.b0.rows());
  r.S = kron_radial_major(l00, b1) + kron_radial_major(l01, b2) +
        kron_radial_major(l10, b2.transpose()) + kron_radial_major(l11, b0);
  r.M = n_seg * kron_radial_major(m_xi, b0);
  return r;
}

} // namespace hsie
