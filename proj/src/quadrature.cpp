// SPDX-License-Identifier: Apache-2.0
#include "hsie/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace hsie::quad {

namespace {

// Legendre P_n and P_n' at x (recurrence on [-1,1]).
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

// Make the node set exactly symmetric about 1/2 (paired averaging).
void symmetrize(std::vector<double>& x, std::vector<double>* w) {
  const int n = static_cast<int>(x.size());
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double m = 0.5 * (x[i] + (1.0 - x[j]));
    x[i] = m;
    x[j] = 1.0 - m;
    if (w) {
      const double wm = 0.5 * ((*w)[i] + (*w)[j]);
      (*w)[i] = wm;
      (*w)[j] = wm;
    }
  }
  if (n % 2 == 1) {
    x[n / 2] = 0.5;
  }
}

} // namespace

Rule1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Tricomi initial guess, then Newton.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p, dp;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(n, x, p, dp);
    r.x[n - 1 - i] = 0.5 * (x + 1.0);
    r.w[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  std::sort(r.x.begin(), r.x.end());
  symmetrize(r.x, &r.w);
  return r;
}

Rule1D gauss_jacobi_1_0(int n) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi_1_0: n >= 1 required");
  // Golub-Welsch for weight (1-t) on [-1,1]: alpha=1, beta=0.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    J(k, k) = (k == 0) ? -1.0 / 3.0
                       : -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
    if (k + 1 < n) {
      const double kk = k + 1.0;
      const double b = kk * (kk + 1.0) / ((2.0 * kk + 1.0) * (2.0 * kk + 1.0));
      J(k, k + 1) = std::sqrt(b);
      J(k + 1, k) = J(k, k + 1);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  const double mu0 = 2.0; // total mass of (1-t) on [-1,1]
  for (int i = 0; i < n; ++i) {
    const double t = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    r.x[i] = 0.5 * (t + 1.0);
    r.w[i] = 0.25 * mu0 * v0 * v0; // maps weight onto (1-x) on [0,1]
  }
  return r;
}

std::vector<double> gauss_lobatto(int n) {
  if (n < 2) throw std::invalid_argument("gauss_lobatto: n >= 2 required");
  std::vector<double> x(n);
  x.front() = 0.0;
  x.back() = 1.0;
  const int m = n - 1; // interior nodes are roots of P_m'
  for (int i = 1; i < n - 1; ++i) {
    double t = -std::cos(M_PI * i / m);
    for (int it = 0; it < 100; ++it) {
      double p, dp;
      legendre(m, t, p, dp);
      // d2p from the Legendre ODE
      const double d2p = (2.0 * t * dp - m * (m + 1.0) * p) / (1.0 - t * t);
      const double dt = dp / d2p;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = 0.5 * (t + 1.0);
  }
  std::sort(x.begin(), x.end());
  symmetrize(x, nullptr);
  return x;
}

TriangleRule triangle_rule(int degree) {
  if (degree < 0) throw std::invalid_argument("triangle_rule: degree >= 0");
  // x = u(1-v), y = v with Jacobian (1-v): Legendre in u, Jacobi(1,0) in v.
  const int n = (degree + 2) / 2; // exact through 2n-1 >= degree
  const Rule1D gl = gauss_legendre(n);
  const Rule1D gj = gauss_jacobi_1_0(n);
  TriangleRule r;
  r.x.reserve(n * n);
  r.y.reserve(n * n);
  r.w.reserve(n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      r.x.push_back(gl.x[i] * (1.0 - gj.x[j]));
      r.y.push_back(gj.x[j]);
      r.w.push_back(gl.w[i] * gj.w[j]);
    }
  }
  return r;
}

} // namespace hsie::quad
