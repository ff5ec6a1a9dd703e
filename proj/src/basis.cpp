// SPDX-License-Identifier: Apache-2.0
#include "hsie/basis.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "hsie/quadrature.hpp"

namespace hsie {

namespace {

// Classical Jacobi polynomial P_n^(alpha,beta) and derivative at x in [-1,1].
void jacobi(int n, double alpha, double beta, double x, double& p, double& dp) {
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  double p0 = 1.0;
  double p1 = 0.5 * ((alpha + beta + 2.0) * x + alpha - beta);
  for (int k = 2; k <= n; ++k) {
    const double a = 2.0 * k * (k + alpha + beta) * (2.0 * k + alpha + beta - 2.0);
    const double b = (2.0 * k + alpha + beta - 1.0) *
                     ((2.0 * k + alpha + beta) * (2.0 * k + alpha + beta - 2.0) * x +
                      alpha * alpha - beta * beta);
    const double c =
        2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + alpha + beta);
    const double p2 = (b * p1 - c * p0) / a;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  // P_n' = (n+alpha+beta+1)/2 * P_{n-1}^(alpha+1,beta+1)
  double q, dq;
  if (n == 1) {
    q = 1.0;
  } else {
    jacobi(n - 1, alpha + 1.0, beta + 1.0, x, q, dq);
  }
  dp = 0.5 * (n + alpha + beta + 1.0) * q;
}

// L2(-1,1) norm^2 of P_n^(alpha,beta) with weight (1-x)^alpha (1+x)^beta.
double jacobi_norm2(int n, double alpha, double beta) {
  const double num = std::lgamma(n + alpha + 1.0) + std::lgamma(n + beta + 1.0);
  const double den = std::lgamma(n + alpha + beta + 1.0) + std::lgamma(n + 1.0);
  return std::pow(2.0, alpha + beta + 1.0) / (2.0 * n + alpha + beta + 1.0) *
         std::exp(num - den);
}

// Shifted Legendre on [0,1], normalized to unit L2(0,1) norm.
void legendre01(int n, double x, double& p, double& dp) {
  jacobi(n, 0.0, 0.0, 2.0 * x - 1.0, p, dp);
  const double s = std::sqrt(2.0 * n + 1.0);
  p *= s;
  dp *= 2.0 * s;
}

} // namespace

Lagrange1D::Lagrange1D(int order) : order_(order) {
  if (order < 1 || order > 12)
    throw std::invalid_argument("Lagrange1D: unsupported order");
  nodes_ = quad::gauss_lobatto(order + 1);
  const int n = order + 1;
  RealMatrix vand(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double p, dp;
      legendre01(k, nodes_[i], p, dp);
      vand(i, k) = p;
    }
  coef_ = vand.inverse();
}

RealMatrix Lagrange1D::values_at(const std::vector<double>& pts) const {
  const int n = order_ + 1;
  RealMatrix modal(static_cast<int>(pts.size()), n);
  for (int q = 0; q < static_cast<int>(pts.size()); ++q)
    for (int k = 0; k < n; ++k) {
      double p, dp;
      legendre01(k, pts[q], p, dp);
      modal(q, k) = p;
    }
  return modal * coef_;
}

RealMatrix Lagrange1D::derivs_at(const std::vector<double>& pts) const {
  const int n = order_ + 1;
  RealMatrix modal(static_cast<int>(pts.size()), n);
  for (int q = 0; q < static_cast<int>(pts.size()); ++q)
    for (int k = 0; k < n; ++k) {
      double p, dp;
      legendre01(k, pts[q], p, dp);
      modal(q, k) = dp;
    }
  return modal * coef_;
}

namespace {

// Orthonormal Dubiner mode (i,j) and gradient on the reference triangle.
// Collapsed coordinates eta1 = 2x/(1-y) - 1, eta2 = 2y - 1; the (1-eta2)^i
// factor keeps everything polynomial.
struct DubinerEval {
  double v, vx, vy;
};

DubinerEval dubiner(int i, int j, double x, double y) {
  const double eta2 = 2.0 * y - 1.0;
  const double hy = 0.5 * (1.0 - eta2); // = 1-y
  double eta1;
  if (std::abs(hy) < 1e-13) {
    eta1 = -1.0; // apex; the (1-eta2)^i factor removes the ambiguity
  } else {
    eta1 = x / hy * 2.0 - 1.0;
  }
  double f, df, g, dg;
  jacobi(i, 0.0, 0.0, eta1, f, df);
  jacobi(j, 2.0 * i + 1.0, 0.0, eta2, g, dg);
  const double pw = (i == 0) ? 1.0 : std::pow(hy, i);
  const double pwm = (i == 0) ? 0.0 : ((i == 1) ? 1.0 : std::pow(hy, i - 1));

  DubinerEval e;
  e.v = f * pw * g;
  e.vx = 2.0 * df * pwm * g;
  e.vy = df * (eta1 + 1.0) * pwm * g + 2.0 * f * (pw * dg - 0.5 * i * pwm * g);

  // Orthonormal scaling on the unit triangle (area 1/2).
  const double n2 =
      jacobi_norm2(i, 0.0, 0.0) * jacobi_norm2(j, 2.0 * i + 1.0, 0.0) *
      std::pow(2.0, -2.0 * i) / 8.0;
  const double s = 1.0 / std::sqrt(n2);
  e.v *= s;
  e.vx *= s;
  e.vy *= s;
  return e;
}

} // namespace

TriangleBasis::TriangleBasis(int order) : order_(order) {
  if (order < 1 || order > 7)
    throw std::invalid_argument("TriangleBasis: supported orders are 1..7");
  const int p = order;
  const auto gl = quad::gauss_lobatto(p + 1);

  const Eigen::Vector2d verts[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  for (int v = 0; v < 3; ++v) {
    nodes_.push_back(verts[v]);
    roles_.push_back({NodeRole::Vertex, v, 0});
  }
  const int edge_v[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (int e = 0; e < 3; ++e) {
    for (int k = 1; k < p; ++k) {
      const double t = gl[k];
      nodes_.push_back((1.0 - t) * verts[edge_v[e][0]] + t * verts[edge_v[e][1]]);
      roles_.push_back({NodeRole::Edge, e, k - 1});
    }
  }
  int counter = 0;
  for (int i = 1; i <= p - 1; ++i)
    for (int j = 1; i + j <= p - 1; ++j) {
      nodes_.push_back(Eigen::Vector2d(double(i) / p, double(j) / p));
      roles_.push_back({NodeRole::Interior, 0, counter++});
    }

  const int n = size();
  RealMatrix vand(n, n);
  for (int a = 0; a < n; ++a) {
    int m = 0;
    for (int i = 0; i <= p; ++i)
      for (int j = 0; i + j <= p; ++j)
        vand(a, m++) = dubiner(i, j, nodes_[a].x(), nodes_[a].y()).v;
  }
  vand_inv_ = vand.inverse();
}

RealMatrix TriangleBasis::values_at(const std::vector<double>& x,
                                    const std::vector<double>& y) const {
  const int n = size();
  const int nq = static_cast<int>(x.size());
  RealMatrix modal(nq, n);
  for (int q = 0; q < nq; ++q) {
    int m = 0;
    for (int i = 0; i <= order_; ++i)
      for (int j = 0; i + j <= order_; ++j)
        modal(q, m++) = dubiner(i, j, x[q], y[q]).v;
  }
  return modal * vand_inv_;
}

std::pair<RealMatrix, RealMatrix>
TriangleBasis::grads_at(const std::vector<double>& x,
                        const std::vector<double>& y) const {
  const int n = size();
  const int nq = static_cast<int>(x.size());
  RealMatrix mx(nq, n), my(nq, n);
  for (int q = 0; q < nq; ++q) {
    int m = 0;
    for (int i = 0; i <= order_; ++i)
      for (int j = 0; i + j <= order_; ++j) {
        const DubinerEval e = dubiner(i, j, x[q], y[q]);
        mx(q, m) = e.vx;
        my(q, m) = e.vy;
        ++m;
      }
  }
  return {mx * vand_inv_, my * vand_inv_};
}

} // namespace hsie
