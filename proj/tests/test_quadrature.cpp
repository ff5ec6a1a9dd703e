// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hsie/basis.hpp"
#include "hsie/quadrature.hpp"

using namespace hsie;

namespace {

double monomial_integral_1d(int k) { return 1.0 / (k + 1); }

// int_T x^a y^b over the unit triangle = a! b! / (a+b+2)!
double monomial_integral_tri(int a, int b) {
  double v = 1.0;
  for (int i = 1; i <= a; ++i) v *= i;
  for (int i = 1; i <= b; ++i) v *= i;
  for (int i = 1; i <= a + b + 2; ++i) v /= i;
  return v;
}

} // namespace

TEST_CASE("gauss-legendre integrates monomials exactly") {
  for (int n = 1; n <= 10; ++n) {
    const auto r = quad::gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], k);
      CHECK(s == doctest::Approx(monomial_integral_1d(k)).epsilon(1e-13));
    }
  }
}

TEST_CASE("gauss-jacobi (1-x) weight integrates monomials exactly") {
  for (int n = 1; n <= 10; ++n) {
    const auto r = quad::gauss_jacobi_1_0(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], k);
      // int_0^1 x^k (1-x) dx
      const double exact = 1.0 / (k + 1) - 1.0 / (k + 2);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("gauss-lobatto nodes are symmetric and include endpoints") {
  for (int n = 2; n <= 8; ++n) {
    const auto x = quad::gauss_lobatto(n);
    CHECK(x.front() == 0.0);
    CHECK(x.back() == 1.0);
    for (int i = 0; i < n; ++i)
      CHECK(x[i] + x[n - 1 - i] == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("triangle rule is exact for its stated degree") {
  for (int deg = 1; deg <= 16; ++deg) {
    const auto r = quad::triangle_rule(deg);
    for (int a = 0; a + 0 <= deg; ++a)
      for (int b = 0; a + b <= deg; ++b) {
        double s = 0.0;
        for (size_t q = 0; q < r.w.size(); ++q)
          s += r.w[q] * std::pow(r.x[q], a) * std::pow(r.y[q], b);
        CHECK(s == doctest::Approx(monomial_integral_tri(a, b)).epsilon(1e-12));
      }
  }
}

TEST_CASE("1d lagrange basis is nodal and reproduces polynomials") {
  for (int p = 1; p <= 7; ++p) {
    const Lagrange1D basis(p);
    const auto& nodes = basis.nodes();
    const RealMatrix v = basis.values_at(nodes);
    for (int i = 0; i <= p; ++i)
      for (int j = 0; j <= p; ++j)
        CHECK(v(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));

    // Interpolation of x^p is exact; check value and derivative off-node.
    const std::vector<double> pts{0.12345, 0.5, 0.876};
    const RealMatrix vals = basis.values_at(pts);
    const RealMatrix ders = basis.derivs_at(pts);
    for (size_t q = 0; q < pts.size(); ++q) {
      double s = 0.0, ds = 0.0;
      for (int j = 0; j <= p; ++j) {
        s += vals(q, j) * std::pow(nodes[j], p);
        ds += ders(q, j) * std::pow(nodes[j], p);
      }
      CHECK(s == doctest::Approx(std::pow(pts[q], p)).epsilon(1e-11));
      CHECK(ds == doctest::Approx(p * std::pow(pts[q], p - 1)).epsilon(1e-10));
    }
  }
}

TEST_CASE("triangle basis is nodal and reproduces polynomials") {
  for (int p = 1; p <= 7; ++p) {
    const TriangleBasis basis(p);
    std::vector<double> nx, ny;
    for (const auto& n : basis.nodes()) {
      nx.push_back(n.x());
      ny.push_back(n.y());
    }
    const RealMatrix v = basis.values_at(nx, ny);
    for (int i = 0; i < basis.size(); ++i)
      for (int j = 0; j < basis.size(); ++j)
        CHECK(v(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9));

    // Total-degree-p polynomial reproduction at interior points.
    const std::vector<double> px{0.21, 0.05, 0.33};
    const std::vector<double> py{0.17, 0.62, 0.41};
    const RealMatrix vals = basis.values_at(px, py);
    const auto [gx, gy] = basis.grads_at(px, py);
    const auto f = [p](double x, double y) { return std::pow(x + 0.7 * y, p); };
    const auto fx = [p](double x, double y) {
      return p * std::pow(x + 0.7 * y, p - 1);
    };
    for (size_t q = 0; q < px.size(); ++q) {
      double s = 0.0, sx = 0.0, sy = 0.0;
      for (int j = 0; j < basis.size(); ++j) {
        const auto& n = basis.nodes()[j];
        s += vals(q, j) * f(n.x(), n.y());
        sx += gx(q, j) * f(n.x(), n.y());
        sy += gy(q, j) * f(n.x(), n.y());
      }
      CHECK(s == doctest::Approx(f(px[q], py[q])).epsilon(1e-9));
      CHECK(sx == doctest::Approx(fx(px[q], py[q])).epsilon(1e-8));
      CHECK(sy == doctest::Approx(0.7 * fx(px[q], py[q])).epsilon(1e-8));
    }
  }
}
