// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hsie/hardy.hpp"

using namespace hsie;
using doctest::Approx;

namespace {

double max_abs(const DenseMatrix& a) { return a.cwiseAbs().maxCoeff(); }

double rel_asymmetry(const DenseMatrix& a) {
  return max_abs(a - a.transpose().eval()) / max_abs(a);
}

} // namespace

TEST_CASE("make_T matches the bidiagonal pattern") {
  const DenseMatrix tm = make_T(1, -1);
  DenseMatrix expect(3, 3);
  expect << 1, -1, 0, 0, 1, -1, 0, 0, 1;
  expect *= 0.5;
  CHECK(max_abs(tm - expect) == 0.0);

  const DenseMatrix tp = make_T(0, +1);
  DenseMatrix e2(2, 2);
  e2 << 1, 1, 0, 1;
  e2 *= 0.5;
  CHECK(max_abs(tp - e2) == 0.0);

  // Pure boundary decomposition: T_-(u0, 0) = u0/2.
  ComplexVector u = ComplexVector::Zero(2);
  u(0) = Complex(3.0, -1.0);
  const ComplexVector out = make_T(0, -1) * u;
  CHECK(out(0) == Complex(1.5, -0.5));
  CHECK(out(1) == Complex(0.0, 0.0));
}

TEST_CASE("T_+ - T_- is the unit superdiagonal") {
  for (const int n : {0, 3, 17, 50}) {
    const DenseMatrix d = make_T(n, +1) - make_T(n, -1);
    for (int i = 0; i < d.rows(); ++i)
      for (int j = 0; j < d.cols(); ++j)
        CHECK(d(i, j) == Complex(j == i + 1 ? 1.0 : 0.0, 0.0));
  }
}

TEST_CASE("make_D matches the exact tridiagonal form") {
  const Complex k0(3.0, 1.5);
  const DenseMatrix d = make_D(2, k0);
  const Complex s = 1.0 / (Complex(0, 2) * k0);
  DenseMatrix expect(3, 3);
  expect << -1, 1, 0, 1, -3, 2, 0, 2, -5;
  expect *= s;
  CHECK(max_abs(d - expect) == 0.0);

  // Bitwise symmetric, tridiagonal.
  for (const int n : {0, 5, 40}) {
    const DenseMatrix dd = make_D(n, k0);
    CHECK(max_abs(dd - dd.transpose().eval()) == 0.0);
    for (int i = 0; i < dd.rows(); ++i)
      for (int j = 0; j < dd.cols(); ++j)
        if (std::abs(i - j) > 1) CHECK(dd(i, j) == Complex(0, 0));
  }

  // Action on the constant monomial: D z^0 = (-z^0 + z^1)/(2 i k0) truncated.
  const DenseMatrix d5 = make_D(5, k0);
  ComplexVector e0 = ComplexVector::Zero(6);
  e0(0) = 1.0;
  const ComplexVector col = d5 * e0;
  CHECK(col(0) == -s);
  CHECK(col(1) == s);
  for (int i = 2; i < 6; ++i) CHECK(col(i) == Complex(0, 0));
}

TEST_CASE("resolvent inverts alpha I + beta D") {
  const Complex k0(8.0, 5.0);
  SUBCASE("beta = 0 gives I / alpha") {
    const Complex alpha(2.0, -1.0);
    const DenseMatrix r = make_resolvent(4, k0, alpha, 0.0);
    const DenseMatrix expect = DenseMatrix::Identity(5, 5) / alpha;
    CHECK(max_abs(r - expect) < 1e-15);
  }
  SUBCASE("multiplying back yields the identity") {
    const int n = 20;
    const DenseMatrix r = make_resolvent(n, k0, Complex(1.0, 0.0), 0.3);
    DenseMatrix a = 0.3 * make_D(n, k0);
    a.diagonal().array() += Complex(1.0, 0.0);
    const DenseMatrix prod = r * a;
    CHECK(max_abs(prod - DenseMatrix::Identity(n + 1, n + 1)) < 1e-12);
    CHECK(rel_asymmetry(r) < 1e-13);
  }
}

TEST_CASE("hsm matrices match the closed forms at N = 0") {
  const Complex k0(2.0, 0.7);
  const HardyParams p(k0, 0);
  const DenseMatrix s = hsm_stiffness_1d(p);
  const DenseMatrix m = hsm_mass_1d(p);
  DenseMatrix s_expect(2, 2), m_expect(2, 2);
  s_expect << 1, 1, 1, 2;
  s_expect *= -Complex(0, 1) * k0 / 2.0;
  m_expect << 1, -1, -1, 2;
  m_expect *= Complex(0, 1) / (2.0 * k0);
  CHECK(max_abs(s - s_expect) < 1e-16);
  CHECK(max_abs(m - m_expect) < 1e-16);
  CHECK(max_abs(s - s.transpose().eval()) == 0.0);
  CHECK(max_abs(m - m.transpose().eval()) == 0.0);
}

TEST_CASE("exterior block is the exact Robin term at kappa = kappa0, N = 0") {
  const Complex k0(2.0, 0.0);
  const HardyParams p(k0, 0);
  const DenseMatrix a = hsm_stiffness_1d(p) - k0 * k0 * hsm_mass_1d(p);
  // Coupling to the Hardy DOF vanishes and the trace entry is -i kappa.
  CHECK(std::abs(a(0, 1)) < 1e-15);
  CHECK(std::abs(a(1, 0)) < 1e-15);
  CHECK(a(0, 0).real() == Approx(0.0).epsilon(1e-15));
  CHECK(a(0, 0).imag() == Approx(-2.0).epsilon(1e-15));
  // Schur complement onto the trace DOF equals -i kappa exactly.
  const Complex schur = a(0, 0) - a(0, 1) * a(1, 0) / a(1, 1);
  CHECK(std::abs(schur - Complex(0.0, -2.0)) < 1e-15);
}

TEST_CASE("reference coefficients decay geometrically") {
  SUBCASE("kappa = kappa0 leaves a single term") {
    const HardyParams p(Complex(3.0, 0.0), 6);
    const ComplexVector c =
        reference_hardy_coefficients(Complex(3.0, 0.0), p, Complex(1.0, 0.0));
    CHECK(c(0) == Complex(1.0, 0.0) / Complex(0.0, 6.0));
    for (int j = 1; j < c.size(); ++j) CHECK(std::abs(c(j)) == 0.0);
  }
  SUBCASE("kappa 2, kappa0 4 has ratio -1/3 exactly") {
    const HardyParams p(Complex(4.0, 0.0), 10);
    const ComplexVector c =
        reference_hardy_coefficients(Complex(2.0, 0.0), p, Complex(1.0, 1.0));
    for (int j = 0; j + 1 < c.size(); ++j)
      CHECK(std::abs(c(j + 1) / c(j) + 1.0 / 3.0) < 1e-15);
  }
  SUBCASE("ratio modulus below one for admissible parameters") {
    const Complex k0s[] = {{1.0, 0.0}, {4.0, 2.0}, {0.5, -0.2}, {8.0, 5.0}};
    const Complex ks[] = {{2.0, 0.0}, {1.0, 1.0}, {3.0, -0.4}, {6.0, 0.0}};
    for (const Complex k0 : k0s)
      for (const Complex k : ks) {
        if (!((k / k0).real() > 0.0)) continue;
        const HardyParams p(k0, 3);
        const ComplexVector c = reference_hardy_coefficients(k, p, 1.0);
        CHECK(std::abs(c(1) / c(0)) < 1.0);
        // Entrywise geometric decay.
        for (int j = 0; j + 2 < c.size(); ++j)
          CHECK(std::abs(c(j + 2) / c(j + 1) - c(j + 1) / c(j)) < 1e-14);
      }
  }
}

// For f(r) = e^{i kappa r} with Im kappa > 0:
// int_0^inf f f dr = -1/(2 i kappa) equals -2 i kappa0 <MLf, MLf> with the
// bilinear (unconjugated) pairing, evaluated from the geometric series.
TEST_CASE("basic identity surrogate for the Moebius-Laplace transform") {
  const Complex kappa(2.0, 1.0);
  const Complex k0(2.0, 0.0);
  const HardyParams p(k0, 60);
  const ComplexVector c = reference_hardy_coefficients(kappa, p, 1.0);
  Complex pairing = 0.0;
  for (int j = 0; j < c.size(); ++j) pairing += c(j) * c(j);
  const Complex rhs = -2.0 * Complex(0.0, 1.0) * k0 * pairing;
  const Complex lhs = -1.0 / (2.0 * Complex(0.0, 1.0) * kappa);
  CHECK(std::abs(rhs - lhs) / std::abs(lhs) < 1e-10);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(HardyParams(Complex(-1.0, 2.0), 3), Error);
  CHECK_THROWS_AS(HardyParams(Complex(1.0, 0.0), -1), Error);
  CHECK_THROWS_AS(make_resolvent(3, Complex(1.0, 0.0), Complex(0.0, 0.0), 0.0),
                  SingularResolvent);
}
