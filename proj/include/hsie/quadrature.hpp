// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace hsie::quad {

// Nodes/weights on [0,1].
struct Rule1D {
  std::vector<double> x, w;
};

// Gauss-Legendre with n points, exact for degree 2n-1.
Rule1D gauss_legendre(int n);

// Gauss-Jacobi with weight (1-x), n points, exact for degree 2n-1.
Rule1D gauss_jacobi_1_0(int n);

// n >= 2 Gauss-Lobatto nodes on [0,1] including the endpoints,
// symmetric about 1/2.
std::vector<double> gauss_lobatto(int n);

// Conical product rule on the reference triangle {x,y >= 0, x+y <= 1},
// exact for total degree <= degree.
struct TriangleRule {
  std::vector<double> x, y, w;
};
TriangleRule triangle_rule(int degree);

} // namespace hsie::quad
