// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hsie/assembly.hpp"
#include "hsie/types.hpp"

namespace hsie {

// Guided mode of the symmetric three-layer slab (core |y| < a with physical
// index n2, cladding index n1 < n2), propagating as v(y) e^{i kx x}.
// Normalized to max |v| = 1; v and v' are continuous at the interfaces.
struct SlabMode {
  double kappa = 0.0;       // free-space wavenumber
  double half_width = 0.0;  // a
  double n1 = 0.0, n2 = 0.0;
  double kappa_x = 0.0;     // propagation constant, in (n1 k, n2 k)
  bool even = true;
  Complex c1, c2, c3, c4;   // layer coefficients as in the piecewise ansatz

  double gamma() const; // transverse wavenumber in the core
  double beta() const;  // decay rate in the cladding

  Complex value(double y) const;
  Complex deriv(double y) const;
  Complex field(double x, double y) const { return value(y) * phase(x); }
  Eigen::Vector2cd grad(double x, double y) const;

private:
  Complex phase(double x) const;
};

// Solves the dispersion relation (even: g tan(g a) = b, odd: -g cot(g a) = b)
// by bracketing bisection between the poles; branch_index counts the guided
// branches of the given parity from the fundamental upward.
SlabMode solve_slab_mode(double kappa, double a, double n1, double n2,
                         bool even, int branch_index);

int count_guided_modes(double kappa, double a, double n1, double n2, bool even);

// Samples the mode (centered at center_y, propagating in +x) into the trace
// basis of the given boundary edges: Dirichlet values and outward normal
// derivatives at the trace nodes. Values below 1e-12 * max|v| clamp to zero.
IncomingField eval_incoming(const SlabMode& mode, const FeSpace& space,
                            const std::vector<int>& edges, double center_y);

} // namespace hsie
