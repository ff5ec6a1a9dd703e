// SPDX-License-Identifier: Apache-2.0
#include "hsie/slab.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace hsie {

double SlabMode::gamma() const {
  return std::sqrt(n2 * n2 * kappa * kappa - kappa_x * kappa_x);
}

double SlabMode::beta() const {
  return std::sqrt(kappa_x * kappa_x - n1 * n1 * kappa * kappa);
}

Complex SlabMode::phase(double x) const {
  return std::exp(Complex(0.0, kappa_x * x));
}

Complex SlabMode::value(double y) const {
  const double a = half_width;
  if (y <= -a) return c1 * std::exp(beta() * (y + a));
  if (y >= a) return c4 * std::exp(-beta() * (y - a));
  const Complex ig(0.0, gamma());
  return c2 * std::exp(-ig * y) + c3 * std::exp(ig * y);
}

Complex SlabMode::deriv(double y) const {
  const double a = half_width;
  if (y <= -a) return beta() * c1 * std::exp(beta() * (y + a));
  if (y >= a) return -beta() * c4 * std::exp(-beta() * (y - a));
  const Complex ig(0.0, gamma());
  return -ig * c2 * std::exp(-ig * y) + ig * c3 * std::exp(ig * y);
}

Eigen::Vector2cd SlabMode::grad(double x, double y) const {
  const Complex ph = phase(x);
  return {Complex(0.0, kappa_x) * value(y) * ph, deriv(y) * ph};
}

namespace {

// Dispersion in t = gamma*a on (0, V), V = kappa*a*sqrt(n2^2-n1^2):
//   even: t tan t - sqrt(V^2-t^2),    odd: -t cot t - sqrt(V^2-t^2)
// with poles at t = pi/2 + k pi (even) resp. t = k pi (odd). Each
// pole-to-pole subinterval carries at most one root and the function is
// increasing there, so bisection on a sign change is exact.
struct Dispersion {
  double v;
  bool even;
  double operator()(double t) const {
    const double tail = std::sqrt(std::max(0.0, v * v - t * t));
    return (even ? t * std::tan(t) : -t / std::tan(t)) - tail;
  }
  double pole(int k) const { return even ? (0.5 + k) * M_PI : k * M_PI; }
};

struct Bracket {
  double lo, hi;
};

std::vector<Bracket> guided_brackets(const Dispersion& f) {
  std::vector<Bracket> out;
  const double eps = 1e-9 * std::max(1.0, f.v);
  int k = 0;
  double lo = f.even ? 0.0 : 0.0;
  while (lo < f.v) {
    const double hi = std::min(f.pole(k), f.v);
    const double a = lo + eps, b = hi - eps;
    if (b > a && f(a) < 0.0 && f(b) > 0.0) out.push_back({a, b});
    lo = f.pole(k);
    ++k;
  }
  return out;
}

} // namespace

int count_guided_modes(double kappa, double a, double n1, double n2,
                       bool even) {
  const double v = kappa * a * std::sqrt(n2 * n2 - n1 * n1);
  return static_cast<int>(guided_brackets({v, even}).size());
}

SlabMode solve_slab_mode(double kappa, double a, double n1, double n2,
                         bool even, int branch_index) {
  if (!(n2 > n1 && n1 > 0.0))
    throw ConfigError("slab mode needs n2 > n1 > 0");
  if (!(kappa > 0.0 && a > 0.0))
    throw ConfigError("slab mode needs kappa > 0 and a > 0");
  const double v = kappa * a * std::sqrt(n2 * n2 - n1 * n1);
  const Dispersion f{v, even};
  const auto brackets = guided_brackets(f);
  if (brackets.empty())
    throw NoGuidedMode("no guided mode of the requested parity exists");
  if (branch_index < 0 || branch_index >= static_cast<int>(brackets.size()))
    throw BranchOutOfRange("only " + std::to_string(brackets.size()) +
                           " guided branch(es) exist");

  double lo = brackets[branch_index].lo, hi = brackets[branch_index].hi;
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  const double gam = t / a;

  SlabMode mode;
  mode.kappa = kappa;
  mode.half_width = a;
  mode.n1 = n1;
  mode.n2 = n2;
  mode.even = even;
  mode.kappa_x = std::sqrt(n2 * n2 * kappa * kappa - gam * gam);

  // Core profile cos(gam y) resp. sin(gam y); cladding continues the core
  // boundary value with decay rate beta. Normalize to max |v| = 1.
  const double norm =
      even ? 1.0 : ((t >= 0.5 * M_PI) ? 1.0 : std::sin(t));
  if (even) {
    mode.c2 = Complex(0.5, 0.0) / norm;
    mode.c3 = Complex(0.5, 0.0) / norm;
    mode.c1 = std::cos(t) / norm;
    mode.c4 = std::cos(t) / norm;
  } else {
    mode.c2 = Complex(0.0, 0.5) / norm;  // -1/(2i)
    mode.c3 = Complex(0.0, -0.5) / norm; // 1/(2i)
    mode.c1 = -std::sin(t) / norm;
    mode.c4 = std::sin(t) / norm;
  }
  return mode;
}

IncomingField eval_incoming(const SlabMode& mode, const FeSpace& space,
                            const std::vector<int>& edges, double center_y) {
  IncomingField inc;
  const auto& mesh = space.mesh();
  for (const int be : edges) {
    const auto& e = mesh.boundary_edges[be];
    const Eigen::Vector2d d = mesh.vertices[e.v[1]] - mesh.vertices[e.v[0]];
    const Eigen::Vector2d nu = Eigen::Vector2d(d.y(), -d.x()).normalized();
    const auto nodes = space.trace_nodes(be);
    IncomingField::EdgeData data;
    data.edge = be;
    data.dirichlet.resize(nodes.size());
    data.neumann.resize(nodes.size());
    for (size_t m = 0; m < nodes.size(); ++m) {
      const double x = nodes[m].x(), y = nodes[m].y() - center_y;
      if (std::abs(mode.value(y)) < 1e-12) {
        data.dirichlet(m) = 0.0;
        data.neumann(m) = 0.0;
        continue;
      }
      data.dirichlet(m) = mode.field(x, y);
      const Eigen::Vector2cd g = mode.grad(x, y);
      data.neumann(m) = g.x() * nu.x() + g.y() * nu.y();
    }
    inc.edges.push_back(std::move(data));
  }
  return inc;
}

} // namespace hsie
