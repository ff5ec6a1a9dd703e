// SPDX-License-Identifier: Apache-2.0
#include "hsie/solver1d.hpp"

#include <algorithm>
#include <cmath>

#include "hsie/basis.hpp"
#include "hsie/quadrature.hpp"
#include "hsie/solvers.hpp"

namespace hsie {

ComplexVector Solution1D::hardy_transform(const HardyParams& p) const {
  ComplexVector u(p.n_modes + 2);
  u(0) = u0;
  u.tail(p.n_modes + 1) = hardy_coeffs;
  return (make_T(p.n_modes, -1) * u) / (Complex(0.0, 1.0) * p.kappa0);
}

namespace {

struct Grid1D {
  std::vector<double> cell_x; // cell boundaries, ascending, [0, a]
  std::vector<double> n_val;  // per cell
};

Grid1D build_grid(const Problem1D& prob) {
  if (prob.a <= 0.0) throw ConfigError("1d problem needs a > 0");
  if (prob.n_values.size() != prob.n_breaks.size() + 1)
    throw ConfigError("n profile needs one more value than breakpoints");
  std::vector<double> pieces{0.0};
  for (const double b : prob.n_breaks) {
    if (b <= pieces.back() || b >= prob.a)
      throw ConfigError("n breakpoints must be ascending inside (0, a)");
    pieces.push_back(b);
  }
  pieces.push_back(prob.a);

  Grid1D g;
  for (size_t k = 0; k + 1 < pieces.size(); ++k) {
    const double len = pieces[k + 1] - pieces[k];
    const int cells = std::max(
        1, static_cast<int>(std::lround(prob.n_cells * len / prob.a)));
    for (int c = 0; c < cells; ++c) {
      g.cell_x.push_back(pieces[k] + len * c / cells);
      g.n_val.push_back(prob.n_values[k]);
    }
  }
  g.cell_x.push_back(prob.a);
  return g;
}

} // namespace

System1D assemble_1d(const Problem1D& prob) {
  if (!(prob.kappa.real() > 0.0))
    throw ConfigError("Re(kappa) > 0 required");
  if (!((prob.kappa / prob.hardy.kappa0).real() > 0.0))
    throw ConfigError("pole condition requires Re(kappa/kappa0) > 0");

  const Grid1D grid = build_grid(prob);
  const int p = prob.fe_order;
  const int ncell = static_cast<int>(grid.n_val.size());
  const int n_int = ncell * p + 1;
  const int n_hardy = prob.hardy.n_modes + 1;

  const Lagrange1D basis(p);
  const auto rule = quad::gauss_legendre(p + 1); // exact through 2p+1
  const RealMatrix vals = basis.values_at(rule.x);
  const RealMatrix ders = basis.derivs_at(rule.x);
  const Eigen::Map<const RealVector> w(rule.w.data(),
                                       static_cast<int>(rule.w.size()));
  const RealMatrix mass_ref = vals.transpose() * w.asDiagonal() * vals;
  const RealMatrix stiff_ref = ders.transpose() * w.asDiagonal() * ders;

  System1D sys;
  sys.n_interior = n_int;
  const int n_total = n_int + n_hardy;
  std::vector<Triplet> ts, tm;
  for (int c = 0; c < ncell; ++c) {
    const double h = grid.cell_x[c + 1] - grid.cell_x[c];
    for (int i = 0; i <= p; ++i)
      for (int j = 0; j <= p; ++j) {
        const int gi = c * p + i, gj = c * p + j;
        ts.emplace_back(gi, gj, Complex(stiff_ref(i, j) / h, 0.0));
        tm.emplace_back(gi, gj, Complex(grid.n_val[c] * h * mass_ref(i, j), 0.0));
      }
  }

  // Exterior block: index 0 couples to the trace DOF at r = a.
  const DenseMatrix s_h = hsm_stiffness_1d(prob.hardy);
  const DenseMatrix m_h = hsm_mass_1d(prob.hardy);
  std::vector<int> ext(prob.hardy.n_modes + 2);
  ext[0] = n_int - 1;
  for (int i = 1; i < static_cast<int>(ext.size()); ++i)
    ext[i] = n_int + i - 1;
  for (size_t i = 0; i < ext.size(); ++i)
    for (size_t j = 0; j < ext.size(); ++j) {
      ts.emplace_back(ext[i], ext[j], s_h(i, j));
      tm.emplace_back(ext[i], ext[j], m_h(i, j));
    }

  sys.S.resize(n_total, n_total);
  sys.M.resize(n_total, n_total);
  sys.S.setFromTriplets(ts.begin(), ts.end());
  sys.M.setFromTriplets(tm.begin(), tm.end());
  sys.rhs = ComplexVector::Zero(n_total);
  sys.rhs(0) = -prob.g;

  sys.grid.resize(n_int);
  for (int c = 0; c < ncell; ++c) {
    const double h = grid.cell_x[c + 1] - grid.cell_x[c];
    for (int i = 0; i <= p; ++i)
      sys.grid[c * p + i] = grid.cell_x[c] + h * basis.nodes()[i];
  }
  return sys;
}

namespace {

Solution1D split_solution(const ComplexVector& x, const System1D& sys) {
  Solution1D sol;
  sol.interior = x.head(sys.n_interior);
  sol.u0 = x(sys.n_interior - 1);
  sol.hardy_coeffs = x.tail(x.size() - sys.n_interior);
  sol.grid = sys.grid;
  return sol;
}

// Drop a single row/column (homogeneous Dirichlet at r = 0).
ComplexSparseMatrix drop_first(const ComplexSparseMatrix& a) {
  std::vector<Triplet> t;
  for (int k = 0; k < a.outerSize(); ++k)
    for (ComplexSparseMatrix::InnerIterator it(a, k); it; ++it)
      if (it.row() > 0 && it.col() > 0)
        t.emplace_back(it.row() - 1, it.col() - 1, it.value());
  ComplexSparseMatrix out(a.rows() - 1, a.cols() - 1);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

} // namespace

Solution1D solve_scattering_1d(const Problem1D& prob) {
  const System1D sys = assemble_1d(prob);
  ComplexSparseMatrix a = sys.S - prob.kappa * prob.kappa * sys.M;
  ComplexVector x;
  try {
    SparseLuSolver lu(a);
    auto [sol, res] = lu.solve_refined(sys.rhs, 3);
    if (res > 1e-8)
      throw SingularSystem("kappa^2 is close to a discrete eigenvalue "
                           "(residual " + std::to_string(res) + ")");
    x = std::move(sol);
  } catch (const SingularMatrix& e) {
    throw SingularSystem(std::string("singular discrete system: ") + e.what());
  }
  return split_solution(x, sys);
}

std::vector<std::pair<Complex, Solution1D>>
solve_resonance_1d(const Problem1D& prob, Complex shift, int n_want,
                   double tol) {
  if (std::abs(prob.g) != 0.0)
    throw ConfigError("resonance problem needs homogeneous data (g = 0)");
  const System1D sys = assemble_1d(prob);
  const bool dirichlet = prob.bc0 == Problem1D::Bc0::dirichlet;
  const ComplexSparseMatrix s = dirichlet ? drop_first(sys.S) : sys.S;
  const ComplexSparseMatrix m = dirichlet ? drop_first(sys.M) : sys.M;

  const EigResult eig = shift_invert_eigs(s, m, shift, n_want, tol);
  std::vector<std::pair<Complex, Solution1D>> out;
  for (size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    ComplexVector x(sys.S.rows());
    if (dirichlet) {
      x(0) = 0.0;
      x.tail(x.size() - 1) = eig.eigenvectors[k];
    } else {
      x = eig.eigenvectors[k];
    }
    out.emplace_back(eig.eigenvalues[k], split_solution(x, sys));
  }
  return out;
}

} // namespace hsie
