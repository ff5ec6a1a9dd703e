// SPDX-License-Identifier: Apache-2.0
#include "hsie/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

namespace hsie {

struct SparseLuSolver::Impl {
  ComplexSparseMatrix a;
  Eigen::SparseLU<ComplexSparseMatrix, Eigen::COLAMDOrdering<int>> lu;
};

SparseLuSolver::SparseLuSolver(const ComplexSparseMatrix& a)
    : impl_(std::make_shared<Impl>()) {
  impl_->a = a;
  impl_->a.makeCompressed();
  impl_->lu.setPivotThreshold(1e-3);
  impl_->lu.analyzePattern(impl_->a);
  impl_->lu.factorize(impl_->a);
  if (impl_->lu.info() != Eigen::Success)
    throw SingularMatrix("sparse LU factorization failed: " +
                         impl_->lu.lastErrorMessage());
}

ComplexVector SparseLuSolver::solve(const ComplexVector& b) const {
  return impl_->lu.solve(b);
}

std::pair<ComplexVector, double>
SparseLuSolver::solve_refined(const ComplexVector& b, int max_refine) const {
  const double bnorm = b.norm();
  ComplexVector x = impl_->lu.solve(b);
  if (bnorm == 0.0) return {ComplexVector::Zero(b.size()), 0.0};
  double res = (b - impl_->a * x).norm() / bnorm;
  for (int it = 0; it < max_refine && res > 1e-14; ++it) {
    const ComplexVector r = b - impl_->a * x;
    const ComplexVector dx = impl_->lu.solve(r);
    const ComplexVector x_new = x + dx;
    const double res_new = (b - impl_->a * x_new).norm() / bnorm;
    if (res_new >= res) break;
    x = x_new;
    res = res_new;
  }
  return {x, res};
}

ComplexVector lu_solve(const ComplexSparseMatrix& a, const ComplexVector& b) {
  SparseLuSolver solver(a);
  auto [x, res] = solver.solve_refined(b, 3);
  if (res > 1e-10)
    throw ResidualTooLarge("direct solve residual " + std::to_string(res) +
                           " exceeds 1e-10");
  return x;
}

namespace {

// Portable deterministic start vector; entries in [-1,1] + i[-1,1].
ComplexVector seeded_start(Eigen::Index n) {
  std::uint64_t state = 0x48534945ull;
  const auto next = [&state]() {
    // xorshift64*
    state ^= state >> 12;
    state ^= state << 25;
    state ^= state >> 27;
    const std::uint64_t r = state * 0x2545F4914F6CDD1Dull;
    return 2.0 * ((r >> 11) * 0x1.0p-53) - 1.0;
  };
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = next();
    const double im = next();
    v(i) = Complex(re, im);
  }
  return v;
}

} // namespace

EigResult shift_invert_eigs(const ComplexSparseMatrix& s,
                            const ComplexSparseMatrix& m, Complex shift,
                            int n_want, double tol, int max_krylov) {
  const Eigen::Index n = s.rows();
  if (n_want < 1 || n_want > n)
    throw std::invalid_argument("shift_invert_eigs: bad n_want");

  ComplexSparseMatrix a_shift = s - shift * m;
  std::unique_ptr<SparseLuSolver> lu;
  try {
    lu = std::make_unique<SparseLuSolver>(a_shift);
  } catch (const SingularMatrix& e) {
    throw ShiftIsEigenvalue(std::string("shifted matrix is singular: ") +
                            e.what());
  }

  const int m_dim = static_cast<int>(
      std::min<Eigen::Index>(n, max_krylov > 0 ? max_krylov
                                               : std::max(60, 4 * n_want + 20)));
  const int max_restarts = 12;

  ComplexVector v0 = seeded_start(n);
  v0 /= v0.norm();

  EigResult result;
  std::vector<Complex> ritz_vals;
  Eigen::MatrixXcd v_basis(n, m_dim + 1);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m_dim + 1, m_dim);

  for (int restart = 0; restart <= max_restarts; ++restart) {
    result.restarts = restart;
    v_basis.col(0) = v0;
    h.setZero();
    int k = m_dim;
    bool breakdown = false;
    for (int j = 0; j < m_dim; ++j) {
      ComplexVector w = lu->solve(m * v_basis.col(j));
      // modified Gram-Schmidt with one reorthogonalization pass
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= j; ++i) {
          const Complex c = v_basis.col(i).adjoint() * w;
          w -= c * v_basis.col(i);
          h(i, j) += c;
        }
      const double wn = w.norm();
      h(j + 1, j) = wn;
      ++result.iterations;
      if (wn < 1e-14) {
        k = j + 1;
        breakdown = true;
        break;
      }
      v_basis.col(j + 1) = w / wn;
    }

    const Eigen::MatrixXcd h_sq = h.topLeftCorner(k, k);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h_sq);
    if (es.info() != Eigen::Success)
      throw ConvergenceFailure("Hessenberg eigendecomposition failed");

    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(es.eigenvalues()(a)) > std::abs(es.eigenvalues()(b));
    });
    const int n_take = std::min(n_want, k);

    result.eigenvalues.clear();
    result.eigenvectors.clear();
    result.residuals.clear();
    bool all_ok = true;
    for (int t = 0; t < n_take; ++t) {
      const int idx = order[t];
      const Complex theta = es.eigenvalues()(idx);
      if (std::abs(theta) == 0.0) {
        all_ok = false;
        continue;
      }
      ComplexVector x = v_basis.leftCols(k) * es.eigenvectors().col(idx);
      x /= x.norm();
      const Complex lambda = shift + 1.0 / theta;
      const double res = (s * x - lambda * (m * x)).norm();
      result.eigenvalues.push_back(lambda);
      result.eigenvectors.push_back(std::move(x));
      result.residuals.push_back(res);
      if (res > tol) all_ok = false;
    }
    if ((all_ok && static_cast<int>(result.eigenvalues.size()) == n_want) ||
        breakdown)
      break;
    if (restart == max_restarts)
      throw ConvergenceFailure(
          "shift-invert Arnoldi did not reach the residual tolerance");

    // Restart from the span of the wanted Ritz vectors.
    ComplexVector next = ComplexVector::Zero(n);
    for (const auto& x : result.eigenvectors) next += x;
    const double nn = next.norm();
    v0 = (nn > 0.0) ? ComplexVector(next / nn) : seeded_start(n).normalized();
  }

  if (static_cast<int>(result.eigenvalues.size()) > n_want) {
    result.eigenvalues.resize(n_want);
    result.eigenvectors.resize(n_want);
    result.residuals.resize(n_want);
  }
  return result;
}

} // namespace hsie
