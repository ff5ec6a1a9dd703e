// SPDX-License-Identifier: Apache-2.0
#include <Eigen/Dense>

#include "hsie/fe_space.hpp"

#include <map>

#include "hsie/quadrature.hpp"

namespace hsie {

FeSpace::FeSpace(const Mesh2D& mesh, int order)
    : mesh_(&mesh), order_(order), basis_(order) {
  const int p = order;
  const int nv = static_cast<int>(mesh.vertices.size());

  std::map<std::pair<int, int>, int> edge_index;
  for (const auto& t : mesh.triangles)
    for (int k = 0; k < 3; ++k) {
      const int a = std::min(t.v[k], t.v[(k + 1) % 3]);
      const int b = std::max(t.v[k], t.v[(k + 1) % 3]);
      edge_index.emplace(std::make_pair(a, b),
                         static_cast<int>(edge_index.size()));
    }
  // std::map iteration gave insertion-independent ids only by key order;
  // renumber by sorted key for a deterministic layout.
  {
    int id = 0;
    for (auto& [key, val] : edge_index) val = id++;
  }
  const int nedges = static_cast<int>(edge_index.size());
  const int n_bubble = (p - 1) * (p - 2) / 2;
  const int edge_base = nv;
  const int bubble_base = nv + nedges * (p - 1);
  dof_count_ = bubble_base + n_bubble * static_cast<int>(mesh.triangles.size());

  const int local_edges[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  cell_dofs_.resize(mesh.triangles.size());
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const auto& tri = mesh.triangles[t];
    auto& dofs = cell_dofs_[t];
    dofs.resize(basis_.size());
    for (int a = 0; a < basis_.size(); ++a) {
      const auto& role = basis_.roles()[a];
      switch (role.kind) {
      case TriangleBasis::NodeRole::Vertex:
        dofs[a] = tri.v[role.entity];
        break;
      case TriangleBasis::NodeRole::Edge: {
        const int va = tri.v[local_edges[role.entity][0]];
        const int vb = tri.v[local_edges[role.entity][1]];
        const int ei = edge_index.at({std::min(va, vb), std::max(va, vb)});
        const int k = (va < vb) ? role.index : (p - 2 - role.index);
        dofs[a] = edge_base + ei * (p - 1) + k;
        break;
      }
      case TriangleBasis::NodeRole::Interior:
        dofs[a] = bubble_base + t * n_bubble + role.index;
        break;
      }
    }
  }

  boundary_trace_.resize(mesh.boundary_edges.size());
  for (int be = 0; be < static_cast<int>(mesh.boundary_edges.size()); ++be) {
    const auto& e = mesh.boundary_edges[be];
    auto& tr = boundary_trace_[be];
    tr.resize(p + 1);
    tr.front() = e.v[0];
    tr.back() = e.v[1];
    if (p > 1) {
      const int ei = edge_index.at(
          {std::min(e.v[0], e.v[1]), std::max(e.v[0], e.v[1])});
      for (int k = 1; k < p; ++k) {
        const int idx = (e.v[0] < e.v[1]) ? (k - 1) : (p - 1 - k);
        tr[k] = edge_base + ei * (p - 1) + idx;
      }
    }
  }

  is_trace_.assign(dof_count_, false);
  for (const int be : mesh.outer_loop)
    for (const int d : boundary_trace_[be]) is_trace_[d] = true;
  n_trace_ = static_cast<int>(std::count(is_trace_.begin(), is_trace_.end(), true));
}

std::vector<Eigen::Vector2d> FeSpace::trace_nodes(int boundary_edge) const {
  const auto& e = mesh_->boundary_edges[boundary_edge];
  const Eigen::Vector2d a = mesh_->vertices[e.v[0]];
  const Eigen::Vector2d b = mesh_->vertices[e.v[1]];
  const auto gl = quad::gauss_lobatto(order_ + 1);
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(gl.size());
  for (const double t : gl) pts.push_back((1.0 - t) * a + t * b);
  return pts;
}

namespace {

RealMatrix exact_symmetrized(const RealMatrix& a) {
  RealMatrix s = a;
  for (int i = 0; i < s.rows(); ++i)
    for (int j = i + 1; j < s.cols(); ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  return s;
}

} // namespace

void assemble_interior(const FeSpace& space, ComplexSparseMatrix& stiffness,
                       ComplexSparseMatrix& mass) {
  const auto& mesh = space.mesh();
  const auto& basis = space.basis();
  const int p = space.order();
  const auto rule = quad::triangle_rule(2 * p);
  const int nq = static_cast<int>(rule.w.size());
  const int nd = basis.size();

  const RealMatrix vals = basis.values_at(rule.x, rule.y);
  const auto [gx, gy] = basis.grads_at(rule.x, rule.y);
  const Eigen::Map<const RealVector> w(rule.w.data(), nq);

  // Reference mass is shared by all affine cells.
  const RealMatrix mass_ref =
      exact_symmetrized(vals.transpose() * w.asDiagonal() * vals);

  std::vector<Triplet> ts, tm;
  ts.reserve(mesh.triangles.size() * nd * nd);
  tm.reserve(mesh.triangles.size() * nd * nd);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const auto& tri = mesh.triangles[t];
    const Eigen::Vector2d p0 = mesh.vertices[tri.v[0]];
    Eigen::Matrix2d jac;
    jac.col(0) = mesh.vertices[tri.v[1]] - p0;
    jac.col(1) = mesh.vertices[tri.v[2]] - p0;
    const double det = jac.determinant();
    const Eigen::Matrix2d binvt = jac.inverse().transpose();
    const RealMatrix px = binvt(0, 0) * gx + binvt(0, 1) * gy;
    const RealMatrix py = binvt(1, 0) * gx + binvt(1, 1) * gy;
    const RealMatrix s_loc = exact_symmetrized(
        det * (px.transpose() * w.asDiagonal() * px +
               py.transpose() * w.asDiagonal() * py));
    const double nval = mesh.n_of(tri.material);
    const auto& dofs = space.cell_dofs(t);
    for (int i = 0; i < nd; ++i)
      for (int j = 0; j < nd; ++j) {
        ts.emplace_back(dofs[i], dofs[j], Complex(s_loc(i, j), 0.0));
        tm.emplace_back(dofs[i], dofs[j],
                        Complex(nval * det * mass_ref(i, j), 0.0));
      }
  }
  stiffness.resize(space.dof_count(), space.dof_count());
  mass.resize(space.dof_count(), space.dof_count());
  stiffness.setFromTriplets(ts.begin(), ts.end());
  mass.setFromTriplets(tm.begin(), tm.end());
}

EdgeMatrices edge_matrices(int order, double length) {
  const Lagrange1D basis(order);
  const auto rule = quad::gauss_legendre(order + 2);
  const RealMatrix vals = basis.values_at(rule.x);
  const RealMatrix ders = basis.derivs_at(rule.x);
  const Eigen::Map<const RealVector> w(rule.w.data(),
                                       static_cast<int>(rule.w.size()));
  EdgeMatrices em;
  em.mass =
      length * exact_symmetrized(vals.transpose() * w.asDiagonal() * vals);
  em.stiff = exact_symmetrized(ders.transpose() * w.asDiagonal() * ders) /
             length;
  return em;
}

WeightedTraceMatrices weighted_trace_matrices(int order,
                                              const TrapezoidParams& trap) {
  const Lagrange1D basis(order);
  const auto rule = quad::gauss_legendre(order + 2);
  const int nq = static_cast<int>(rule.w.size());
  const RealMatrix vals = basis.values_at(rule.x);
  const RealMatrix ders = basis.derivs_at(rule.x);
  RealVector w(nq), w1(nq), w2(nq);
  for (int q = 0; q < nq; ++q) {
    const double lin = trap.b - (trap.a + trap.b) * rule.x[q];
    w(q) = rule.w[q];
    w1(q) = rule.w[q] * (trap.h_xi * trap.h_xi + lin * lin);
    w2(q) = rule.w[q] * lin / trap.h_xi;
  }
  WeightedTraceMatrices tm;
  tm.b0 = exact_symmetrized(vals.transpose() * w.asDiagonal() * vals);
  tm.b1 = exact_symmetrized(ders.transpose() * w1.asDiagonal() * ders);
  tm.b2 = ders.transpose() * w2.asDiagonal() * vals;
  return tm;
}

double h1_relative_error(const FeSpace& space, const ComplexVector& coeffs,
                         const ReferenceField& ref) {
  const auto& mesh = space.mesh();
  const auto& basis = space.basis();
  const auto rule = quad::triangle_rule(2 * space.order() + 4);
  const int nq = static_cast<int>(rule.w.size());
  const RealMatrix vals = basis.values_at(rule.x, rule.y);
  const auto [gx, gy] = basis.grads_at(rule.x, rule.y);

  double err2 = 0.0, ref2 = 0.0;
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const auto& tri = mesh.triangles[t];
    const Eigen::Vector2d p0 = mesh.vertices[tri.v[0]];
    Eigen::Matrix2d jac;
    jac.col(0) = mesh.vertices[tri.v[1]] - p0;
    jac.col(1) = mesh.vertices[tri.v[2]] - p0;
    const double det = jac.determinant();
    const Eigen::Matrix2d binvt = jac.inverse().transpose();
    const auto& dofs = space.cell_dofs(t);
    ComplexVector local(dofs.size());
    for (size_t i = 0; i < dofs.size(); ++i) local(i) = coeffs(dofs[i]);
    for (int q = 0; q < nq; ++q) {
      const Eigen::Vector2d xq =
          p0 + jac * Eigen::Vector2d(rule.x[q], rule.y[q]);
      Complex uh = 0.0, ux = 0.0, uy = 0.0;
      for (size_t i = 0; i < dofs.size(); ++i) {
        uh += vals(q, i) * local(i);
        ux += gx(q, i) * local(i);
        uy += gy(q, i) * local(i);
      }
      const Complex gxp = binvt(0, 0) * ux + binvt(0, 1) * uy;
      const Complex gyp = binvt(1, 0) * ux + binvt(1, 1) * uy;
      const Complex uref = ref.value(xq.x(), xq.y());
      const Eigen::Vector2cd gref = ref.grad(xq.x(), xq.y());
      const double wq = rule.w[q] * det;
      err2 += wq * (std::norm(uh - uref) + std::norm(gxp - gref.x()) +
                    std::norm(gyp - gref.y()));
      ref2 += wq * (std::norm(uref) + gref.squaredNorm());
    }
  }
  return std::sqrt(err2 / ref2);
}

ComplexVector vertex_values(const FeSpace& space, const ComplexVector& coeffs) {
  return coeffs.head(space.mesh().vertices.size());
}

} // namespace hsie
