// SPDX-License-Identifier: Apache-2.0
#include <Eigen/Dense>

#include "hsie/assembly.hpp"

#include <map>

namespace hsie {

DofMap build_dof_map(const FeSpace& space, const Segmentation& seg,
                     const HardyParams& hardy) {
  DofMap dm;
  const int p = space.order();
  const int nrad = hardy.n_modes + 2; // radial index 0 is the trace
  dm.n_trace = space.outer_trace_count();
  dm.n_interior = space.dof_count() - dm.n_trace;

  int next = space.dof_count();

  // Segment-private Hardy DOFs of interior trace nodes.
  std::vector<int> edge_private_base(seg.edges.size());
  for (size_t s = 0; s < seg.edges.size(); ++s) {
    edge_private_base[s] = next;
    next += (p - 1) * (nrad - 1);
  }
  // One Hardy ladder per ray.
  std::vector<int> ray_base(seg.rays.size());
  for (size_t r = 0; r < seg.rays.size(); ++r) {
    ray_base[r] = next;
    next += nrad - 1;
  }
  // Corner-private DOFs (both indices radial >= 1).
  std::vector<int> corner_base(seg.corners.size());
  for (size_t c = 0; c < seg.corners.size(); ++c) {
    corner_base[c] = next;
    next += (nrad - 1) * (nrad - 1);
  }
  dm.n_total = next;
  dm.n_hardy = dm.n_total - space.dof_count();

  dm.edge_dofs.resize(seg.edges.size());
  for (size_t s = 0; s < seg.edges.size(); ++s) {
    const auto& es = seg.edges[s];
    const auto& trace = space.trace_dofs(es.edge);
    auto& dofs = dm.edge_dofs[s];
    dofs.resize(nrad * (p + 1));
    for (int m = 0; m <= p; ++m) dofs[m] = trace[m];
    for (int i = 1; i < nrad; ++i)
      for (int m = 0; m <= p; ++m) {
        int g;
        if (m == 0)
          g = ray_base[es.ray_start] + (i - 1);
        else if (m == p)
          g = ray_base[es.ray_end] + (i - 1);
        else
          g = edge_private_base[s] + (i - 1) * (p - 1) + (m - 1);
        dofs[i * (p + 1) + m] = g;
      }
  }

  dm.corner_dofs.resize(seg.corners.size());
  for (size_t c = 0; c < seg.corners.size(); ++c) {
    const auto& cs = seg.corners[c];
    auto& dofs = dm.corner_dofs[c];
    dofs.resize(nrad * nrad);
    dofs[0] = cs.vertex; // vertex DOFs coincide with vertex indices
    for (int i = 1; i < nrad; ++i) {
      dofs[i * nrad] = ray_base[cs.ray_prev] + (i - 1);
      dofs[i] = ray_base[cs.ray_next] + (i - 1);
      for (int j = 1; j < nrad; ++j)
        dofs[i * nrad + j] = corner_base[c] + (i - 1) * (nrad - 1) + (j - 1);
    }
  }
  return dm;
}

namespace {

void scatter(const DenseMatrix& local, const std::vector<int>& dofs,
             std::vector<Triplet>& out) {
  const int n = static_cast<int>(dofs.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex v = local(i, j);
      if (v != Complex(0.0, 0.0)) out.emplace_back(dofs[i], dofs[j], v);
    }
}

ExteriorElementMatrices build_edge_local(const FeSpace& space,
                                         const Segmentation::EdgeSegment& es,
                                         const HardyParams& hardy) {
  if (es.kind == Segmentation::EdgeSegment::Kind::strip) {
    const EdgeMatrices em =
        edge_matrices(space.order(), space.mesh().edge_length(es.edge));
    return strip_matrices(em, hardy, es.material_n);
  }
  const WeightedTraceMatrices tm =
      weighted_trace_matrices(space.order(), es.trap);
  return trapezoid_matrices(es.trap, tm, hardy, es.material_n);
}

} // namespace

GlobalSystem assemble_global(const FeSpace& space, const Segmentation& seg,
                             const HardyParams& hardy) {
  GlobalSystem sys;
  sys.dofmap = build_dof_map(space, seg, hardy);
  const int n = sys.dofmap.n_total;

  ComplexSparseMatrix s_int, m_int;
  assemble_interior(space, s_int, m_int);

  std::vector<Triplet> ts, tm;
  for (int k = 0; k < s_int.outerSize(); ++k) {
    for (ComplexSparseMatrix::InnerIterator it(s_int, k); it; ++it)
      ts.emplace_back(it.row(), it.col(), it.value());
    for (ComplexSparseMatrix::InnerIterator it(m_int, k); it; ++it)
      tm.emplace_back(it.row(), it.col(), it.value());
  }

  sys.edge_local.reserve(seg.edges.size());
  for (size_t s = 0; s < seg.edges.size(); ++s) {
    sys.edge_local.push_back(build_edge_local(space, seg.edges[s], hardy));
    scatter(sys.edge_local.back().S, sys.dofmap.edge_dofs[s], ts);
    scatter(sys.edge_local.back().M, sys.dofmap.edge_dofs[s], tm);
  }
  for (size_t c = 0; c < seg.corners.size(); ++c) {
    const auto& cs = seg.corners[c];
    const ExteriorElementMatrices loc = triangle_matrices(
        seg.rays[cs.ray_prev].dir, seg.rays[cs.ray_next].dir, hardy,
        cs.material_n);
    scatter(loc.S, sys.dofmap.corner_dofs[c], ts);
    scatter(loc.M, sys.dofmap.corner_dofs[c], tm);
  }

  sys.S.resize(n, n);
  sys.M.resize(n, n);
  sys.S.setFromTriplets(ts.begin(), ts.end());
  sys.M.setFromTriplets(tm.begin(), tm.end());
  return sys;
}

ComplexVector apply_incoming(const GlobalSystem& sys, const FeSpace& space,
                             const Segmentation& seg, const IncomingField& inc,
                             Complex kappa) {
  const int p = space.order();
  ComplexVector rhs = ComplexVector::Zero(sys.dofmap.n_total);

  std::map<int, size_t> edge_to_segment;
  for (size_t s = 0; s < seg.edges.size(); ++s)
    edge_to_segment[seg.edges[s].edge] = s;

  // Corners shared with edges that carry no data must see a vanishing trace.
  std::map<int, Complex> corner_value; // vertex -> g_D there
  double gmax = 0.0;
  for (const auto& ed : inc.edges)
    gmax = std::max(gmax, ed.dirichlet.cwiseAbs().maxCoeff());
  std::map<int, bool> is_inflow;
  for (const auto& ed : inc.edges) is_inflow[ed.edge] = true;

  for (const auto& ed : inc.edges) {
    const auto it = edge_to_segment.find(ed.edge);
    if (it == edge_to_segment.end())
      throw MissingTraceData("inflow edge " + std::to_string(ed.edge) +
                             " has no exterior segment");
    if (ed.dirichlet.size() != p + 1 || ed.neumann.size() != p + 1)
      throw MissingTraceData("trace data size mismatch on edge " +
                             std::to_string(ed.edge));
    const auto& e = space.mesh().boundary_edges[ed.edge];
    corner_value[e.v[0]] = ed.dirichlet(0);
    corner_value[e.v[1]] = ed.dirichlet(p);
  }
  for (const int be : space.mesh().outer_loop) {
    if (is_inflow.count(be)) continue;
    const auto& e = space.mesh().boundary_edges[be];
    for (const int v : {e.v[0], e.v[1]}) {
      const auto it = corner_value.find(v);
      if (it != corner_value.end() && std::abs(it->second) > 1e-10 * gmax)
        throw MissingTraceData(
            "incoming field is not negligible at corner vertex " +
            std::to_string(v) + " adjacent to an edge without data");
    }
  }

  for (const auto& ed : inc.edges) {
    const size_t s = edge_to_segment.at(ed.edge);
    const auto& loc = sys.edge_local[s];
    const auto& dofs = sys.dofmap.edge_dofs[s];

    // Exterior block times the Dirichlet trace (columns of radial level 0).
    ComplexVector g_local = ComplexVector::Zero(loc.S.rows());
    g_local.head(p + 1) = ed.dirichlet;
    const ComplexVector contrib = loc.S * g_local - kappa * kappa * (loc.M * g_local);
    for (int i = 0; i < contrib.size(); ++i) rhs(dofs[i]) += contrib(i);

    // Neumann jump: edge mass times the normal-derivative coefficients.
    const EdgeMatrices em =
        edge_matrices(p, space.mesh().edge_length(ed.edge));
    const ComplexVector neu = em.mass.cast<Complex>() * ed.neumann;
    const auto& trace = space.trace_dofs(ed.edge);
    for (int m = 0; m <= p; ++m) rhs(trace[m]) += neu(m);
  }
  return rhs;
}

} // namespace hsie
