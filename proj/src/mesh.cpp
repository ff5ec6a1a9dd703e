// SPDX-License-Identifier: Apache-2.0
#include "hsie/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace hsie {

double Mesh2D::n_of(int material_id) const {
  const auto it = materials.find(material_id);
  if (it == materials.end())
    throw MissingMaterial("no refraction value for material id " +
                          std::to_string(material_id));
  return it->second;
}

double Mesh2D::edge_length(int boundary_edge) const {
  const auto& be = boundary_edges.at(boundary_edge);
  return (vertices[be.v[1]] - vertices[be.v[0]]).norm();
}

namespace {

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

double signed_area2(const Mesh2D& m, const Mesh2D::Tri& t) {
  return cross2(m.vertices[t.v[1]] - m.vertices[t.v[0]],
                m.vertices[t.v[2]] - m.vertices[t.v[0]]);
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

} // namespace

void validate_mesh(Mesh2D& mesh) {
  const int nv = static_cast<int>(mesh.vertices.size());
  for (const auto& t : mesh.triangles)
    for (int k = 0; k < 3; ++k)
      if (t.v[k] < 0 || t.v[k] >= nv)
        throw ParseError("triangle references vertex " + std::to_string(t.v[k]));
  for (const auto& e : mesh.boundary_edges)
    for (int k = 0; k < 2; ++k)
      if (e.v[k] < 0 || e.v[k] >= nv)
        throw ParseError("boundary edge references vertex " +
                         std::to_string(e.v[k]));

  int flipped = 0;
  for (auto& t : mesh.triangles) {
    const double a2 = signed_area2(mesh, t);
    if (a2 == 0.0)
      throw ParseError("degenerate (zero-area) triangle");
    if (a2 < 0.0) {
      std::swap(t.v[1], t.v[2]);
      ++flipped;
    }
  }
  if (flipped > 0)
    std::clog << "mesh: corrected orientation of " << flipped << " triangle(s)\n";

  // Every boundary edge must be a free (single-triangle) edge; orient it so
  // that the interior lies on the left.
  std::map<std::pair<int, int>, int> tri_edge_count;
  std::map<std::pair<int, int>, bool> tri_edge_dir; // true if stored as (a,b)
  for (const auto& t : mesh.triangles)
    for (int k = 0; k < 3; ++k) {
      int a = t.v[k], b = t.v[(k + 1) % 3];
      const bool fwd = a < b;
      if (!fwd) std::swap(a, b);
      tri_edge_count[{a, b}]++;
      if (tri_edge_count[{a, b}] == 1) tri_edge_dir[{a, b}] = fwd;
    }
  for (auto& e : mesh.boundary_edges) {
    int a = e.v[0], b = e.v[1];
    const int lo = std::min(a, b), hi = std::max(a, b);
    const auto it = tri_edge_count.find({lo, hi});
    if (it == tri_edge_count.end())
      throw ParseError("boundary edge (" + std::to_string(a) + "," +
                       std::to_string(b) + ") is not a triangle edge");
    if (it->second != 1)
      throw ParseError("boundary edge (" + std::to_string(a) + "," +
                       std::to_string(b) + ") is interior to the mesh");
    // CCW triangles traverse their free edges with the interior on the left.
    const bool fwd = tri_edge_dir[{lo, hi}];
    e.v[0] = fwd ? lo : hi;
    e.v[1] = fwd ? hi : lo;
  }

  // Free triangle edges missing from the boundary list leave a gap.
  std::map<int, int> succ; // start vertex -> boundary edge index
  for (int i = 0; i < static_cast<int>(mesh.boundary_edges.size()); ++i) {
    const auto& e = mesh.boundary_edges[i];
    if (succ.count(e.v[0]))
      throw OpenBoundaryLoop("two boundary edges start at vertex " +
                             std::to_string(e.v[0]));
    succ[e.v[0]] = i;
  }
  for (auto& [key, cnt] : tri_edge_count) {
    if (cnt == 1 && !succ.count(key.first) && !succ.count(key.second))
      throw OpenBoundaryLoop("free triangle edge (" +
                             std::to_string(key.first) + "," +
                             std::to_string(key.second) +
                             ") missing from boundary list");
  }

  // Walk the loops; pick the outer one by largest enclosed area.
  std::vector<bool> seen(mesh.boundary_edges.size(), false);
  std::vector<std::vector<int>> loops;
  for (int i = 0; i < static_cast<int>(mesh.boundary_edges.size()); ++i) {
    if (seen[i]) continue;
    std::vector<int> loop;
    int cur = i;
    while (true) {
      if (seen[cur])
        throw OpenBoundaryLoop("boundary loop does not close");
      seen[cur] = true;
      loop.push_back(cur);
      const int next_v = mesh.boundary_edges[cur].v[1];
      const auto it = succ.find(next_v);
      if (it == succ.end())
        throw OpenBoundaryLoop("no boundary edge continues at vertex " +
                               std::to_string(next_v));
      cur = it->second;
      if (cur == i) break;
    }
    loops.push_back(std::move(loop));
  }
  if (loops.empty()) throw OpenBoundaryLoop("mesh has no boundary");

  double best = -1.0;
  for (const auto& loop : loops) {
    double a2 = 0.0;
    for (const int ei : loop) {
      const auto& e = mesh.boundary_edges[ei];
      a2 += cross2(mesh.vertices[e.v[0]], mesh.vertices[e.v[1]]);
    }
    if (a2 > best) {
      best = a2;
      mesh.outer_loop = loop;
    }
  }
  if (best <= 0.0) throw OpenBoundaryLoop("outer boundary loop is not CCW");

  // Convexity of the outer loop (collinear corners allowed).
  double scale = 0.0;
  for (const int ei : mesh.outer_loop)
    scale = std::max(scale, mesh.edge_length(ei));
  const int nl = static_cast<int>(mesh.outer_loop.size());
  for (int k = 0; k < nl; ++k) {
    const auto& e0 = mesh.boundary_edges[mesh.outer_loop[k]];
    const auto& e1 = mesh.boundary_edges[mesh.outer_loop[(k + 1) % nl]];
    const Eigen::Vector2d d0 = mesh.vertices[e0.v[1]] - mesh.vertices[e0.v[0]];
    const Eigen::Vector2d d1 = mesh.vertices[e1.v[1]] - mesh.vertices[e1.v[0]];
    if (cross2(d0, d1) < -1e-12 * scale * scale)
      throw NonConvexBoundary("outer boundary turns clockwise at vertex " +
                              std::to_string(e0.v[1]));
  }

  for (const auto& t : mesh.triangles)
    mesh.n_of(t.material); // throws MissingMaterial
}

Mesh2D load_mesh(std::istream& in) {
  Mesh2D mesh;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    const auto fail = [&](const std::string& what) {
      throw ParseError("line " + std::to_string(lineno) + ": " + what);
    };
    if (!header) {
      int version = 0;
      if (kw != "mesh2d" || !(ls >> version) || version != 1)
        fail("expected header 'mesh2d 1'");
      header = true;
      continue;
    }
    if (kw == "v") {
      double x, y;
      if (!(ls >> x >> y)) fail("vertex needs two coordinates");
      mesh.vertices.emplace_back(x, y);
    } else if (kw == "t") {
      Mesh2D::Tri t{};
      if (!(ls >> t.v[0] >> t.v[1] >> t.v[2] >> t.material))
        fail("triangle needs three vertex indices and a material id");
      mesh.triangles.push_back(t);
    } else if (kw == "be") {
      Mesh2D::BoundaryEdge e{};
      if (!(ls >> e.v[0] >> e.v[1] >> e.tag))
        fail("boundary edge needs two vertex indices and a tag");
      mesh.boundary_edges.push_back(e);
    } else if (kw == "mat") {
      int id;
      double n;
      if (!(ls >> id >> n)) fail("material needs an id and a value");
      if (n <= 0.0) fail("refraction value must be positive");
      mesh.materials[id] = n;
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  if (!header) throw ParseError("missing 'mesh2d 1' header");
  validate_mesh(mesh);
  return mesh;
}

Mesh2D load_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open mesh file '" + path + "'");
  return load_mesh(in);
}

void save_mesh(const Mesh2D& mesh, std::ostream& out) {
  out << "mesh2d 1\n";
  for (const auto& [id, n] : mesh.materials)
    out << "mat " << id << " " << format_double(n) << "\n";
  for (const auto& v : mesh.vertices)
    out << "v " << format_double(v.x()) << " " << format_double(v.y()) << "\n";
  for (const auto& t : mesh.triangles)
    out << "t " << t.v[0] << " " << t.v[1] << " " << t.v[2] << " " << t.material
        << "\n";
  for (const auto& e : mesh.boundary_edges)
    out << "be " << e.v[0] << " " << e.v[1] << " " << e.tag << "\n";
}

void save_mesh_file(const Mesh2D& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  save_mesh(mesh, out);
}

Mesh2D refine_uniform(const Mesh2D& mesh) {
  Mesh2D fine;
  fine.vertices = mesh.vertices;
  fine.materials = mesh.materials;
  std::map<std::pair<int, int>, int> midpoint;
  const auto mid = [&](int a, int b) {
    const int lo = std::min(a, b), hi = std::max(a, b);
    const auto it = midpoint.find({lo, hi});
    if (it != midpoint.end()) return it->second;
    const int id = static_cast<int>(fine.vertices.size());
    fine.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
    midpoint[{lo, hi}] = id;
    return id;
  };
  for (const auto& t : mesh.triangles) {
    const int m01 = mid(t.v[0], t.v[1]);
    const int m12 = mid(t.v[1], t.v[2]);
    const int m20 = mid(t.v[2], t.v[0]);
    fine.triangles.push_back({{t.v[0], m01, m20}, t.material});
    fine.triangles.push_back({{t.v[1], m12, m01}, t.material});
    fine.triangles.push_back({{t.v[2], m20, m12}, t.material});
    fine.triangles.push_back({{m01, m12, m20}, t.material});
  }
  for (const auto& e : mesh.boundary_edges) {
    const int m = mid(e.v[0], e.v[1]);
    fine.boundary_edges.push_back({{e.v[0], m}, e.tag});
    fine.boundary_edges.push_back({{m, e.v[1]}, e.tag});
  }
  validate_mesh(fine);
  return fine;
}

Mesh2D generate_rect_grid(const RectGridSpec& spec) {
  const auto& xs = spec.x_lines;
  const auto& ys = spec.y_lines;
  if (xs.size() < 2 || ys.size() < 2)
    throw ConfigError("rect grid needs at least two lines per axis");
  if (!std::is_sorted(xs.begin(), xs.end()) ||
      !std::is_sorted(ys.begin(), ys.end()))
    throw ConfigError("grid lines must be ascending");

  Mesh2D mesh;
  mesh.materials = spec.materials;
  const int nx = static_cast<int>(xs.size());
  const int ny = static_cast<int>(ys.size());
  const auto vid = [&](int i, int j) { return j * nx + i; };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      mesh.vertices.emplace_back(xs[i], ys[j]);

  const auto material_at = [&](double x, double y) {
    int m = spec.background_material;
    for (const auto& b : spec.boxes)
      if (x > b.x0 && x < b.x1 && y > b.y0 && y < b.y1) m = b.material;
    return m;
  };

  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) {
      const int ll = vid(i, j), lr = vid(i + 1, j);
      const int ul = vid(i, j + 1), ur = vid(i + 1, j + 1);
      const int mat =
          material_at(0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1]));
      mesh.triangles.push_back({{ll, lr, ur}, mat});
      mesh.triangles.push_back({{ll, ur, ul}, mat});
    }

  for (int j = 0; j + 1 < ny; ++j) {
    mesh.boundary_edges.push_back({{vid(0, j + 1), vid(0, j)}, 1});
    mesh.boundary_edges.push_back({{vid(nx - 1, j), vid(nx - 1, j + 1)}, 2});
  }
  for (int i = 0; i + 1 < nx; ++i) {
    mesh.boundary_edges.push_back({{vid(i, 0), vid(i + 1, 0)}, 3});
    mesh.boundary_edges.push_back({{vid(i + 1, ny - 1), vid(i, ny - 1)}, 4});
  }
  validate_mesh(mesh);
  return mesh;
}

} // namespace hsie
