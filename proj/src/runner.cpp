// SPDX-License-Identifier: Apache-2.0
#include "hsie/runner.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

#include "hsie/assembly.hpp"
#include "hsie/exterior.hpp"
#include "hsie/fe_space.hpp"
#include "hsie/hardy.hpp"
#include "hsie/segmentation.hpp"
#include "hsie/slab.hpp"
#include "hsie/solver1d.hpp"
#include "hsie/solvers.hpp"

namespace hsie {

using nlohmann::json;

std::string format_shortest(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

constexpr double kSpeedOfLight = 299792458.0;

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

Complex json_complex(const json& j, const std::string& what) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw ConfigError(what + " must be a number or [re, im]");
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

RectGridSpec parse_rect_grid(const json& g) {
  RectGridSpec spec;
  const auto axis = [&](const char* origin, const char* spans_key) {
    std::vector<double> lines{g.value(origin, 0.0)};
    if (!g.contains(spans_key) || !g[spans_key].is_array())
      throw ConfigError(std::string("rect_grid needs ") + spans_key);
    for (const auto& s : g[spans_key]) {
      const double to = s.at("to").get<double>();
      const int cells = s.at("cells").get<int>();
      if (cells < 1 || to <= lines.back())
        throw ConfigError("rect_grid spans must ascend with cells >= 1");
      const double from = lines.back();
      for (int c = 1; c <= cells; ++c)
        lines.push_back(from + (to - from) * c / cells);
      lines.back() = to;
    }
    return lines;
  };
  spec.x_lines = axis("x0", "x_spans");
  spec.y_lines = axis("y0", "y_spans");
  spec.background_material = 0;
  spec.materials[0] = g.at("background_n").get<double>();
  int id = 1;
  for (const auto& b : g.value("boxes", json::array())) {
    RectGridSpec::Box box{};
    box.x0 = b.at("x0").get<double>();
    box.y0 = b.at("y0").get<double>();
    box.x1 = b.at("x1").get<double>();
    box.y1 = b.at("y1").get<double>();
    box.material = id;
    spec.materials[id] = b.at("n").get<double>();
    spec.boxes.push_back(box);
    ++id;
  }
  return spec;
}

SegmentationStrategy strategy_from(const RunConfig& cfg) {
  if (cfg.segmentation == "strips_and_triangles")
    return SegmentationStrategy::strips_and_triangles;
  if (cfg.segmentation == "trapezoids_normal_bisector")
    return SegmentationStrategy::trapezoids_normal_bisector;
  if (cfg.segmentation == "trapezoids_reference_point")
    return SegmentationStrategy::trapezoids_reference_point;
  throw ConfigError("unknown segmentation '" + cfg.segmentation + "'");
}

Mesh2D obtain_mesh(const RunConfig& cfg) {
  Mesh2D mesh;
  if (!cfg.mesh_path.empty())
    mesh = load_mesh_file(cfg.mesh_path);
  else if (cfg.generator)
    mesh = generate_rect_grid(*cfg.generator);
  else
    throw ConfigError("task needs a mesh (path or rect_grid generator)");
  for (int r = 0; r < cfg.refinements; ++r) mesh = refine_uniform(mesh);
  return mesh;
}

double sparse_max_abs(const ComplexSparseMatrix& a) {
  double m = 0.0;
  for (int k = 0; k < a.outerSize(); ++k)
    for (ComplexSparseMatrix::InnerIterator it(a, k); it; ++it)
      m = std::max(m, std::abs(it.value()));
  return m;
}

struct CsvTable {
  std::vector<std::string> header_comments;
  std::vector<std::array<std::string, 5>> rows; // N, dofs, radial, err, wall

  std::string str() const {
    std::ostringstream os;
    for (const auto& c : header_comments) os << "# " << c << "\n";
    os << "N,dofs_total,dofs_radial,rel_error,wall_seconds\n";
    for (const auto& r : rows)
      os << r[0] << "," << r[1] << "," << r[2] << "," << r[3] << "," << r[4]
         << "\n";
    return os.str();
  }
};

void atomic_write(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("io_error", "cannot write " + tmp.string());
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

// Geometric-ratio estimate over the pre-floor part of an error sequence.
double fit_ratio(const std::vector<double>& err) {
  double emin = 1e300;
  for (const double e : err) emin = std::min(emin, e);
  double sum = 0.0;
  int cnt = 0;
  for (size_t i = 0; i + 1 < err.size(); ++i) {
    if (err[i] > 20.0 * emin && err[i + 1] > 20.0 * emin && err[i] > 0.0) {
      sum += std::log(err[i + 1] / err[i]);
      ++cnt;
    }
  }
  return cnt ? std::exp(sum / cnt) : 0.0;
}

// ---------------------------------------------------------------- solve1d

json run_solve1d(const RunConfig& cfg, CsvTable& csv, std::string& field_csv,
                 json& timings) {
  const auto& p1 = cfg.p1d ? *cfg.p1d : RunConfig::Problem1dCfg{};
  const bool homogeneous =
      std::all_of(p1.n_values.begin(), p1.n_values.end(),
                  [](double v) { return v == 1.0; });
  const bool analytic =
      homogeneous && cfg.reference != "self" && cfg.reference != "none";
  csv.header_comments.push_back("task: solve1d");
  csv.header_comments.push_back(
      analytic ? "reference: analytic outgoing wave g e^{i kappa a}/(i kappa)"
               : "reference: self (finest N in sweep)");

  json rows = json::array();
  std::vector<Complex> u0s;
  std::vector<ComplexVector> transforms;
  std::vector<double> walls, errs;
  double t_asm = 0.0, t_factor = 0.0, t_solve = 0.0;
  Solution1D last;

  for (const int n : cfg.n_sweep) {
    const Stopwatch total;
    Problem1D prob;
    prob.a = p1.a;
    prob.n_breaks = p1.n_breaks;
    prob.n_values = p1.n_values;
    prob.kappa = cfg.kappa;
    prob.g = p1.g;
    prob.fe_order = cfg.fe_order;
    prob.n_cells = p1.cells;
    prob.hardy = HardyParams(cfg.kappa0, n);

    Stopwatch sw;
    const System1D sys = assemble_1d(prob);
    t_asm += sw.seconds();

    sw = Stopwatch();
    const ComplexSparseMatrix a = sys.S - cfg.kappa * cfg.kappa * sys.M;
    SparseLuSolver lu(a);
    t_factor += sw.seconds();

    sw = Stopwatch();
    auto [x, res] = lu.solve_refined(sys.rhs, 3);
    t_solve += sw.seconds();
    if (res > 1e-8)
      throw SingularSystem("1d solve residual " + std::to_string(res));

    Solution1D sol;
    sol.interior = x.head(sys.n_interior);
    sol.u0 = x(sys.n_interior - 1);
    sol.hardy_coeffs = x.tail(x.size() - sys.n_interior);
    sol.grid = sys.grid;

    u0s.push_back(sol.u0);
    transforms.push_back(sol.hardy_transform(prob.hardy));
    last = sol;

    json row;
    row["n"] = n;
    row["dofs_total"] = static_cast<int>(x.size());
    row["u0"] = complex_json(sol.u0);
    if (analytic) {
      const Complex uex = p1.g * std::exp(Complex(0.0, 1.0) * cfg.kappa * p1.a) /
                          (Complex(0.0, 1.0) * cfg.kappa);
      row["u0_rel_error"] = std::abs(sol.u0 - uex) / std::abs(uex);
      // Hardy-space solution error against the geometric oracle, including
      // the truncation tail of the reference series.
      const Complex ratio = (cfg.kappa - cfg.kappa0) / (cfg.kappa + cfg.kappa0);
      int len = transforms.back().size();
      int ref_len = std::max(len, 400);
      while (std::pow(std::abs(ratio), ref_len) > 1e-22 && ref_len < 20000)
        ref_len *= 2;
      HardyParams ref_params(cfg.kappa0, ref_len - 1);
      const ComplexVector ref =
          reference_hardy_coefficients(cfg.kappa, ref_params, uex);
      ComplexVector diff = ref;
      diff.head(len) -= transforms.back();
      const double err = diff.norm() / ref.norm();
      row["hardy_rel_error"] = err;
      errs.push_back(err);
    }
    walls.push_back(total.seconds());
    rows.push_back(row);
  }

  if (!analytic) {
    const Complex u_ref = u0s.back();
    for (size_t i = 0; i < u0s.size(); ++i) {
      const double err = std::abs(u0s[i] - u_ref) / std::abs(u_ref);
      errs.push_back(err);
      rows[i]["u0_rel_error_self"] = err;
    }
  }
  for (size_t i = 0; i < cfg.n_sweep.size(); ++i) {
    csv.rows.push_back({std::to_string(cfg.n_sweep[i]),
                        rows[i]["dofs_total"].dump(),
                        std::to_string(cfg.n_sweep[i] + 2),
                        format_shortest(errs[i]), format_shortest(walls[i])});
  }

  std::ostringstream fs;
  fs << "# task: solve1d field samples (finest N)\nr,re,im\n";
  for (int i = 0; i < last.interior.size(); ++i)
    fs << format_shortest(last.grid[i]) << ","
       << format_shortest(last.interior(i).real()) << ","
       << format_shortest(last.interior(i).imag()) << "\n";
  field_csv = fs.str();

  timings["assembly_seconds"] = t_asm;
  timings["factorization_seconds"] = t_factor;
  timings["solve_seconds"] = t_solve;

  json out;
  out["rows"] = rows;
  out["geometric_ratio_estimate"] = fit_ratio(errs);
  return out;
}

// ---------------------------------------------------------------- dtn_test

json run_dtn(const RunConfig& cfg, CsvTable& csv, json& timings) {
  if (!cfg.dtn) throw ConfigError("dtn_test needs a 'dtn' block");
  const int p = cfg.fe_order;
  const EdgeMatrices em = edge_matrices(p, cfg.dtn->edge_length);
  Eigen::GeneralizedSelfAdjointEigenSolver<RealMatrix> ges(em.stiff, em.mass);
  if (ges.info() != Eigen::Success)
    throw ConvergenceFailure("transverse eigenproblem failed");

  csv.header_comments.push_back("task: dtn_test");
  csv.header_comments.push_back(
      "reference: exact DtN value -i sqrt(kappa^2 - mu) per transverse mode");
  csv.header_comments.push_back(
      "rel_error: max over the configured transverse modes");

  json modes = json::array();
  for (const int k : cfg.dtn->mode_indices) {
    if (k < 0 || k > p)
      throw ConfigError("dtn mode index out of range for this order");
    modes.push_back(ges.eigenvalues()(k));
  }

  double t_asm = 0.0, t_schur = 0.0;
  json rows = json::array();
  for (const int n : cfg.n_sweep) {
    const Stopwatch total;
    const HardyParams hardy(cfg.kappa0, n);
    Stopwatch sw;
    const ExteriorElementMatrices strip = strip_matrices(em, hardy, 1.0);
    t_asm += sw.seconds();

    sw = Stopwatch();
    const int nt = strip.n_trace;
    const DenseMatrix a = strip.S - cfg.kappa * cfg.kappa * strip.M;
    const int nr = static_cast<int>(a.rows()) - nt;
    const DenseMatrix a_tt = a.topLeftCorner(nt, nt);
    const DenseMatrix a_tr = a.topRightCorner(nt, nr);
    const DenseMatrix a_rt = a.bottomLeftCorner(nr, nt);
    const DenseMatrix schur =
        a_tt - a_tr * Eigen::PartialPivLU<DenseMatrix>(a.bottomRightCorner(nr, nr))
                          .solve(a_rt);
    t_schur += sw.seconds();

    double worst = 0.0;
    json per_mode = json::array();
    for (const int k : cfg.dtn->mode_indices) {
      const double mu = ges.eigenvalues()(k);
      const ComplexVector w = ges.eigenvectors().col(k).cast<Complex>();
      const Complex val = (w.transpose() * schur * w)(0, 0);
      const Complex target =
          -Complex(0.0, 1.0) * std::sqrt(cfg.kappa * cfg.kappa - mu);
      const double err = std::abs(val - target) / std::abs(target);
      worst = std::max(worst, err);
      per_mode.push_back(
          {{"mu", mu}, {"value", complex_json(val)}, {"rel_error", err}});
    }
    json row;
    row["n"] = n;
    row["per_mode"] = per_mode;
    rows.push_back(row);
    csv.rows.push_back({std::to_string(n),
                        std::to_string((n + 2) * (p + 1)),
                        std::to_string(n + 2), format_shortest(worst),
                        format_shortest(total.seconds())});
  }
  timings["assembly_seconds"] = t_asm;
  timings["schur_seconds"] = t_schur;

  json out;
  out["transverse_eigenvalues"] = modes;
  out["rows"] = rows;
  return out;
}

// ------------------------------------------------- scatter / convergence

json run_field_task(const RunConfig& cfg, CsvTable& csv, std::string& field_csv,
                    json& timings) {
  if (!cfg.incoming)
    throw ConfigError(cfg.task + " needs an 'incoming' block");
  if (cfg.kappa.imag() != 0.0)
    throw ConfigError("slab-mode incoming data needs real kappa");
  const Mesh2D mesh = obtain_mesh(cfg);
  const FeSpace space(mesh, cfg.fe_order);
  const Segmentation seg =
      build_segmentation(mesh, strategy_from(cfg), cfg.reference_point);

  const auto& ic = *cfg.incoming;
  const SlabMode mode = solve_slab_mode(cfg.kappa.real(), ic.half_width, ic.n1,
                                        ic.n2, ic.even, ic.branch);
  std::vector<int> inflow;
  for (const int be : mesh.outer_loop)
    for (const int tag : ic.inflow_tags)
      if (mesh.boundary_edges[be].tag == tag) inflow.push_back(be);
  if (inflow.empty()) throw ConfigError("no boundary edges match inflow_tags");
  const IncomingField inc = eval_incoming(mode, space, inflow, ic.center_y);

  const double cy = ic.center_y;
  const ReferenceField ref{
      [&mode, cy](double x, double y) { return mode.field(x, y - cy); },
      [&mode, cy](double x, double y) { return mode.grad(x, y - cy); }};
  const bool with_error = cfg.reference != "none";

  csv.header_comments.push_back("task: " + cfg.task);
  csv.header_comments.push_back(
      with_error ? "reference: analytic incoming field (H1 relative error)"
                 : "reference: none");

  double t_asm = 0.0, t_factor = 0.0, t_solve = 0.0;
  json rows = json::array();
  std::vector<double> errs;
  ComplexVector last_fe;
  for (const int n : cfg.n_sweep) {
    const Stopwatch total;
    const HardyParams hardy(cfg.kappa0, n);
    Stopwatch sw;
    const GlobalSystem sys = assemble_global(space, seg, hardy);
    const ComplexVector rhs = apply_incoming(sys, space, seg, inc, cfg.kappa);
    t_asm += sw.seconds();

    sw = Stopwatch();
    const ComplexSparseMatrix a = sys.S - cfg.kappa * cfg.kappa * sys.M;
    SparseLuSolver lu(a);
    t_factor += sw.seconds();

    sw = Stopwatch();
    auto [x, res] = lu.solve_refined(rhs, 3);
    t_solve += sw.seconds();
    if (res > 1e-8)
      throw SingularSystem("2d solve residual " + std::to_string(res));

    last_fe = x.head(space.dof_count());
    double err = 0.0;
    if (with_error) {
      err = h1_relative_error(space, last_fe, ref);
      errs.push_back(err);
    }
    json row;
    row["n"] = n;
    row["dofs_total"] = sys.dofmap.n_total;
    row["dofs_interior"] = sys.dofmap.n_interior;
    row["dofs_trace"] = sys.dofmap.n_trace;
    row["dofs_hardy"] = sys.dofmap.n_hardy;
    if (with_error) row["h1_rel_error"] = err;
    rows.push_back(row);
    csv.rows.push_back(
        {std::to_string(n), std::to_string(sys.dofmap.n_total),
         std::to_string(n + 2),
         with_error ? format_shortest(err) : "nan",
         format_shortest(total.seconds())});
  }

  std::ostringstream fs;
  fs << "# task: " << cfg.task << " vertex field samples (finest N)\n"
     << "x,y,re,im\n";
  const ComplexVector vv = vertex_values(space, last_fe);
  for (int i = 0; i < vv.size(); ++i)
    fs << format_shortest(mesh.vertices[i].x()) << ","
       << format_shortest(mesh.vertices[i].y()) << ","
       << format_shortest(vv(i).real()) << ","
       << format_shortest(vv(i).imag()) << "\n";
  field_csv = fs.str();

  timings["assembly_seconds"] = t_asm;
  timings["factorization_seconds"] = t_factor;
  timings["solve_seconds"] = t_solve;

  json out;
  out["kappa_x"] = mode.kappa_x;
  out["rows"] = rows;
  if (!errs.empty()) out["geometric_ratio_estimate"] = fit_ratio(errs);
  return out;
}

// --------------------------------------------------------------- resonance

json run_resonance(const RunConfig& cfg, CsvTable& csv, json& timings) {
  if (!cfg.resonance) throw ConfigError("resonance needs a 'resonance' block");
  const auto& rc = *cfg.resonance;
  const Mesh2D mesh = obtain_mesh(cfg);
  const FeSpace space(mesh, cfg.fe_order);
  const Segmentation seg =
      build_segmentation(mesh, strategy_from(cfg), cfg.reference_point);

  csv.header_comments.push_back("task: resonance");
  csv.header_comments.push_back(
      "reference: self (eigenvalue at the finest N in sweep)");

  double t_asm = 0.0, t_eig = 0.0;
  json rows = json::array();
  std::vector<Complex> lambdas;
  std::vector<double> walls;
  std::vector<int> dofs;
  for (const int n : cfg.n_sweep) {
    const Stopwatch total;
    const HardyParams hardy(cfg.kappa0, n);
    Stopwatch sw;
    const GlobalSystem sys = assemble_global(space, seg, hardy);
    t_asm += sw.seconds();

    sw = Stopwatch();
    const double tol =
        rc.tol_rel * (sparse_max_abs(sys.S) +
                      std::abs(rc.shift_kappa_sq) * sparse_max_abs(sys.M));
    const EigResult eig = shift_invert_eigs(sys.S, sys.M, rc.shift_kappa_sq,
                                            rc.n_eigs, tol);
    t_eig += sw.seconds();

    lambdas.push_back(eig.eigenvalues.at(0));
    walls.push_back(total.seconds());
    dofs.push_back(sys.dofmap.n_total);
    json row;
    row["n"] = n;
    row["dofs_total"] = sys.dofmap.n_total;
    row["kappa_sq"] = complex_json(eig.eigenvalues.at(0));
    row["residual"] = eig.residuals.at(0);
    row["arnoldi_iterations"] = eig.iterations;
    if (rc.length_unit_m > 0.0) {
      const Complex kap = std::sqrt(eig.eigenvalues.at(0));
      row["omega"] = complex_json(kap * kSpeedOfLight / rc.length_unit_m);
    }
    rows.push_back(row);
  }

  const Complex ref = lambdas.back();
  std::vector<double> errs;
  for (size_t i = 0; i < lambdas.size(); ++i) {
    const double err = std::abs(lambdas[i] - ref) / std::abs(ref);
    errs.push_back(err);
    rows[i]["rel_error_vs_finest"] = err;
    csv.rows.push_back({std::to_string(cfg.n_sweep[i]),
                        std::to_string(dofs[i]),
                        std::to_string(cfg.n_sweep[i] + 2),
                        format_shortest(err), format_shortest(walls[i])});
  }

  timings["assembly_seconds"] = t_asm;
  timings["eigensolve_seconds"] = t_eig;

  json out;
  out["shift_kappa_sq"] = complex_json(rc.shift_kappa_sq);
  out["rows"] = rows;
  return out;
}

} // namespace

RunConfig parse_config_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  try {
    RunConfig cfg;
    cfg.task = j.at("task").get<std::string>();
    if (cfg.task != "solve1d" && cfg.task != "scatter" &&
        cfg.task != "resonance" && cfg.task != "dtn_test" &&
        cfg.task != "convergence")
      throw ConfigError("unknown task '" + cfg.task + "'");

    if (j.contains("mesh")) {
      if (j["mesh"].is_string())
        cfg.mesh_path = j["mesh"].get<std::string>();
      else if (j["mesh"].is_object() && j["mesh"].contains("rect_grid"))
        cfg.generator = parse_rect_grid(j["mesh"]["rect_grid"]);
      else
        throw ConfigError("mesh must be a path or a rect_grid object");
    }
    cfg.segmentation = j.value("segmentation", cfg.segmentation);
    if (j.contains("reference_point")) {
      const auto& rp = j["reference_point"];
      cfg.reference_point = Eigen::Vector2d(rp.at(0).get<double>(),
                                            rp.at(1).get<double>());
    }
    cfg.fe_order = j.value("fe_order", 1);
    cfg.refinements = j.value("refinements", 0);
    if (j.contains("kappa")) cfg.kappa = json_complex(j["kappa"], "kappa");
    if (j.contains("kappa0")) cfg.kappa0 = json_complex(j["kappa0"], "kappa0");

    if (j.contains("hardy_n_sweep")) {
      cfg.n_sweep.clear();
      for (const auto& v : j["hardy_n_sweep"]) cfg.n_sweep.push_back(v.get<int>());
      if (cfg.n_sweep.empty()) throw ConfigError("hardy_n_sweep is empty");
      for (size_t i = 0; i + 1 < cfg.n_sweep.size(); ++i)
        if (cfg.n_sweep[i] >= cfg.n_sweep[i + 1])
          throw ConfigError("hardy_n_sweep must be strictly increasing");
    } else if (j.contains("hardy_n")) {
      cfg.n_sweep = {j["hardy_n"].get<int>()};
    }
    for (const int n : cfg.n_sweep)
      if (n < 0) throw ConfigError("hardy mode counts must be >= 0");

    if (j.contains("incoming")) {
      const auto& ij = j["incoming"];
      RunConfig::Incoming ic;
      ic.half_width = ij.at("half_width").get<double>();
      ic.n1 = ij.at("n1").get<double>();
      ic.n2 = ij.at("n2").get<double>();
      ic.even = ij.value("parity", "even") == std::string("even");
      ic.branch = ij.value("branch", 0);
      ic.center_y = ij.value("center_y", 0.0);
      for (const auto& t : ij.at("inflow_tags")) ic.inflow_tags.push_back(t.get<int>());
      cfg.incoming = ic;
    }
    if (j.contains("resonance")) {
      const auto& rj = j["resonance"];
      RunConfig::Resonance rc;
      rc.length_unit_m = rj.value("length_unit_m", 0.0);
      if (rj.contains("shift_kappa_sq")) {
        rc.shift_kappa_sq = json_complex(rj["shift_kappa_sq"], "shift_kappa_sq");
      } else if (rj.contains("shift_omega")) {
        if (rc.length_unit_m <= 0.0)
          throw ConfigError("shift_omega needs a positive length_unit_m");
        const Complex omega = json_complex(rj["shift_omega"], "shift_omega");
        const Complex kap = omega * rc.length_unit_m / kSpeedOfLight;
        rc.shift_kappa_sq = kap * kap;
      } else {
        throw ConfigError("resonance needs shift_kappa_sq or shift_omega");
      }
      rc.n_eigs = rj.value("n_eigs", 1);
      rc.tol_rel = rj.value("tol_rel", 1e-9);
      cfg.resonance = rc;
    }
    if (j.contains("dtn")) {
      RunConfig::Dtn d;
      d.edge_length = j["dtn"].value("edge_length", M_PI);
      if (j["dtn"].contains("mode_indices")) {
        d.mode_indices.clear();
        for (const auto& v : j["dtn"]["mode_indices"])
          d.mode_indices.push_back(v.get<int>());
      }
      cfg.dtn = d;
    }
    if (j.contains("problem1d")) {
      const auto& pj = j["problem1d"];
      RunConfig::Problem1dCfg p1;
      p1.a = pj.value("a", 1.0);
      if (pj.contains("g")) p1.g = json_complex(pj["g"], "g");
      if (pj.contains("n_breaks"))
        p1.n_breaks = pj["n_breaks"].get<std::vector<double>>();
      if (pj.contains("n_values"))
        p1.n_values = pj["n_values"].get<std::vector<double>>();
      p1.cells = pj.value("cells", 10);
      cfg.p1d = p1;
    }
    cfg.reference = j.value("reference", "default");
    cfg.out_dir = j.value("out", "out");
    cfg.threads = j.value("threads", 1);

    // Resolved echo with the shift always in kappa^2 form.
    json resolved = j;
    if (cfg.resonance)
      resolved["resonance"]["shift_kappa_sq"] =
          complex_json(cfg.resonance->shift_kappa_sq);
    cfg.raw_json = resolved.dump(2);
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str());
}

RunOutputs run(const RunConfig& cfg, const std::string& out_dir_override) {
  const std::string out_dir =
      out_dir_override.empty() ? cfg.out_dir : out_dir_override;

  CsvTable csv;
  std::string field_csv;
  json timings;
  json result;
  const Stopwatch total;
  if (cfg.task == "solve1d")
    result = run_solve1d(cfg, csv, field_csv, timings);
  else if (cfg.task == "dtn_test")
    result = run_dtn(cfg, csv, timings);
  else if (cfg.task == "scatter" || cfg.task == "convergence")
    result = run_field_task(cfg, csv, field_csv, timings);
  else if (cfg.task == "resonance")
    result = run_resonance(cfg, csv, timings);
  else
    throw ConfigError("unknown task '" + cfg.task + "'");
  timings["total_seconds"] = total.seconds();

  json summary;
  summary["task"] = cfg.task;
  summary["threads"] = cfg.threads;
  summary["config"] = json::parse(cfg.raw_json);
  summary["timings"] = timings;
  summary["result"] = result;

  RunOutputs outputs;
  outputs.summary_json = summary.dump(2) + "\n";
  outputs.convergence_csv = csv.str();
  outputs.field_csv = field_csv;

  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  atomic_write(fs::path(out_dir) / "summary.json", outputs.summary_json);
  atomic_write(fs::path(out_dir) / "convergence.csv", outputs.convergence_csv);
  if (!outputs.field_csv.empty())
    atomic_write(fs::path(out_dir) / "field.csv", outputs.field_csv);
  atomic_write(fs::path(out_dir) / "config.resolved.json", cfg.raw_json + "\n");
  return outputs;
}

} // namespace hsie
