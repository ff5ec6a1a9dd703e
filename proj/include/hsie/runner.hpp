// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hsie/mesh.hpp"
#include "hsie/types.hpp"

namespace hsie {

// Batch-run configuration; see README for the JSON schema. All quantities
// are nondimensional except resonance runs, which may carry a length unit
// for the omega <-> kappa conversion.
struct RunConfig {
  std::string task; // solve1d | scatter | resonance | dtn_test | convergence

  std::string mesh_path;
  std::optional<RectGridSpec> generator;
  std::string segmentation = "trapezoids_normal_bisector";
  std::optional<Eigen::Vector2d> reference_point;
  int fe_order = 1;
  int refinements = 0;

  Complex kappa{1.0, 0.0};
  Complex kappa0{1.0, 0.0};
  std::vector<int> n_sweep{0}; // strictly increasing Hardy mode counts

  struct Incoming {
    double half_width = 0.0;
    double n1 = 0.0, n2 = 0.0;
    bool even = true;
    int branch = 0;
    double center_y = 0.0;
    std::vector<int> inflow_tags;
  };
  std::optional<Incoming> incoming;

  struct Resonance {
    Complex shift_kappa_sq{0.0, 0.0};
    double length_unit_m = 0.0; // 0: shift given directly as kappa^2
    int n_eigs = 1;
    double tol_rel = 1e-9;
  };
  std::optional<Resonance> resonance;

  struct Dtn {
    double edge_length = M_PI;
    std::vector<int> mode_indices{1};
  };
  std::optional<Dtn> dtn;

  struct Problem1dCfg {
    double a = 1.0;
    Complex g{1.0, 0.0};
    std::vector<double> n_breaks;
    std::vector<double> n_values{1.0};
    int cells = 10;
  };
  std::optional<Problem1dCfg> p1d;

  std::string reference = "default"; // analytic | self | none | default
  std::string out_dir = "out";
  int threads = 1;

  std::string raw_json; // resolved config echo
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_string(const std::string& json_text);

struct RunOutputs {
  std::string summary_json;     // contents of summary.json
  std::string convergence_csv;  // contents of convergence.csv ("" if unused)
  std::string field_csv;        // contents of field.csv ("" if unused)
};

// Executes the task and writes summary.json, convergence.csv, field.csv and
// the resolved config into out_dir (atomically). Also returns the file
// contents for in-process consumers.
RunOutputs run(const RunConfig& config, const std::string& out_dir_override = "");

// Shortest round-trip decimal formatting used in all text outputs.
std::string format_shortest(double v);

} // namespace hsie
