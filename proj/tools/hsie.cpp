// SPDX-License-Identifier: Apache-2.0
//
// Batch driver: hsie <task> --config <path> [--out <dir>] [--threads k]
// Tasks: solve1d, scatter, resonance, dtn_test, convergence.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hsie/runner.hpp"
#include "hsie/types.hpp"

namespace {

int run_task(const std::string& task, const std::string& config_path,
             const std::string& out_dir, int threads) {
  hsie::RunConfig cfg;
  try {
    cfg = hsie::parse_config_file(config_path);
    if (cfg.task != task)
      throw hsie::ConfigError("config task '" + cfg.task +
                              "' does not match subcommand '" + task + "'");
    if (const char* env = std::getenv("HSIE_THREADS"))
      cfg.threads = std::max(1, std::atoi(env));
    else if (threads > 0)
      cfg.threads = threads;
  } catch (const hsie::ConfigError& e) {
    nlohmann::json err{{"error", {{"kind", e.kind()}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
  try {
    hsie::run(cfg, out_dir);
  } catch (const hsie::Error& e) {
    nlohmann::json err{{"error", {{"kind", e.kind()}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    nlohmann::json err{
        {"error", {{"kind", "internal"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hardy space infinite element solver for Helmholtz scattering "
               "and resonance problems"};
  app.require_subcommand(1);

  const std::vector<std::string> tasks = {"solve1d", "scatter", "resonance",
                                          "dtn_test", "convergence"};
  std::string config_path, out_dir;
  int threads = 0;
  std::string chosen;
  for (const auto& t : tasks) {
    auto* sub = app.add_subcommand(t);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--threads", threads,
                    "worker threads (HSIE_THREADS overrides)");
    sub->callback([&chosen, t]() { chosen = t; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }
  return run_task(chosen, config_path, out_dir, threads);
}
