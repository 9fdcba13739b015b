#include "pwe/pipeline.hpp"
#include "pwe/svg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV-deployed static-metasurface planner and ray tracer"};

  std::string scenario_path;
  std::string svg_path;
  std::string mode = "bounce_only";
  pwe::RunFlags flags;
  unsigned threads = 1;

  app.add_option("scenario", scenario_path, "Scenario file (.pwe)")->required();
  app.add_option("--rays", flags.rays, "Rays launched from the Tx")
      ->default_val(100000);
  app.add_option("--seed", flags.seed, "Run seed recorded in the report")
      ->default_val(0);
  app.add_option("--mode", mode, "Propagation model: bounce_only or friis")
      ->check(CLI::IsMember({"bounce_only", "friis"}));
  app.add_option("--max-bounces", flags.max_bounces, "Bounce limit per ray")
      ->default_val(8);
  app.add_flag("--no-pwe", flags.no_pwe, "Skip planning; simulate the bare scene");
  app.add_option("--svg", svg_path, "Write an SVG picture of the traces");
  app.add_option("--k", flags.k, "Disjoint paths requested")->default_val(1);
  app.add_option("--retries", flags.retries, "Planner retry budget")
      ->default_val(10);
  app.add_option("--tolerance", flags.tolerance_deg,
                 "Angular tolerance in degrees")
      ->default_val(10.0);
  app.add_option("--threads", threads, "Worker threads for tracing")
      ->default_val(1);

  CLI11_PARSE(app, argc, argv);

  try {
    const pwe::ScenarioFile scenario = pwe::parse_scenario(read_file(scenario_path));

    pwe::PropagationMode mode_value = mode == "friis"
                                          ? pwe::PropagationMode::Friis
                                          : pwe::PropagationMode::BounceOnly;
    flags.mode_override = &mode_value;
    flags.threads = threads;

    const pwe::RunReport report = pwe::run(scenario, flags);
    std::cout << report.text;
    std::cerr << "elapsed: " << report.elapsed_seconds << " s\n";

    if (!svg_path.empty()) {
      pwe::export_svg(report.rx.traces, scenario.scene, scenario.slots,
                      report.deployment, svg_path);
    }
    return report.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
