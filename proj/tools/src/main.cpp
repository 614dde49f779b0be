#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nagplan_cli/config.hpp"
#include "nagplan_cli/runner.hpp"

int main(int argc, char** argv) {
  using namespace nagplan::cli;

  CLI::App app{"Multi-path planner on neighbourhood-augmented graphs"};
  std::string mode_name;
  std::string config_path;
  std::string out_dir = ".";
  bool no_timing = false;
  bool no_render = false;
  app.add_option("mode", mode_name, "plan | explore | lcs | mission | oracle")
      ->required()
      ->check(CLI::IsMember({"plan", "explore", "lcs", "mission", "oracle"}));
  app.add_option("--config", config_path, "JSON query configuration")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--no-timing", no_timing, "omit elapsed_ms so results are byte-reproducible");
  app.add_flag("--no-render", no_render, "skip the SVG / polyline render");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfigError;
  }

  PlanConfig cfg;
  try {
    cfg = load_config(config_path, mode_from_string(mode_name));
  } catch (const ConfigError& e) {
    std::cerr << "nagplan: " << e.what() << "\n";
    return kExitConfigError;
  }
  if (no_timing) cfg.output.timing = false;
  if (no_render) cfg.output.render = false;

  const RunOutput out = run(cfg);
  try {
    write_outputs(out, cfg, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "nagplan: " << e.what() << "\n";
    return kExitConfigError;
  }
  if (!out.message.empty()) std::cerr << "nagplan: " << out.message << "\n";
  return out.exit_code;
}
