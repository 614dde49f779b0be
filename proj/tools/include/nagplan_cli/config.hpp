#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nagplan/env_io.hpp"
#include "nagplan/environment.hpp"
#include "nagplan/cutpoint.hpp"
#include "nagplan/pns.hpp"
#include "nagplan/search.hpp"

namespace nagplan::cli {

enum class Mode { kPlan, kExplore, kLcs, kMission, kOracle };

std::string to_string(Mode m);
std::optional<Mode> mode_from_string(const std::string& s);

enum class OracleKind { kPlainDijkstra, kHSignature, kCylinderUnrolled, kBruteForce };

std::string to_string(OracleKind k);

/// Invalid or incomplete configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnvironmentSource {
  std::optional<std::string> path;  // resolved against the config file directory
  std::optional<std::string> data;  // inline file contents
  EnvFormat format = EnvFormat::kPgm2d;
  LoadOptions load;
};

struct OutputOptions {
  std::string result_file = "result.json";
  bool render = true;
  bool timing = true;
  /// Include the explored workspace graph (vertices and edges) in explore/lcs/mission output.
  bool dump_graph = false;
};

struct PlanConfig {
  Mode mode = Mode::kPlan;
  EnvironmentSource env;
  std::optional<Coord> start;
  std::optional<Coord> goal;
  std::vector<Coord> goals;
  std::optional<Coord> base;
  int n_p = 1;
  std::optional<double> tether_length;
  /// Index into the (g, id)-sorted tether classes at the start coordinate.
  std::size_t start_class = 0;
  PnsParams pns;
  std::optional<CutPointParams> cut_points;
  Algorithm algorithm = Algorithm::kDijkstra;
  std::optional<std::size_t> budget;
  OracleKind oracle = OracleKind::kPlainDijkstra;
  int oracle_k = 1;
  OutputOptions output;
};

/// Parses a JSON config. Parameter blocks that are absent take the 2D or 3D
/// defaults, chosen from the environment format. `base_dir` resolves relative
/// environment paths. A `mode` given here (from the command line) must agree
/// with the config's own "mode" key when both are present. Throws ConfigError.
PlanConfig parse_config(const std::string& json_text, const std::string& base_dir = ".",
                        std::optional<Mode> mode = std::nullopt);

PlanConfig load_config(const std::string& path, std::optional<Mode> mode = std::nullopt);

}  // namespace nagplan::cli
