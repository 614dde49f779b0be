#include "nagplan_cli/config.hpp"

#include <filesystem>
#include <set>

#include "json.hpp"
#include "nagplan/errors.hpp"

namespace nagplan::cli {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

const json& require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  return j;
}

double get_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + " must be a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + " must be an integer");
  return j.get<int>();
}

Coord get_coord(const json& j, const std::string& where, bool three_d) {
  const std::size_t want = three_d ? 3 : 2;
  if (!j.is_array() || j.size() != want) {
    throw ConfigError(where + " must be an array of " + std::to_string(want) + " integers");
  }
  Coord q;
  q.x = get_int(j[0], where + "[0]");
  q.y = get_int(j[1], where + "[1]");
  if (three_d) q.z = get_int(j[2], where + "[2]");
  return q;
}

void parse_pns(const json& j, PnsParams& p) {
  require_object(j, "pns");
  check_keys(j, {"r_n", "omega", "r_b", "d_min"}, "pns");
  if (j.contains("r_n")) p.r_n = get_number(j["r_n"], "pns.r_n");
  if (j.contains("omega")) p.omega = get_number(j["omega"], "pns.omega");
  if (j.contains("r_b")) p.r_b = get_int(j["r_b"], "pns.r_b");
  if (j.contains("d_min")) p.d_min = get_int(j["d_min"], "pns.d_min");
}

void parse_cut_points(const json& j, CutPointParams& c) {
  check_keys(j, {"eps_i", "eps_g", "r_l", "eps_lower", "eps_upper", "r_mp"}, "cut_points");
  if (j.contains("eps_i")) c.eps_i = get_number(j["eps_i"], "cut_points.eps_i");
  if (j.contains("eps_g")) c.eps_g = get_number(j["eps_g"], "cut_points.eps_g");
  if (j.contains("r_l")) c.r_l = get_number(j["r_l"], "cut_points.r_l");
  if (j.contains("eps_lower")) c.eps_lower = get_number(j["eps_lower"], "cut_points.eps_lower");
  if (j.contains("eps_upper")) c.eps_upper = get_number(j["eps_upper"], "cut_points.eps_upper");
  if (j.contains("r_mp")) c.r_mp = get_number(j["r_mp"], "cut_points.r_mp");
}

OracleKind oracle_from_string(const std::string& s) {
  if (s == "plain-dijkstra") return OracleKind::kPlainDijkstra;
  if (s == "h-signature") return OracleKind::kHSignature;
  if (s == "cylinder-unrolled") return OracleKind::kCylinderUnrolled;
  if (s == "brute-force") return OracleKind::kBruteForce;
  throw ConfigError("unknown oracle kind '" + s + "'");
}

}  // namespace

std::string to_string(Mode m) {
  switch (m) {
    case Mode::kPlan: return "plan";
    case Mode::kExplore: return "explore";
    case Mode::kLcs: return "lcs";
    case Mode::kMission: return "mission";
    case Mode::kOracle: return "oracle";
  }
  return "?";
}

std::optional<Mode> mode_from_string(const std::string& s) {
  for (Mode m : {Mode::kPlan, Mode::kExplore, Mode::kLcs, Mode::kMission, Mode::kOracle}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::string to_string(OracleKind k) {
  switch (k) {
    case OracleKind::kPlainDijkstra: return "plain-dijkstra";
    case OracleKind::kHSignature: return "h-signature";
    case OracleKind::kCylinderUnrolled: return "cylinder-unrolled";
    case OracleKind::kBruteForce: return "brute-force";
  }
  return "?";
}

PlanConfig parse_config(const std::string& json_text, const std::string& base_dir, std::optional<Mode> mode) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_object(root, "config");
  check_keys(root, {"mode", "environment", "start", "goal", "goals", "base", "n_p", "tether_length", "start_class",
                    "pns", "cut_points", "algorithm", "budget", "oracle", "output"},
             "config");

  PlanConfig cfg;
  if (root.contains("mode")) {
    if (!root["mode"].is_string()) throw ConfigError("mode must be a string");
    const auto m = mode_from_string(root["mode"].get<std::string>());
    if (!m) throw ConfigError("unknown mode '" + root["mode"].get<std::string>() + "'");
    if (mode && *mode != *m) throw ConfigError("config mode '" + to_string(*m) + "' conflicts with '" + to_string(*mode) + "'");
    cfg.mode = *m;
  } else if (mode) {
    cfg.mode = *mode;
  }

  if (!root.contains("environment")) throw ConfigError("missing 'environment'");
  const json& e = require_object(root["environment"], "environment");
  check_keys(e, {"path", "data", "format", "topology", "cm", "obstacle_threshold"}, "environment");
  if (e.contains("path") == e.contains("data")) throw ConfigError("environment needs exactly one of 'path' or 'data'");
  if (e.contains("path")) {
    if (!e["path"].is_string()) throw ConfigError("environment.path must be a string");
    std::filesystem::path p(e["path"].get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    cfg.env.path = p.string();
  } else {
    if (!e["data"].is_string()) throw ConfigError("environment.data must be a string");
    cfg.env.data = e["data"].get<std::string>();
  }
  if (!e.contains("format") || !e["format"].is_string()) throw ConfigError("environment.format is required");
  const auto fmt = env_format_from_string(e["format"].get<std::string>());
  if (!fmt) throw ConfigError("unknown environment format '" + e["format"].get<std::string>() + "'");
  cfg.env.format = *fmt;
  const bool three_d = cfg.env.format == EnvFormat::kVoxelJson3d;
  if (e.contains("topology")) {
    if (!e["topology"].is_string()) throw ConfigError("environment.topology must be a string");
    const auto t = topology_from_string(e["topology"].get<std::string>());
    if (!t) throw ConfigError("unknown topology '" + e["topology"].get<std::string>() + "'");
    if ((*t == Topology::kGrid3d) != three_d) throw ConfigError("topology does not match the environment format");
    cfg.env.load.topology = *t;
  } else {
    cfg.env.load.topology = three_d ? Topology::kGrid3d : Topology::kPlanar2d;
  }
  // The cost multiplier has no meaningful default for a given map.
  if (!e.contains("cm")) throw ConfigError("environment.cm is required");
  cfg.env.load.cm = get_number(e["cm"], "environment.cm");
  if (cfg.env.load.cm < 0.0) throw ConfigError("environment.cm must be >= 0");
  if (e.contains("obstacle_threshold")) {
    cfg.env.load.obstacle_threshold = get_int(e["obstacle_threshold"], "environment.obstacle_threshold");
  }

  if (root.contains("start")) cfg.start = get_coord(root["start"], "start", three_d);
  if (root.contains("goal")) cfg.goal = get_coord(root["goal"], "goal", three_d);
  if (root.contains("base")) cfg.base = get_coord(root["base"], "base", three_d);
  if (root.contains("goals")) {
    if (!root["goals"].is_array()) throw ConfigError("goals must be an array");
    for (std::size_t i = 0; i < root["goals"].size(); ++i) {
      cfg.goals.push_back(get_coord(root["goals"][i], "goals[" + std::to_string(i) + "]", three_d));
    }
  }
  if (root.contains("n_p")) cfg.n_p = get_int(root["n_p"], "n_p");
  if (cfg.n_p < 1) throw ConfigError("n_p must be >= 1");
  if (root.contains("tether_length")) {
    cfg.tether_length = get_number(root["tether_length"], "tether_length");
    if (*cfg.tether_length < 0.0) throw ConfigError("tether_length must be >= 0");
  }
  if (root.contains("start_class")) {
    const int c = get_int(root["start_class"], "start_class");
    if (c < 0) throw ConfigError("start_class must be >= 0");
    cfg.start_class = static_cast<std::size_t>(c);
  }

  cfg.pns = three_d ? PnsParams::defaults_3d() : PnsParams::defaults_2d();
  if (root.contains("pns")) parse_pns(root["pns"], cfg.pns);
  try {
    cfg.pns.validate();
  } catch (const InvalidQuery& ex) {
    throw ConfigError(ex.what());
  }

  if (root.contains("cut_points")) {
    const json& c = root["cut_points"];
    if (c.is_string()) {
      if (c.get<std::string>() != "disabled") throw ConfigError("cut_points must be \"disabled\" or an object");
    } else {
      require_object(c, "cut_points");
      CutPointParams params = three_d ? CutPointParams::defaults_3d() : CutPointParams::defaults_2d();
      parse_cut_points(c, params);
      try {
        params.validate();
      } catch (const InvalidQuery& ex) {
        throw ConfigError(ex.what());
      }
      cfg.cut_points = params;
    }
  }

  if (root.contains("algorithm")) {
    const json& a = root["algorithm"];
    if (a == "dijkstra") {
      cfg.algorithm = Algorithm::kDijkstra;
    } else if (a == "astar") {
      cfg.algorithm = Algorithm::kAStar;
    } else {
      throw ConfigError("algorithm must be \"dijkstra\" or \"astar\"");
    }
  }
  if (root.contains("budget")) {
    const int b = get_int(root["budget"], "budget");
    if (b < 1) throw ConfigError("budget must be >= 1");
    cfg.budget = static_cast<std::size_t>(b);
  }

  if (root.contains("oracle")) {
    const json& o = require_object(root["oracle"], "oracle");
    check_keys(o, {"kind", "k"}, "oracle");
    if (o.contains("kind")) {
      if (!o["kind"].is_string()) throw ConfigError("oracle.kind must be a string");
      cfg.oracle = oracle_from_string(o["kind"].get<std::string>());
    }
    if (o.contains("k")) cfg.oracle_k = get_int(o["k"], "oracle.k");
    if (cfg.oracle_k < 1) throw ConfigError("oracle.k must be >= 1");
  }

  if (root.contains("output")) {
    const json& o = require_object(root["output"], "output");
    check_keys(o, {"result", "render", "timing", "dump_graph"}, "output");
    if (o.contains("result")) {
      if (!o["result"].is_string()) throw ConfigError("output.result must be a string");
      cfg.output.result_file = o["result"].get<std::string>();
    }
    auto flag = [&](const char* key, bool& dst) {
      if (!o.contains(key)) return;
      if (!o[key].is_boolean()) throw ConfigError(std::string("output.") + key + " must be a boolean");
      dst = o[key].get<bool>();
    };
    flag("render", cfg.output.render);
    flag("timing", cfg.output.timing);
    flag("dump_graph", cfg.output.dump_graph);
  }

  auto need = [&](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("mode '") + to_string(cfg.mode) + "' requires " + what);
  };
  switch (cfg.mode) {
    case Mode::kPlan:
    case Mode::kOracle:
      need(cfg.start.has_value(), "'start'");
      need(cfg.goal.has_value(), "'goal'");
      break;
    case Mode::kExplore:
      need(cfg.base.has_value(), "'base'");
      need(cfg.tether_length.has_value(), "'tether_length'");
      break;
    case Mode::kLcs:
      need(cfg.base.has_value(), "'base'");
      need(cfg.tether_length.has_value(), "'tether_length'");
      need(cfg.goal.has_value(), "'goal'");
      break;
    case Mode::kMission:
      need(cfg.base.has_value(), "'base'");
      need(cfg.tether_length.has_value(), "'tether_length'");
      need(!cfg.goals.empty(), "a non-empty 'goals' list");
      break;
  }
  return cfg;
}

PlanConfig load_config(const std::string& path, std::optional<Mode> mode) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(text, dir.empty() ? "." : dir.string(), mode);
}

}  // namespace nagplan::cli
