#include "nagplan_cli/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "nagplan/errors.hpp"
#include "nagplan/oracle.hpp"
#include "nagplan/tether.hpp"
#include "nagplan_cli/render.hpp"

namespace nagplan::cli {
namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

ordered coord_json(const Coord& q, bool three_d) {
  return three_d ? ordered::array({q.x, q.y, q.z}) : ordered::array({q.x, q.y});
}

ordered coords_json(const std::vector<Coord>& qs, bool three_d) {
  ordered out = ordered::array();
  for (const auto& q : qs) out.push_back(coord_json(q, three_d));
  return out;
}

ordered echo_config(const PlanConfig& c) {
  const bool three_d = c.env.format == EnvFormat::kVoxelJson3d;
  ordered o;
  ordered env;
  if (c.env.path) env["path"] = *c.env.path;
  if (c.env.data) env["data_bytes"] = c.env.data->size();
  env["format"] = to_string(c.env.format);
  env["topology"] = to_string(c.env.load.topology);
  env["cm"] = c.env.load.cm;
  env["obstacle_threshold"] = c.env.load.obstacle_threshold;
  o["environment"] = env;
  if (c.start) o["start"] = coord_json(*c.start, three_d);
  if (c.goal) o["goal"] = coord_json(*c.goal, three_d);
  if (!c.goals.empty()) o["goals"] = coords_json(c.goals, three_d);
  if (c.base) o["base"] = coord_json(*c.base, three_d);
  o["n_p"] = c.n_p;
  if (c.tether_length) o["tether_length"] = *c.tether_length;
  o["start_class"] = c.start_class;
  o["pns"] = {{"r_n", c.pns.r_n}, {"omega", c.pns.omega}, {"r_b", c.pns.r_b}, {"d_min", c.pns.d_min}};
  if (c.cut_points) {
    const auto& p = *c.cut_points;
    o["cut_points"] = {{"eps_i", p.eps_i},         {"eps_g", p.eps_g},         {"r_l", p.r_l},
                       {"eps_lower", p.eps_lower}, {"eps_upper", p.eps_upper}, {"r_mp", p.r_mp}};
  } else {
    o["cut_points"] = "disabled";
  }
  o["algorithm"] = to_string(c.algorithm);
  o["budget"] = c.budget ? ordered(*c.budget) : ordered(nullptr);
  if (c.mode == Mode::kOracle) o["oracle"] = {{"kind", to_string(c.oracle)}, {"k", c.oracle_k}};
  return o;
}

ordered regions_json(const NagGraph& g, bool three_d) {
  ordered out = ordered::array();
  for (const auto& r : g.regions()) {
    out.push_back({{"seed", coord_json(g.vertex(r.seed).q, three_d)}, {"coords", coords_json(r.coords, three_d)}});
  }
  return out;
}

ordered graph_json(const NagGraph& g, bool three_d) {
  ordered vertices = ordered::array();
  ordered edges = ordered::array();
  for (const auto& v : g.vertices()) {
    vertices.push_back({{"id", v.id.value},
                        {"q", coord_json(v.q, three_d)},
                        {"g", v.g},
                        {"came_from", v.came_from ? ordered(v.came_from->value) : ordered(nullptr)}});
    for (const auto& e : g.edges(v.id)) {
      if (v.id < e.to) edges.push_back({v.id.value, e.to.value, e.cost});
    }
  }
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

ordered lcs_json(const LcsResult& r, bool three_d) {
  ordered tethers = ordered::array();
  for (const auto& t : r.tether_configs) tethers.push_back(coords_json(t, three_d));
  double max_tether = 0.0;
  for (double t : r.tether_lengths) max_tether = std::max(max_tether, t);
  return {{"coords", coords_json(r.robot_path, three_d)},
          {"length", r.length},
          {"valid", r.valid},
          {"max_tether_length", max_tether},
          {"tether_lengths", r.tether_lengths},
          {"tether_configs", std::move(tethers)}};
}

struct Collected {
  std::vector<RenderPath> paths;
  std::vector<CutPointRegion> regions;
};

void add_path(Collected& c, ordered& paths, std::vector<Coord> coords, double length, bool valid, bool three_d) {
  paths.push_back({{"coords", coords_json(coords, three_d)}, {"length", length}, {"valid", valid}});
  c.paths.push_back(RenderPath{std::move(coords), length, valid});
}

NagVertexId pick_start(const Workspace& ws, const Coord& q, std::size_t rank) {
  const auto classes = tether_classes_at(ws.graph, q);
  if (classes.empty()) throw UnreachableUnderConstraint("start " + to_string(q) + " is outside the tether workspace");
  if (rank >= classes.size()) {
    throw ConfigError("start_class " + std::to_string(rank) + " out of range: " + std::to_string(classes.size()) +
                      " tether classes at " + to_string(q));
  }
  return classes[rank];
}

int run_mode(const PlanConfig& cfg, const Environment& env, ordered& result, Collected& col) {
  const bool three_d = env.is_3d();
  ordered paths = ordered::array();
  int code = kExitOk;

  switch (cfg.mode) {
    case Mode::kPlan: {
      StopCriterion stop;
      stop.goal = GoalStop{*cfg.goal, cfg.n_p};
      stop.max_expansions = cfg.budget;
      SearchOptions opts;
      opts.algorithm = cfg.algorithm;
      opts.cut_points = cfg.cut_points;
      const auto r = search_nag(env, *cfg.start, stop, cfg.pns, opts);
      for (const auto id : r.goal_ids) {
        auto p = reconstruct_path(r.graph, id);
        const bool valid = !touches_cut_region(r.graph, p.coords);
        add_path(col, paths, std::move(p.coords), p.length, valid, three_d);
      }
      col.regions = r.graph.regions();
      result["paths"] = std::move(paths);
      result["goal_count"] = r.goal_ids.size();
      result["expansions"] = r.expansions;
      result["graph_vertices"] = r.graph.size();
      result["cut_checks"] = r.cut_checks;
      result["stop_reason"] = to_string(r.stop_reason);
      result["regions"] = regions_json(r.graph, three_d);
      if (static_cast<int>(r.goal_ids.size()) < cfg.n_p) {
        code = (r.goal_ids.empty() && r.stop_reason == StopReason::kExhausted) ? kExitUnreachable : kExitPartial;
      }
      break;
    }
    case Mode::kExplore:
    case Mode::kLcs:
    case Mode::kMission: {
      const auto ws = explore_workspace(env, TetherSpec{*cfg.base, *cfg.tether_length}, cfg.pns, cfg.cut_points,
                                        cfg.budget);
      std::size_t multi = 0;
      std::size_t max_classes = 0;
      {
        std::vector<Coord> seen;
        for (const auto& v : ws.graph.vertices()) {
          const auto n = ws.graph.vertices_at(v.q).size();
          max_classes = std::max(max_classes, n);
          if (n > 1 && ws.graph.vertices_at(v.q).front() == v.id) ++multi;
        }
      }
      result["workspace"] = {{"vertices", ws.graph.size()},
                             {"edges", ws.graph.edge_count()},
                             {"coords_with_multiple_classes", multi},
                             {"max_classes_per_coord", max_classes},
                             {"stop_reason", to_string(ws.stop_reason)},
                             {"expansions", ws.expansions}};
      result["expansions"] = ws.expansions;
      result["stop_reason"] = to_string(ws.stop_reason);
      result["regions"] = regions_json(ws.graph, three_d);
      if (cfg.output.dump_graph) result["graph"] = graph_json(ws.graph, three_d);
      col.regions = ws.graph.regions();
      if (ws.stop_reason == StopReason::kBudget) code = kExitPartial;
      if (cfg.mode == Mode::kExplore) {
        result["paths"] = std::move(paths);
        break;
      }
      const Coord start_q = cfg.start.value_or(*cfg.base);
      const NagVertexId start = pick_start(ws, start_q, cfg.start_class);
      if (cfg.mode == Mode::kLcs) {
        const auto r = lcs(ws, start, *cfg.goal);
        paths.push_back(lcs_json(r, three_d));
        col.paths.push_back(RenderPath{r.robot_path, r.length, r.valid});
        result["paths"] = std::move(paths);
        break;
      }
      const auto m = plan_mission(ws, start, cfg.goals);
      for (const auto& leg : m.legs) {
        paths.push_back(lcs_json(leg, three_d));
        col.paths.push_back(RenderPath{leg.robot_path, leg.length, leg.valid});
      }
      result["paths"] = std::move(paths);
      result["legs_completed"] = m.legs.size();
      if (!m.ok()) {
        result["failed_leg"] = *m.failed_leg;
        result["error"] = *m.error;
        code = kExitUnreachable;
      }
      break;
    }
    case Mode::kOracle: {
      const int k = cfg.oracle_k;
      ordered lengths = ordered::array();
      switch (cfg.oracle) {
        case OracleKind::kPlainDijkstra: {
          const auto field = oracle::plain_dijkstra(env, *cfg.start);
          const auto goal = env.normalize(*cfg.goal);
          if (!goal || !env.is_free(*goal)) throw InvalidQuery("goal " + to_string(*cfg.goal) + " is not a free cell");
          const double d = field.dist[env.index(*goal)];
          if (std::isfinite(d)) {
            add_path(col, paths, field.path_to(env, *goal), d, true, three_d);
            lengths.push_back(d);
          } else {
            code = kExitUnreachable;
          }
          break;
        }
        case OracleKind::kHSignature: {
          const auto rays = oracle::make_ray_set(env);
          const auto classes = oracle::h_augmented_dijkstra(env, *cfg.start, *cfg.goal, rays, k);
          for (const auto& h : classes) {
            add_path(col, paths, h.path, h.length, true, three_d);
            paths.back()["word"] = oracle::word_to_string(h.word);
            lengths.push_back(h.length);
          }
          if (classes.empty()) code = kExitUnreachable;
          else if (static_cast<int>(classes.size()) < k) code = kExitPartial;
          break;
        }
        case OracleKind::kCylinderUnrolled: {
          for (double d : oracle::cylinder_unrolled_klengths(env, *cfg.start, *cfg.goal, k)) lengths.push_back(d);
          if (lengths.empty()) code = kExitUnreachable;
          else if (static_cast<int>(lengths.size()) < k) code = kExitPartial;
          break;
        }
        case OracleKind::kBruteForce: {
          ordered classes = ordered::array();
          for (const auto& c : oracle::brute_force_k_geodesics(env, *cfg.start, *cfg.goal, k)) {
            classes.push_back({{"class", c.key}, {"length", c.length}});
            lengths.push_back(c.length);
          }
          result["classes"] = std::move(classes);
          if (lengths.empty()) code = kExitUnreachable;
          else if (static_cast<int>(lengths.size()) < k) code = kExitPartial;
          break;
        }
      }
      result["paths"] = std::move(paths);
      result["lengths"] = std::move(lengths);
      break;
    }
  }
  return code;
}

}  // namespace

RunOutput run(const PlanConfig& cfg) {
  RunOutput out;
  ordered result;
  result["schema_version"] = 1;
  result["mode"] = to_string(cfg.mode);
  result["config"] = echo_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const std::string bytes = cfg.env.path ? read_file(*cfg.env.path) : *cfg.env.data;
    const Environment env = load_environment(bytes, cfg.env.format, cfg.env.load);
    result["environment"] = {{"dims", {env.dims().nx, env.dims().ny, env.dims().nz}},
                             {"topology", to_string(env.topology())},
                             {"cm", env.cm()},
                             {"free_cells", env.free_cell_count()}};
    Collected col;
    out.exit_code = run_mode(cfg, env, result, col);
    if (cfg.output.render) {
      if (env.is_3d()) {
        out.render = render_polylines(env, col.paths, col.regions);
        out.render_extension = "json";
      } else {
        out.render = render_svg(env, col.paths, col.regions);
        out.render_extension = "svg";
      }
    }
  } catch (const UnreachableUnderConstraint& e) {
    out.exit_code = kExitUnreachable;
    out.message = e.what();
    result["error"] = e.what();
  } catch (const ParseError& e) {
    out.exit_code = kExitConfigError;
    out.message = e.what();
    result["error"] = e.what();
  } catch (const InvalidQuery& e) {
    out.exit_code = kExitConfigError;
    out.message = e.what();
    result["error"] = e.what();
  } catch (const ConfigError& e) {
    out.exit_code = kExitConfigError;
    out.message = e.what();
    result["error"] = e.what();
  } catch (const OracleTimeout& e) {
    out.exit_code = kExitPartial;
    out.message = e.what();
    result["error"] = e.what();
  } catch (const std::runtime_error& e) {
    // Unreadable environment file.
    out.exit_code = kExitConfigError;
    out.message = e.what();
    result["error"] = e.what();
  }
  if (cfg.output.timing) {
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    result["elapsed_ms"] = std::round(ms * 1000.0) / 1000.0;
  }
  result["exit_code"] = out.exit_code;
  out.result_json = result.dump(2) + "\n";
  return out;
}

void write_outputs(const RunOutput& out, const PlanConfig& config, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto write = [&](const std::string& name, const std::string& content) {
    const auto p = std::filesystem::path(out_dir) / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << content;
  };
  write(config.output.result_file, out.result_json);
  if (!out.render.empty()) write("render." + out.render_extension, out.render);
}

}  // namespace nagplan::cli
