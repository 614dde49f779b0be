#include "nagplan/tether.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

#include "nagplan/errors.hpp"

namespace nagplan {

Workspace explore_workspace(const Environment& env, const TetherSpec& tether, const PnsParams& params,
                            const std::optional<CutPointParams>& cut_points,
                            std::optional<std::size_t> max_expansions) {
  if (!(tether.length >= 0.0)) throw InvalidQuery("tether length must be >= 0");
  if (!env.is_free(tether.base)) throw InvalidQuery("tether base " + to_string(tether.base) + " is not a free cell");
  StopCriterion stop;
  stop.radius = tether.length;
  stop.max_expansions = max_expansions;
  SearchOptions options;
  options.cut_points = cut_points;
  auto result = search_nag(env, tether.base, stop, params, options);
  return Workspace{result.graph.closed_subgraph(), result.stop_reason, result.expansions, tether.length};
}

std::vector<NagVertexId> tether_classes_at(const NagGraph& graph, const Coord& q) {
  const auto at = graph.vertices_at(q);
  std::vector<NagVertexId> out(at.begin(), at.end());
  std::sort(out.begin(), out.end(), [&](NagVertexId a, NagVertexId b) {
    const double ga = graph.vertex(a).g;
    const double gb = graph.vertex(b).g;
    return ga != gb ? ga < gb : a < b;
  });
  return out;
}

LcsResult lcs(const Workspace& workspace, NagVertexId start_vertex, const Coord& q_g) {
  const NagGraph& graph = workspace.graph;
  graph.vertex(start_vertex);
  const Environment& env = graph.environment();
  const auto goal = env.normalize(q_g);
  if (!goal || !env.is_free(*goal)) throw InvalidQuery("goal " + to_string(q_g) + " is not a free cell");
  if (graph.vertices_at(*goal).empty()) {
    throw UnreachableUnderConstraint("goal " + to_string(q_g) + " is outside the tether workspace");
  }

  const std::size_t n = graph.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<NagVertexId> parent(n);
  using Entry = std::tuple<double, std::uint64_t, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::uint64_t seq = 0;
  dist[start_vertex.value] = 0.0;
  open.emplace(0.0, seq++, start_vertex.value);
  std::optional<NagVertexId> reached;
  while (!open.empty()) {
    const auto [d, s, id] = open.top();
    open.pop();
    if (d > dist[id]) continue;
    if (graph.vertices()[id].q == *goal) {
      reached = NagVertexId{id};
      break;
    }
    for (const auto& e : graph.edges(NagVertexId{id})) {
      const double cand = d + e.cost;
      if (cand < dist[e.to.value]) {
        dist[e.to.value] = cand;
        parent[e.to.value] = NagVertexId{id};
        open.emplace(cand, seq++, e.to.value);
      }
    }
  }
  if (!reached) {
    throw UnreachableUnderConstraint("goal " + to_string(q_g) + " is not connected to the start tether state");
  }

  LcsResult out;
  for (NagVertexId cur = *reached; cur.valid(); cur = parent[cur.value]) {
    out.vertices.push_back(cur);
    if (cur == start_vertex) break;
  }
  std::reverse(out.vertices.begin(), out.vertices.end());
  for (std::size_t i = 0; i < out.vertices.size(); ++i) {
    const auto& v = graph.vertex(out.vertices[i]);
    out.robot_path.push_back(v.q);
    if (i > 0) {
      const auto edges = graph.edges(out.vertices[i - 1]);
      const auto e = std::find_if(edges.begin(), edges.end(), [&](const NagEdge& x) { return x.to == v.id; });
      if (e == edges.end()) throw InternalError("LCS path uses a missing edge");
      out.length += e->cost;
    }
    auto tether = reconstruct_path(graph, v.id);
    out.tether_configs.push_back(std::move(tether.coords));
    out.tether_lengths.push_back(tether.length);
  }
  out.valid = !touches_cut_region(graph, out.robot_path);
  return out;
}

MissionResult plan_mission(const Workspace& workspace, NagVertexId start_vertex, const std::vector<Coord>& goals) {
  if (goals.empty()) throw InvalidQuery("mission needs at least one goal");
  MissionResult out;
  NagVertexId current = start_vertex;
  for (std::size_t i = 0; i < goals.size(); ++i) {
    try {
      out.legs.push_back(lcs(workspace, current, goals[i]));
    } catch (const UnreachableUnderConstraint& e) {
      out.error = e.what();
      out.failed_leg = i;
      return out;
    }
    current = out.legs.back().goal_vertex();
  }
  return out;
}

}  // namespace nagplan
