#include "nagplan/cutpoint.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "nagplan/errors.hpp"

namespace nagplan {

namespace {

using Entry = std::tuple<double, std::uint64_t, std::uint32_t>;
using MinHeap = std::priority_queue<Entry, std::vector<Entry>, std::greater<>>;

// Walks came_from from `from`, starting with `accumulated` already travelled.
NagVertexId walk_back(const NagGraph& graph, NagVertexId from, double accumulated, double target) {
  const NagVertex* cur = &graph.vertex(from);
  std::size_t steps = 0;
  while (accumulated < target && cur->came_from) {
    if (++steps > graph.size()) throw InternalError("came_from chain does not terminate");
    accumulated += cur->came_from_cost;
    if (!graph.contains(*cur->came_from)) throw InternalError("came_from chain refers to a missing vertex");
    cur = &graph.vertex(*cur->came_from);
  }
  return cur->id;
}

}  // namespace

void CutPointParams::validate() const {
  if (!(eps_i >= 0.0 && eps_i <= 1.0)) throw InvalidQuery("eps_i must lie in [0, 1]");
  if (!(eps_g >= 0.0)) throw InvalidQuery("eps_g must be >= 0");
  if (!(r_l > 0.0 && r_l < 1.0)) throw InvalidQuery("r_l must lie in (0, 1)");
  if (!(eps_lower >= 0.0) || !(eps_upper >= 0.0)) throw InvalidQuery("separation bounds must be >= 0");
  if (!(eps_lower < eps_upper)) throw InvalidQuery("eps_lower must be < eps_upper");
  if (!(r_mp >= 0.0)) throw InvalidQuery("r_mp must be >= 0");
}

double intersection_ratio(const PnsSet& a, const PnsSet& b) {
  if (a.empty() || b.empty()) throw InvalidQuery("intersection_ratio of an empty set");
  return static_cast<double>(intersection_size(a, b)) / static_cast<double>(std::min(a.size(), b.size()));
}

NagVertexId get_path_point(const NagGraph& graph, NagVertexId w, double r_l) {
  const auto& v = graph.vertex(w);
  return walk_back(graph, w, 0.0, r_l * v.g);
}

std::optional<double> bounded_graph_distance(const NagGraph& graph, NagVertexId from, NagVertexId to,
                                             double radius) {
  const Environment& env = graph.environment();
  const Coord target = graph.vertex(to).q;
  auto h = [&](std::uint32_t id) { return env.euclidean(graph.vertices()[id].q, target); };
  std::unordered_map<std::uint32_t, double> dist;
  MinHeap open;
  std::uint64_t seq = 0;
  dist[from.value] = 0.0;
  open.emplace(h(from.value), seq++, from.value);
  while (!open.empty()) {
    const auto [f, s, id] = open.top();
    open.pop();
    const double d = dist[id];
    if (f > d + h(id)) continue;
    if (d > radius) break;
    if (id == to.value) return d;
    for (const auto& e : graph.edges(NagVertexId{id})) {
      const double cand = d + e.cost;
      if (cand > radius) continue;
      auto it = dist.find(e.to.value);
      if (it == dist.end() || cand < it->second) {
        dist[e.to.value] = cand;
        open.emplace(cand + h(e.to.value), seq++, e.to.value);
      }
    }
  }
  return std::nullopt;
}

CutPointRegion generate_cut_point_region(const NagGraph& graph, NagVertexId seed, double radius) {
  CutPointRegion region;
  region.seed = seed;
  std::unordered_map<std::uint32_t, double> dist;
  MinHeap open;
  std::uint64_t seq = 0;
  dist[seed.value] = 0.0;
  open.emplace(0.0, seq++, seed.value);
  while (!open.empty()) {
    const auto [d, s, id] = open.top();
    open.pop();
    if (d > dist[id]) continue;
    region.coords.push_back(graph.vertices()[id].q);
    for (const auto& e : graph.edges(NagVertexId{id})) {
      const double cand = d + e.cost;
      if (cand > radius) continue;
      auto it = dist.find(e.to.value);
      if (it == dist.end() || cand < it->second) {
        dist[e.to.value] = cand;
        open.emplace(cand, seq++, e.to.value);
      }
    }
  }
  std::sort(region.coords.begin(), region.coords.end());
  region.coords.erase(std::unique(region.coords.begin(), region.coords.end()), region.coords.end());
  return region;
}

CutPointCheck cut_point_check(const NagGraph& graph, NagVertexId w, const CandidateVertex& candidate,
                              const CutPointParams& params) {
  CutPointCheck out;
  const auto& wv = graph.vertex(w);
  if (candidate.pns == nullptr || candidate.pns->empty() || wv.neighborhood().empty()) return out;
  out.ratio = intersection_ratio(wv.neighborhood(), *candidate.pns);
  if (out.ratio > params.eps_i) return out;
  if (!wv.came_from) return out;
  const auto& parent = graph.vertex(candidate.parent);
  if (std::abs(graph.vertex(*wv.came_from).g - parent.g) > params.eps_g) return out;

  const double target = params.r_l * wv.g;
  const NagVertexId p_w = walk_back(graph, w, 0.0, target);
  // The candidate is not in the graph; start from its parent with one edge already walked.
  const NagVertexId p_v = walk_back(graph, candidate.parent, candidate.parent_edge_cost, target);
  out.separation = bounded_graph_distance(graph, p_w, p_v, params.eps_upper);
  if (!out.separation) return out;
  if (*out.separation > params.eps_lower && *out.separation <= params.eps_upper) {
    out.is_cut = true;
    out.region = generate_cut_point_region(graph, w, params.r_mp);
  }
  return out;
}

bool touches_cut_region(const NagGraph& graph, std::span<const Coord> path) {
  if (graph.regions().empty()) return false;
  const Environment& env = graph.environment();
  for (const Coord& q : path) {
    if (graph.is_blocked(q)) return true;
    bool near = false;
    env.for_each_neighbor(q, [&](const Coord& n, double) { near = near || graph.is_blocked(n); });
    if (near) return true;
  }
  return false;
}

}  // namespace nagplan
