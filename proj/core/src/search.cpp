#include "nagplan/search.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "nagplan/errors.hpp"

namespace nagplan {

namespace {

struct Successor {
  Coord q;
  double cost;
};

}  // namespace

void StopCriterion::validate() const {
  if (goal && goal->n_p < 1) throw InvalidQuery("n_p must be >= 1");
  if (radius && !(*radius >= 0.0)) throw InvalidQuery("radius must be >= 0");
  if (max_expansions && *max_expansions == 0) throw InvalidQuery("expansion budget must be positive");
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::kGoal:
      return "goal";
    case StopReason::kRadius:
      return "radius";
    case StopReason::kBudget:
      return "budget";
    case StopReason::kExhausted:
      return "exhausted";
  }
  return "unknown";
}

std::string to_string(Algorithm a) { return a == Algorithm::kDijkstra ? "dijkstra" : "astar"; }

bool stop_at_goal(const NagVertex& v, const Coord& q_g, int n_p, std::vector<NagVertexId>& found) {
  if (v.q != q_g) return false;
  if (std::find(found.begin(), found.end(), v.id) != found.end()) return false;
  found.push_back(v.id);
  return static_cast<int>(found.size()) == n_p;
}

SearchResult search_nag(const Environment& env, const Coord& q_s, const StopCriterion& stop,
                        const PnsParams& params, const SearchOptions& options) {
  params.validate();
  stop.validate();
  if (options.cut_points) options.cut_points->validate();
  const auto start = env.normalize(q_s);
  if (!start || !env.is_free(*start)) throw InvalidQuery("start " + to_string(q_s) + " is not a free cell");

  std::optional<Coord> goal;
  if (stop.goal) {
    goal = env.normalize(stop.goal->q_g);
    if (!goal || !env.is_free(*goal)) throw InvalidQuery("goal " + to_string(stop.goal->q_g) + " is not a free cell");
  }
  if (options.algorithm == Algorithm::kAStar && !goal) throw InvalidQuery("A* needs a goal criterion");

  SearchResult result{NagGraph(env), {}, StopReason::kExhausted, 0, 0, {}};
  NagGraph& graph = result.graph;
  const std::size_t budget =
      stop.max_expansions.value_or(50 * std::max<std::size_t>(1, env.free_cell_count()));

  auto heuristic = [&](const Coord& q) {
    return options.algorithm == Algorithm::kAStar ? env.euclidean(q, *goal) : 0.0;
  };

  using Entry = std::tuple<double, std::uint64_t, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::uint64_t seq = 0;
  auto push = [&](NagVertexId id) {
    auto& v = graph.vertex(id);
    v.in_open = true;
    open.emplace(v.g + heuristic(v.q), seq++, id.value);
  };

  const NagVertexId s = graph.add_vertex(*start, nullptr, 0.0, std::nullopt, 0.0);
  graph.vertex(s).pns = std::make_shared<const PnsSet>(PnsSet{s});
  push(s);

  PnsSearch pns_search;
  std::vector<std::uint32_t> mark;  // mark[id] == stamp <=> id is in the current PNS
  std::uint32_t stamp = 0;
  std::vector<Successor> successors;
  successors.reserve(26);

  while (true) {
    if (open.empty()) {
      result.stop_reason = StopReason::kExhausted;
      break;
    }
    const auto [key, s_, raw] = open.top();
    open.pop();
    const NagVertexId vid{raw};
    {
      const auto& v = graph.vertex(vid);
      if (!v.in_open || key > v.g + heuristic(v.q)) continue;  // stale entry
    }
    if (stop.radius && graph.vertex(vid).g > *stop.radius) {
      result.stop_reason = StopReason::kRadius;
      break;
    }
    if (result.expansions >= budget) {
      result.stop_reason = StopReason::kBudget;
      break;
    }
    {
      auto& v = graph.vertex(vid);
      v.in_open = false;
      v.closed = true;
      result.popped_g.push_back(v.g);
      if (goal && stop_at_goal(v, *goal, stop.goal->n_p, result.goal_ids)) {
        result.stop_reason = StopReason::kGoal;
        break;
      }
    }
    // A popped vertex inside a cut-point region is treated like an obstacle cell.
    if (graph.is_blocked(graph.vertex(vid).q)) continue;
    ++result.expansions;

    auto pns = std::make_shared<const PnsSet>(pns_search.run(graph, vid, params));
    if (mark.size() < graph.size()) mark.resize(std::max(graph.size(), mark.size() * 2), 0);
    if (++stamp == 0) {
      std::fill(mark.begin(), mark.end(), 0);
      stamp = 1;
    }
    for (const auto m : *pns) mark[m.value] = stamp;

    const Coord q = graph.vertex(vid).q;
    const double g_v = graph.vertex(vid).g;
    successors.clear();
    env.for_each_neighbor(q, [&](const Coord& c, double cost) { successors.push_back({c, cost}); });

    for (const auto& succ : successors) {
      if (graph.is_blocked(succ.q)) continue;
      const double g_new = g_v + succ.cost;

      std::optional<NagVertexId> match;
      for (const auto w : graph.vertices_at(succ.q)) {
        const auto& members = graph.vertex(w).neighborhood();
        if (std::any_of(members.begin(), members.end(),
                        [&](NagVertexId m) { return m.value < mark.size() && mark[m.value] == stamp; })) {
          match = w;
          break;
        }
      }

      if (options.on_successor) options.on_successor(SuccessorEvent{vid, succ.q, pns.get(), match});

      if (!match) {
        const NagVertexId id = graph.add_vertex(succ.q, pns, g_new, vid, succ.cost);
        graph.add_edge(vid, id, succ.cost);
        push(id);
        continue;
      }

      if (options.cut_points) {
        ++result.cut_checks;
        const CandidateVertex cand{succ.q, pns.get(), vid, succ.cost};
        auto check = cut_point_check(graph, *match, cand, *options.cut_points);
        if (check.is_cut) {
          graph.add_region(std::move(*check.region));
          continue;
        }
      }
      graph.add_edge(vid, *match, succ.cost);
      auto& w = graph.vertex(*match);
      if (g_new < w.g && w.in_open) {
        w.g = g_new;
        w.came_from = vid;
        w.came_from_cost = succ.cost;
        w.pns = pns;
        push(*match);
      }
    }
  }
  return result;
}

}  // namespace nagplan
