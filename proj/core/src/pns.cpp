#include "nagplan/pns.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>

#include "nagplan/errors.hpp"

namespace nagplan {

void PnsParams::validate() const {
  if (!(r_n >= 0.0) || !std::isfinite(r_n)) throw InvalidQuery("r_n must be a finite value >= 0");
  if (!(omega >= 0.0 && omega <= 1.0)) throw InvalidQuery("omega must lie in [0, 1]");
  if (r_b < 0) throw InvalidQuery("r_b must be >= 0");
  if (d_min < 0) throw InvalidQuery("d_min must be >= 0");
}

NagVertexId rollback(const NagGraph& graph, NagVertexId v, int r_b) {
  const NagVertex* cur = &graph.vertex(v);
  for (int i = 0; i < r_b && cur->came_from; ++i) cur = &graph.vertex(*cur->came_from);
  return cur->id;
}

void PnsSearch::reserve(std::size_t n) {
  if (g_.size() < n) {
    const std::size_t cap = std::max(n, g_.size() * 2);
    g_.resize(cap);
    depth_.resize(cap);
    stamp_.resize(cap, 0);
  }
  if (++generation_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    generation_ = 1;
  }
}

PnsSet PnsSearch::run(const NagGraph& graph, NagVertexId v_p, const PnsParams& params) {
  const NagVertexId source = rollback(graph, v_p, params.r_b);
  reserve(graph.size());

  // (key, sequence, id); sequence gives FIFO order among equal keys.
  using Entry = std::tuple<double, std::uint64_t, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::uint64_t seq = 0;

  PnsSet members;
  last_distances_.clear();
  auto touch = [&](std::uint32_t id, double g, std::uint32_t depth) {
    if (stamp_[id] != generation_) {
      stamp_[id] = generation_;
      members.push_back(NagVertexId{id});
    }
    g_[id] = g;
    depth_[id] = depth;
    open.emplace(g + params.omega * graph.vertices()[id].g, seq++, id);
  };

  touch(source.value, 0.0, 0);
  while (!open.empty()) {
    const auto [key, s, id] = open.top();
    open.pop();
    const double g_here = g_[id];
    if (key > g_here + params.omega * graph.vertices()[id].g) continue;  // superseded entry
    const bool shallow = static_cast<int>(depth_[id]) < params.d_min;
    const bool inside = params.r_n > 0.0 && g_here <= params.r_n;
    if (!shallow && !inside) break;
    for (const auto& e : graph.edges(NagVertexId{id})) {
      const std::uint32_t u = e.to.value;
      const double cand = g_here + e.cost;
      if (stamp_[u] != generation_ || cand < g_[u]) touch(u, cand, depth_[id] + 1);
    }
  }

  std::vector<std::size_t> order(members.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return members[a] < members[b]; });
  PnsSet sorted;
  sorted.reserve(members.size());
  last_distances_.reserve(members.size());
  for (const auto i : order) {
    sorted.push_back(members[i]);
    last_distances_.push_back(g_[members[i].value]);
  }
  return sorted;
}

PnsSet compute_pns(const NagGraph& graph, NagVertexId v_p, const PnsParams& params) {
  params.validate();
  PnsSearch search;
  return search.run(graph, v_p, params);
}

}  // namespace nagplan
