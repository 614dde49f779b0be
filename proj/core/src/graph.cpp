#include "nagplan/graph.hpp"

#include <algorithm>

#include "nagplan/errors.hpp"

namespace nagplan {

namespace {
const PnsSet kEmptyPns;
}

const PnsSet& NagVertex::neighborhood() const { return pns ? *pns : kEmptyPns; }

NagGraph::NagGraph(const Environment& env)
    : env_(&env), coord_index_(env.cell_count()), blocked_(env.cell_count(), 0) {}

std::size_t NagGraph::cell(const Coord& q) const {
  const auto n = env_->normalize(q);
  if (!n) throw InvalidQuery("coordinate out of bounds: " + to_string(q));
  return env_->index(*n);
}

NagVertexId NagGraph::add_vertex(const Coord& q, PnsHandle pns, double g, std::optional<NagVertexId> came_from,
                                 double came_from_cost) {
  if (vertices_.size() >= NagVertexId::kInvalid) throw InternalError("vertex id space exhausted");
  if (came_from && !contains(*came_from)) throw InvalidQuery("came_from refers to an unknown vertex");
  const std::size_t c = cell(q);
  NagVertex v;
  v.id = NagVertexId{static_cast<std::uint32_t>(vertices_.size())};
  v.q = env_->coord_of(c);
  v.pns = std::move(pns);
  v.g = g;
  v.came_from = came_from;
  v.came_from_cost = came_from_cost;
  vertices_.push_back(std::move(v));
  adjacency_.emplace_back();
  coord_index_[c].push_back(vertices_.back().id);
  return vertices_.back().id;
}

bool NagGraph::add_edge(NagVertexId a, NagVertexId b, double cost) {
  if (!contains(a) || !contains(b)) throw InvalidQuery("edge endpoint does not exist");
  if (a == b) return false;
  auto& ea = adjacency_[a.value];
  if (std::any_of(ea.begin(), ea.end(), [&](const NagEdge& e) { return e.to == b; })) return false;
  ea.push_back({b, cost});
  adjacency_[b.value].push_back({a, cost});
  ++edge_count_;
  return true;
}

const NagVertex& NagGraph::vertex(NagVertexId id) const {
  if (!contains(id)) throw InvalidQuery("unknown NAG vertex " + std::to_string(id.value));
  return vertices_[id.value];
}

NagVertex& NagGraph::vertex(NagVertexId id) {
  if (!contains(id)) throw InvalidQuery("unknown NAG vertex " + std::to_string(id.value));
  return vertices_[id.value];
}

std::span<const NagEdge> NagGraph::edges(NagVertexId id) const {
  if (!contains(id)) throw InvalidQuery("unknown NAG vertex " + std::to_string(id.value));
  return adjacency_[id.value];
}

std::span<const NagVertexId> NagGraph::vertices_at(const Coord& q) const {
  const auto n = env_->normalize(q);
  if (!n) return {};
  return coord_index_[env_->index(*n)];
}

bool NagGraph::is_blocked(const Coord& q) const {
  const auto n = env_->normalize(q);
  return n && blocked_[env_->index(*n)] != 0;
}

void NagGraph::add_region(CutPointRegion region) {
  std::sort(region.coords.begin(), region.coords.end());
  region.coords.erase(std::unique(region.coords.begin(), region.coords.end()), region.coords.end());
  for (const auto& q : region.coords) blocked_[cell(q)] = 1;
  regions_.push_back(std::move(region));
}

NagGraph NagGraph::closed_subgraph() const {
  NagGraph out(*env_);
  std::vector<NagVertexId> remap(vertices_.size());
  for (const auto& v : vertices_) {
    if (!v.closed) continue;
    std::optional<NagVertexId> parent;
    if (v.came_from) {
      parent = remap[v.came_from->value];
      if (!parent->valid()) throw InternalError("closed vertex has an unexpanded parent");
    }
    remap[v.id.value] = out.add_vertex(v.q, nullptr, v.g, parent, v.came_from_cost);
    auto& nv = out.vertices_.back();
    nv.closed = true;
  }
  for (const auto& v : vertices_) {
    if (!v.closed) continue;
    auto pns = std::make_shared<PnsSet>();
    for (const auto m : v.neighborhood()) {
      if (remap[m.value].valid()) pns->push_back(remap[m.value]);
    }
    // Remapping is monotone, so the set stays sorted.
    out.vertices_[remap[v.id.value].value].pns = std::move(pns);
    for (const auto& e : adjacency_[v.id.value]) {
      if (remap[e.to.value].valid()) out.add_edge(remap[v.id.value], remap[e.to.value], e.cost);
    }
  }
  for (const auto& r : regions_) {
    CutPointRegion copy = r;
    copy.seed = remap[r.seed.value];
    out.add_region(std::move(copy));
  }
  return out;
}

PathResult reconstruct_path(const NagGraph& graph, NagVertexId v) {
  PathResult out;
  std::optional<NagVertexId> cur = v;
  graph.vertex(v);  // throws on unknown id
  while (cur) {
    if (out.vertices.size() > graph.size()) throw InternalError("came_from chain does not terminate");
    if (!graph.contains(*cur)) throw InternalError("came_from chain refers to a missing vertex");
    const auto& node = graph.vertex(*cur);
    out.vertices.push_back(node.id);
    out.coords.push_back(node.q);
    cur = node.came_from;
  }
  std::reverse(out.vertices.begin(), out.vertices.end());
  std::reverse(out.coords.begin(), out.coords.end());
  // Summed start-first so the result reproduces the search's own accumulation of g.
  for (std::size_t i = 1; i < out.vertices.size(); ++i) out.length += graph.vertex(out.vertices[i]).came_from_cost;
  return out;
}

std::size_t intersection_size(const PnsSet& a, const PnsSet& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

bool equivalent(const NagVertex& a, const NagVertex& b) {
  if (a.q != b.q) return false;
  if (a.id == b.id && a.id.valid()) return true;
  return intersection_size(a.neighborhood(), b.neighborhood()) > 0;
}

}  // namespace nagplan
