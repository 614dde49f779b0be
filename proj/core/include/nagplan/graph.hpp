#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "nagplan/environment.hpp"

namespace nagplan {

/// Stable handle to a vertex of one NagGraph. Ids are dense and never reused.
struct NagVertexId {
  static constexpr std::uint32_t kInvalid = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t value = kInvalid;

  constexpr bool valid() const noexcept { return value != kInvalid; }
  friend constexpr auto operator<=>(const NagVertexId&, const NagVertexId&) = default;
};

/// Path neighbourhood set: ids of existing vertices, sorted ascending.
using PnsSet = std::vector<NagVertexId>;
using PnsHandle = std::shared_ptr<const PnsSet>;

struct NagVertex {
  NagVertexId id;
  Coord q;
  PnsHandle pns;
  double g = 0.0;
  std::optional<NagVertexId> came_from;
  double came_from_cost = 0.0;  // cost of the (came_from, this) edge
  bool in_open = false;
  bool closed = false;

  const PnsSet& neighborhood() const;
};

struct NagEdge {
  NagVertexId to;
  double cost = 0.0;
};

/// Coordinates turned into a synthetic obstacle after a cut point was found at `seed`.
struct CutPointRegion {
  NagVertexId seed;
  std::vector<Coord> coords;  // sorted
};

/// Incrementally built neighbourhood-augmented graph.
///
/// Holds the vertex table, an undirected edge list (tree edges plus the cross
/// edges added when a successor is identified with an existing vertex), an
/// index from lattice cell to the vertices living there, and the set of
/// coordinates blocked by cut-point regions.
class NagGraph {
 public:
  explicit NagGraph(const Environment& env);

  NagVertexId add_vertex(const Coord& q, PnsHandle pns, double g, std::optional<NagVertexId> came_from,
                         double came_from_cost);
  /// Adds an undirected edge; returns false if it already existed.
  bool add_edge(NagVertexId a, NagVertexId b, double cost);

  bool contains(NagVertexId id) const noexcept { return id.valid() && id.value < vertices_.size(); }
  const NagVertex& vertex(NagVertexId id) const;
  NagVertex& vertex(NagVertexId id);
  std::size_t size() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  const std::vector<NagVertex>& vertices() const noexcept { return vertices_; }

  std::span<const NagEdge> edges(NagVertexId id) const;
  std::span<const NagVertexId> vertices_at(const Coord& q) const;

  bool is_blocked(const Coord& q) const;
  void add_region(CutPointRegion region);
  const std::vector<CutPointRegion>& regions() const noexcept { return regions_; }

  /// Copy restricted to closed vertices. Ids are renumbered in creation order;
  /// PNS members that were not kept are dropped.
  NagGraph closed_subgraph() const;

  const Environment& environment() const noexcept { return *env_; }

 private:
  std::size_t cell(const Coord& q) const;

  const Environment* env_;
  std::vector<NagVertex> vertices_;
  std::vector<std::vector<NagEdge>> adjacency_;
  std::vector<std::vector<NagVertexId>> coord_index_;
  std::vector<std::uint8_t> blocked_;
  std::vector<CutPointRegion> regions_;
  std::size_t edge_count_ = 0;
};

struct PathResult {
  std::vector<Coord> coords;
  std::vector<NagVertexId> vertices;
  double length = 0.0;
};

/// Follows came_from links back to the start. Coordinates come out start first.
PathResult reconstruct_path(const NagGraph& graph, NagVertexId v);

/// Same coordinate and at least one shared PNS member.
bool equivalent(const NagVertex& a, const NagVertex& b);

/// Size of the intersection of two sorted id sets.
std::size_t intersection_size(const PnsSet& a, const PnsSet& b);

}  // namespace nagplan

template <>
struct std::hash<nagplan::NagVertexId> {
  std::size_t operator()(const nagplan::NagVertexId& id) const noexcept { return id.value; }
};
