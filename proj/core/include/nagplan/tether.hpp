#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nagplan/search.hpp"

namespace nagplan {

struct TetherSpec {
  Coord base;
  double length = 0.0;  // maximum tether length, path-cost units
};

struct Workspace {
  /// Closed part of the exploration graph: every vertex has g <= length.
  NagGraph graph;
  StopReason stop_reason = StopReason::kExhausted;
  std::size_t expansions = 0;
  double length = 0.0;
};

/// NAG search from the tether base that stops at the first vertex whose g
/// exceeds the tether length. Coordinates reachable by several tether classes
/// carry several vertices.
Workspace explore_workspace(const Environment& env, const TetherSpec& tether, const PnsParams& params,
                            const std::optional<CutPointParams>& cut_points = std::nullopt,
                            std::optional<std::size_t> max_expansions = std::nullopt);

struct LcsResult {
  std::vector<Coord> robot_path;
  std::vector<NagVertexId> vertices;  // workspace vertex per waypoint
  double length = 0.0;
  /// Tether shape at each waypoint: base first, waypoint last.
  std::vector<std::vector<Coord>> tether_configs;
  std::vector<double> tether_lengths;
  bool valid = true;

  NagVertexId goal_vertex() const { return vertices.back(); }
};

/// Dijkstra over the explored workspace (undirected NAG edges) from a given
/// tether state to the nearest vertex on q_g. Because it runs on the workspace
/// NAG, every intermediate tether configuration satisfies the length bound.
/// Throws UnreachableUnderConstraint when q_g has no vertex in the workspace.
LcsResult lcs(const Workspace& workspace, NagVertexId start_vertex, const Coord& q_g);

struct MissionResult {
  std::vector<LcsResult> legs;
  /// Set when a leg could not be planned; legs holds the completed prefix.
  std::optional<std::string> error;
  std::optional<std::size_t> failed_leg;

  bool ok() const noexcept { return !error.has_value(); }
};

/// Chains lcs calls; each leg starts from the goal vertex (and thus the tether
/// class) reached by the previous one.
MissionResult plan_mission(const Workspace& workspace, NagVertexId start_vertex, const std::vector<Coord>& goals);

/// Vertices at q sorted by (g, id); the CLI's tether-class rank indexes into this.
std::vector<NagVertexId> tether_classes_at(const NagGraph& graph, const Coord& q);

}  // namespace nagplan
