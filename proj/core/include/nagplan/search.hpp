#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nagplan/cutpoint.hpp"
#include "nagplan/graph.hpp"
#include "nagplan/pns.hpp"

namespace nagplan {

struct GoalStop {
  Coord q_g;
  int n_p = 1;
};

/// Any-of composition: the search stops when the first active criterion fires.
struct StopCriterion {
  std::optional<GoalStop> goal;
  /// Stop on the first popped vertex with g > radius (that vertex is not expanded).
  std::optional<double> radius;
  /// Expansion budget; defaults to 50 * (number of free cells) when unset.
  std::optional<std::size_t> max_expansions;

  void validate() const;
};

enum class StopReason { kGoal, kRadius, kBudget, kExhausted };
std::string to_string(StopReason r);

enum class Algorithm { kDijkstra, kAStar };
std::string to_string(Algorithm a);

/// A successor generated during an expansion, before it is inserted or identified.
struct SuccessorEvent {
  NagVertexId parent;
  Coord q;
  const PnsSet* pns = nullptr;            // PNS handed to every successor of this expansion
  std::optional<NagVertexId> equivalent;  // existing vertex it is about to be identified with
};

struct SearchOptions {
  Algorithm algorithm = Algorithm::kDijkstra;
  std::optional<CutPointParams> cut_points;
  /// Observer for diagnostics and tests; must not retain the pns pointer.
  std::function<void(const SuccessorEvent&)> on_successor;
};

struct SearchResult {
  NagGraph graph;
  std::vector<NagVertexId> goal_ids;  // distinct goal vertices in discovery order
  StopReason stop_reason = StopReason::kExhausted;
  std::size_t expansions = 0;
  std::size_t cut_checks = 0;
  /// g-score of every popped vertex, in pop order.
  std::vector<double> popped_g;
};

/// Goal bookkeeping for one search. Records v when it sits on q_g and has not
/// been recorded before; returns true once n_p distinct vertices were seen.
bool stop_at_goal(const NagVertex& v, const Coord& q_g, int n_p, std::vector<NagVertexId>& found);

/// Builds the neighbourhood-augmented graph incrementally from q_s and searches it.
///
/// Each pop computes a single PNS for the popped vertex and hands it to all of
/// its successors. A successor that shares a coordinate and at least one PNS
/// member with an existing vertex w is identified with w: a cross edge is added
/// and w is relaxed if it is still open. Otherwise a new vertex is inserted.
/// With cut points enabled, each such identification is first offered to
/// cut_point_check; a positive result blocks the region and drops the successor.
///
/// A* uses the straight-line distance to the goal as heuristic for the primary
/// key only. Equal keys pop in insertion order.
SearchResult search_nag(const Environment& env, const Coord& q_s, const StopCriterion& stop,
                        const PnsParams& params, const SearchOptions& options = {});

}  // namespace nagplan
