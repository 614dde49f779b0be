#pragma once

#include <optional>
#include <span>

#include "nagplan/graph.hpp"

namespace nagplan {

struct CutPointParams {
  double eps_i = 0.6;       // PNS intersection ratio above which the meet is ordinary
  double eps_g = 0.1;       // max g-score gap between the two parents
  double r_l = 0.2;         // fraction of g(w) walked back to pick the path points
  double eps_lower = 8.0;   // separation of path points must exceed this...
  double eps_upper = 25.0;  // ...and not exceed this (also the search radius)
  double r_mp = 3.0;        // radius of the blocked region around the cut point

  static CutPointParams defaults_2d() { return {0.6, 0.1, 0.2, 8.0, 25.0, 3.0}; }
  static CutPointParams defaults_3d() { return {0.4, 0.1, 0.2, 5.0, 10.0, 5.0}; }

  void validate() const;
};

/// |a ∩ b| / min(|a|, |b|). Throws InvalidQuery if either set is empty.
double intersection_ratio(const PnsSet& a, const PnsSet& b);

/// First vertex on the came_from chain from w (w included) whose accumulated
/// edge cost from w reaches r_l * g(w); the start vertex if the chain is shorter.
NagVertexId get_path_point(const NagGraph& graph, NagVertexId w, double r_l);

/// A successor that has not been inserted yet: where it is, its PNS and the
/// vertex that generated it.
struct CandidateVertex {
  Coord q;
  const PnsSet* pns = nullptr;
  NagVertexId parent;
  double parent_edge_cost = 0.0;
};

struct CutPointCheck {
  bool is_cut = false;
  std::optional<CutPointRegion> region;
  // Diagnostics, filled as far as the check got.
  double ratio = 1.0;
  std::optional<double> separation;
};

/// Decides whether the meet of an existing vertex w and an equivalent candidate
/// is a cut point, i.e. two near-identical geodesics arriving from different
/// sides of a low-curvature artifact. Gates, in order: intersection ratio <=
/// eps_i, |g(w.came_from) - g(parent)| <= eps_g, and a graph separation between
/// the two path points with eps_lower < d_sep <= eps_upper. On success the
/// region is the set of coordinates within NAG distance r_mp of w.
CutPointCheck cut_point_check(const NagGraph& graph, NagVertexId w, const CandidateVertex& candidate,
                              const CutPointParams& params);

/// Shortest NAG distance from `from` to `to`, searching no further than `radius`.
std::optional<double> bounded_graph_distance(const NagGraph& graph, NagVertexId from, NagVertexId to, double radius);

/// Coordinates of all vertices within NAG distance `radius` of `seed`.
CutPointRegion generate_cut_point_region(const NagGraph& graph, NagVertexId seed, double radius);

/// True if some path coordinate lies in, or is lattice-adjacent to, a
/// cut-point region. Such paths corner around the artificial cut and are not
/// locally optimal in the underlying space.
bool touches_cut_region(const NagGraph& graph, std::span<const Coord> path);

}  // namespace nagplan
