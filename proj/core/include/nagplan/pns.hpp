#pragma once

#include <cstdint>
#include <vector>

#include "nagplan/graph.hpp"

namespace nagplan {

/// Geometry of the path neighbourhood search.
struct PnsParams {
  double r_n = 10.0;   // neighbourhood radius, in path-cost units
  double omega = 0.6;  // weight of the primary g-score used as secondary heuristic
  int r_b = 4;         // came_from generations to step back before searching
  int d_min = 3;       // minimum hop depth explored regardless of r_n

  static PnsParams defaults_2d() { return {10.0, 0.6, 4, 3}; }
  static PnsParams defaults_3d() { return {5.0, 0.6, 3, 3}; }

  /// Throws InvalidQuery on out-of-range values.
  void validate() const;
};

/// The r_b-th came_from ancestor of v, clamped at the start vertex.
NagVertexId rollback(const NagGraph& graph, NagVertexId v, int r_b);

/// Reusable scratch space for neighbourhood searches over one graph.
///
/// The secondary search runs A* over the undirected NAG edges from
/// rollback(v_p, r_b). A vertex u is keyed by g~(u) + omega * g(u), where g~ is
/// the secondary distance and g the primary g-score, so the set hugs the path
/// back towards the start instead of forming a disk. Every vertex whose g~ is
/// lowered during the search joins the set. The search ends at the first popped
/// vertex that has hop depth >= d_min and either g~ > r_n or r_n == 0.
class PnsSearch {
 public:
  PnsSet run(const NagGraph& graph, NagVertexId v_p, const PnsParams& params);

  /// g~ of each member of the last result, parallel to the returned set order.
  const std::vector<double>& last_distances() const noexcept { return last_distances_; }

 private:
  void reserve(std::size_t n);

  std::vector<double> g_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
  std::vector<double> last_distances_;
};

/// One-shot convenience wrapper over PnsSearch. Secondary scores live only in
/// the scratch space; the graph is never modified.
PnsSet compute_pns(const NagGraph& graph, NagVertexId v_p, const PnsParams& params);

}  // namespace nagplan
