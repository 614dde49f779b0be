#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nagplan {

/// Integer lattice index. `z` stays 0 for 2D environments.
struct Coord {
  int x = 0;
  int y = 0;
  int z = 0;

  friend auto operator<=>(const Coord&, const Coord&) = default;
};

std::string to_string(const Coord& q);

struct CoordHash {
  std::size_t operator()(const Coord& q) const noexcept {
    std::size_t h = static_cast<std::uint32_t>(q.x);
    h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint32_t>(q.y);
    h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint32_t>(q.z);
    return h;
  }
};

enum class Topology {
  kPlanar2d,
  kCylinder2d,  // x is identified modulo the width
  kGrid3d,
};

std::string to_string(Topology t);
std::optional<Topology> topology_from_string(const std::string& s);

struct Dims {
  int nx = 1;
  int ny = 1;
  int nz = 1;
};

struct Neighbor {
  Coord q;
  double cost = 0.0;
};

/// Discrete configuration space: a lattice with an obstacle mask, a cost
/// colour rho in [0,1] per cell and a scalar cost multiplier.
///
/// Adjacency is 8-connected in 2D and 26-connected in 3D. Edge cost between
/// adjacent cells a and b is d(a,b) * (1 + cm * (rho(a) + rho(b)) / 2) where d
/// is the lattice step length (1, sqrt 2 or sqrt 3).
///
/// Setters exist for building fixtures; planners only ever see a const
/// reference, so an environment is effectively immutable once handed out.
class Environment {
 public:
  Environment(Dims dims, Topology topology, double cm = 0.0);
  Environment(Dims dims, Topology topology, std::vector<std::uint8_t> obstacles,
              std::vector<double> rho, double cm);

  const Dims& dims() const noexcept { return dims_; }
  Topology topology() const noexcept { return topology_; }
  bool is_3d() const noexcept { return topology_ == Topology::kGrid3d; }
  double cm() const noexcept { return cm_; }

  std::size_t cell_count() const noexcept { return obstacles_.size(); }
  std::size_t free_cell_count() const noexcept;

  /// Wraps x on the cylinder; nullopt when the coordinate lies outside the lattice.
  std::optional<Coord> normalize(const Coord& q) const noexcept;
  bool in_bounds(const Coord& q) const noexcept { return normalize(q).has_value(); }
  bool is_free(const Coord& q) const noexcept;

  /// Linear index of an already-normalized coordinate (x fastest, then y, then z).
  std::size_t index(const Coord& q) const noexcept {
    return (static_cast<std::size_t>(q.z) * dims_.ny + q.y) * dims_.nx + q.x;
  }
  Coord coord_of(std::size_t index) const noexcept;

  bool obstacle_at(std::size_t i) const noexcept { return obstacles_[i] != 0; }
  double rho_at(std::size_t i) const noexcept { return rho_[i]; }
  double rho(const Coord& q) const;

  void set_obstacle(const Coord& q, bool solid);
  void set_rho(const Coord& q, double value);
  void set_cm(double cm);

  /// Calls `visit(neighbor, cost)` for every free neighbour of a normalized coordinate.
  template <class Visit>
  void for_each_neighbor(const Coord& q, Visit&& visit) const;

  /// Wrap-aware per-axis offset from a to b (shortest way round on the cylinder).
  std::array<int, 3> delta(const Coord& a, const Coord& b) const noexcept;

  /// Straight-line distance between cell centres; on the cylinder the shorter way round.
  /// Never exceeds the graph distance, so it is an admissible A* heuristic.
  double euclidean(const Coord& a, const Coord& b) const noexcept;

 private:
  std::size_t checked_index(const Coord& q) const;

  Dims dims_;
  Topology topology_;
  std::vector<std::uint8_t> obstacles_;
  std::vector<double> rho_;
  double cm_ = 0.0;
};

inline constexpr double kStepLength[4] = {0.0, 1.0, 1.4142135623730951, 1.7320508075688772};

template <class Visit>
void Environment::for_each_neighbor(const Coord& q, Visit&& visit) const {
  const std::size_t qi = index(q);
  const int zr = is_3d() ? 1 : 0;
  // Small cylinders can wrap onto the same cell twice.
  std::size_t seen[26];
  int nseen = 0;
  for (int dz = -zr; dz <= zr; ++dz) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0 && dz == 0) continue;
        const auto n = normalize(Coord{q.x + dx, q.y + dy, q.z + dz});
        if (!n) continue;
        const std::size_t ni = index(*n);
        if (ni == qi || obstacles_[ni]) continue;
        bool dup = false;
        for (int k = 0; k < nseen; ++k) dup = dup || seen[k] == ni;
        if (dup) continue;
        seen[nseen++] = ni;
        const int axes = (dx != 0) + (dy != 0) + (dz != 0);
        visit(*n, kStepLength[axes] * (1.0 + cm_ * 0.5 * (rho_[qi] + rho_[ni])));
      }
    }
  }
}

/// All free adjacent coordinates with their edge costs.
/// Throws InvalidQuery when q is out of bounds or on an obstacle.
std::vector<Neighbor> neighbors(const Environment& env, const Coord& q);

/// Throws InvalidQuery when q1 and q2 are not lattice-adjacent.
double edge_cost(const Environment& env, const Coord& q1, const Coord& q2);

}  // namespace nagplan
