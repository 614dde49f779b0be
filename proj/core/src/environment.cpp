#include "nagplan/environment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "nagplan/errors.hpp"

namespace nagplan {

namespace {

int wrap(int x, int n) {
  const int r = x % n;
  return r < 0 ? r + n : r;
}

}  // namespace

std::string to_string(const Coord& q) {
  return "(" + std::to_string(q.x) + "," + std::to_string(q.y) + "," + std::to_string(q.z) + ")";
}

std::string to_string(Topology t) {
  switch (t) {
    case Topology::kPlanar2d:
      return "planar2d";
    case Topology::kCylinder2d:
      return "cylinder2d";
    case Topology::kGrid3d:
      return "grid3d";
  }
  return "unknown";
}

std::optional<Topology> topology_from_string(const std::string& s) {
  if (s == "planar2d") return Topology::kPlanar2d;
  if (s == "cylinder2d") return Topology::kCylinder2d;
  if (s == "grid3d") return Topology::kGrid3d;
  return std::nullopt;
}

Environment::Environment(Dims dims, Topology topology, double cm)
    : Environment(dims, topology, {}, {}, cm) {}

Environment::Environment(Dims dims, Topology topology, std::vector<std::uint8_t> obstacles,
                         std::vector<double> rho, double cm)
    : dims_(dims), topology_(topology), obstacles_(std::move(obstacles)), rho_(std::move(rho)), cm_(cm) {
  if (dims_.nx <= 0 || dims_.ny <= 0 || dims_.nz <= 0) {
    throw InvalidQuery("environment dimensions must be positive");
  }
  if (topology_ != Topology::kGrid3d && dims_.nz != 1) {
    throw InvalidQuery("2D topologies require nz == 1");
  }
  if (!(cm_ >= 0.0)) throw InvalidQuery("cost multiplier must be >= 0");
  const std::size_t n = static_cast<std::size_t>(dims_.nx) * dims_.ny * dims_.nz;
  if (obstacles_.empty()) obstacles_.assign(n, 0);
  if (rho_.empty()) rho_.assign(n, 0.0);
  if (obstacles_.size() != n || rho_.size() != n) {
    throw InvalidQuery("obstacle/rho arrays do not match the environment dimensions");
  }
  for (double& r : rho_) r = std::clamp(std::isfinite(r) ? r : 0.0, 0.0, 1.0);
}

std::size_t Environment::free_cell_count() const noexcept {
  return static_cast<std::size_t>(std::count(obstacles_.begin(), obstacles_.end(), 0));
}

std::optional<Coord> Environment::normalize(const Coord& q) const noexcept {
  Coord out = q;
  if (topology_ == Topology::kCylinder2d) out.x = wrap(q.x, dims_.nx);
  if (out.x < 0 || out.x >= dims_.nx || out.y < 0 || out.y >= dims_.ny || out.z < 0 || out.z >= dims_.nz) {
    return std::nullopt;
  }
  return out;
}

bool Environment::is_free(const Coord& q) const noexcept {
  const auto n = normalize(q);
  return n && obstacles_[index(*n)] == 0;
}

Coord Environment::coord_of(std::size_t i) const noexcept {
  Coord q;
  q.x = static_cast<int>(i % dims_.nx);
  i /= dims_.nx;
  q.y = static_cast<int>(i % dims_.ny);
  q.z = static_cast<int>(i / dims_.ny);
  return q;
}

std::size_t Environment::checked_index(const Coord& q) const {
  const auto n = normalize(q);
  if (!n) throw InvalidQuery("coordinate out of bounds: " + to_string(q));
  return index(*n);
}

double Environment::rho(const Coord& q) const { return rho_[checked_index(q)]; }

void Environment::set_obstacle(const Coord& q, bool solid) { obstacles_[checked_index(q)] = solid ? 1 : 0; }

void Environment::set_rho(const Coord& q, double value) {
  rho_[checked_index(q)] = std::clamp(std::isfinite(value) ? value : 0.0, 0.0, 1.0);
}

void Environment::set_cm(double cm) {
  if (!(cm >= 0.0)) throw InvalidQuery("cost multiplier must be >= 0");
  cm_ = cm;
}

std::array<int, 3> Environment::delta(const Coord& a, const Coord& b) const noexcept {
  std::array<int, 3> d{b.x - a.x, b.y - a.y, b.z - a.z};
  if (topology_ == Topology::kCylinder2d) {
    d[0] = wrap(d[0], dims_.nx);
    if (d[0] > dims_.nx / 2) d[0] -= dims_.nx;
  }
  return d;
}

double Environment::euclidean(const Coord& a, const Coord& b) const noexcept {
  const auto d = delta(a, b);
  return std::sqrt(static_cast<double>(d[0]) * d[0] + static_cast<double>(d[1]) * d[1] +
                   static_cast<double>(d[2]) * d[2]);
}

std::vector<Neighbor> neighbors(const Environment& env, const Coord& q) {
  const auto n = env.normalize(q);
  if (!n) throw InvalidQuery("neighbors: coordinate out of bounds " + to_string(q));
  if (!env.is_free(*n)) throw InvalidQuery("neighbors: coordinate is an obstacle " + to_string(q));
  std::vector<Neighbor> out;
  env.for_each_neighbor(*n, [&](const Coord& c, double cost) { out.push_back({c, cost}); });
  return out;
}

double edge_cost(const Environment& env, const Coord& q1, const Coord& q2) {
  const auto a = env.normalize(q1);
  const auto b = env.normalize(q2);
  if (!a || !b) throw InvalidQuery("edge_cost: coordinate out of bounds");
  const auto d = env.delta(*a, *b);
  const int axes = (d[0] != 0) + (d[1] != 0) + (d[2] != 0);
  if (axes == 0 || std::abs(d[0]) > 1 || std::abs(d[1]) > 1 || std::abs(d[2]) > 1) {
    throw InvalidQuery("edge_cost: " + to_string(q1) + " and " + to_string(q2) + " are not adjacent");
  }
  const double rho_avg = 0.5 * (env.rho_at(env.index(*a)) + env.rho_at(env.index(*b)));
  return kStepLength[axes] * (1.0 + env.cm() * rho_avg);
}

}  // namespace nagplan
