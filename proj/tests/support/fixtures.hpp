// Environment builders shared by the unit tests, the acceptance runner and the benchmarks.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "nagplan/environment.hpp"
#include "nagplan/pns.hpp"

namespace nagplan::fixtures {

inline Environment flat(int nx, int ny, double cm = 0.0) { return Environment({nx, ny, 1}, Topology::kPlanar2d, cm); }

inline void fill_box(Environment& env, Coord lo, Coord hi_exclusive) {
  for (int z = lo.z; z < hi_exclusive.z; ++z)
    for (int y = lo.y; y < hi_exclusive.y; ++y)
      for (int x = lo.x; x < hi_exclusive.x; ++x) env.set_obstacle({x, y, z}, true);
}

/// 40x30 grid with a Gaussian cost hill (peak rho 1, sigma 3) centred at (8,15).
inline Environment gaussian_hill(double cm) {
  Environment env = flat(40, 30, cm);
  constexpr double kCx = 8.0, kCy = 15.0, kSigma = 3.0;
  for (int y = 0; y < 30; ++y) {
    for (int x = 0; x < 40; ++x) {
      const double r2 = (x - kCx) * (x - kCx) + (y - kCy) * (y - kCy);
      env.set_rho({x, y, 0}, std::exp(-r2 / (2.0 * kSigma * kSigma)));
    }
  }
  return env;
}
inline constexpr Coord kHillStart{2, 15, 0};
inline constexpr Coord kHillGoal{37, 15, 0};
inline constexpr Coord kHillGoalAsym{37, 17, 0};
inline PnsParams hill_pns() { return {8.0, 0.6, 4, 3}; }

struct TwoObstacle {
  Environment env;
  Coord start;
  Coord goal;
};

/// Two rectangular obstacles between start and goal, each at least ceil(4 r_n / (1 - omega))
/// cells wide and tall and at least that far apart horizontally.
inline std::vector<TwoObstacle> two_obstacle_fixtures(int count, const PnsParams& pns, unsigned seed = 7) {
  const int s = static_cast<int>(std::ceil(4.0 * pns.r_n / (1.0 - pns.omega)));
  std::mt19937 rng(seed);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  std::vector<TwoObstacle> out;
  for (int i = 0; i < count; ++i) {
    const int w = 4 * s + 20 + pick(10);
    const int h = 3 * s + 12 + pick(10);
    const int aw = s + pick(4), ah = s + pick(6);
    const int bw = s + pick(4), bh = s + pick(6);
    const int ax = 4 + pick(3);
    const int bx = ax + aw + s + pick(4);
    const int ay = s / 2 + 2 + pick(h - ah - s - 4);
    const int by = s / 2 + 2 + pick(h - bh - s - 4);
    Environment env = flat(w, h);
    fill_box(env, {ax, ay, 0}, {ax + aw, ay + ah, 1});
    fill_box(env, {bx, by, 0}, {bx + bw, by + bh, 1});
    out.push_back({std::move(env), Coord{1, h / 2, 0}, Coord{w - 2, h / 2, 0}});
  }
  return out;
}

/// Solid wall of `thickness` rows spanning x = 1..length, with one free column on either side.
struct CorridorWall {
  Environment env;
  Coord start;
  Coord goal;
  int mid;
};
inline CorridorWall corridor_wall(int length, int thickness) {
  Environment env = flat(length + 2, thickness + 2);
  fill_box(env, {1, 1, 0}, {length + 1, thickness + 1, 1});
  const int mid = (thickness + 1) / 2;
  return {std::move(env), Coord{0, mid, 0}, Coord{length + 1, mid, 0}, mid};
}

inline Environment cylinder(int width, int height) { return Environment({width, height, 1}, Topology::kCylinder2d); }

/// 20x10x20 voxels with a box against the y = 0 face; the straight line between the endpoints
/// passes through it and the two cheapest detours (over the top, around the open side) differ
/// by under 10%.
inline Environment prism_corner() {
  Environment env({20, 10, 20}, Topology::kGrid3d);
  fill_box(env, {8, 0, 0}, {12, 6, 12});
  return env;
}
inline constexpr Coord kPrismStart{1, 2, 8};
inline constexpr Coord kPrismGoal{18, 2, 8};
inline PnsParams prism_pns() { return {6.0, 0.6, 3, 3}; }

/// Two rooms joined by a doorway at either end of a dividing wall. The base sits in the west
/// room; the robot starts in the east room having entered through the south door.
inline Environment two_rooms() {
  Environment env({24, 16, 3}, Topology::kGrid3d);
  fill_box(env, {11, 3, 0}, {13, 13, 3});
  return env;
}
inline constexpr Coord kRoomsBase{3, 8, 1};
inline constexpr Coord kRoomsStart{15, 2, 1};
inline constexpr Coord kRoomsGoal{15, 14, 1};

/// ASCII P2 body for a 2D environment; rho maps back to gray = round(maxval * (1 - rho)).
inline std::string to_pgm(const Environment& env, int maxval = 255) {
  std::string out = "P2\n" + std::to_string(env.dims().nx) + " " + std::to_string(env.dims().ny) + "\n" +
                    std::to_string(maxval) + "\n";
  for (int y = 0; y < env.dims().ny; ++y) {
    for (int x = 0; x < env.dims().nx; ++x) {
      const Coord q{x, y, 0};
      const int gray = env.is_free(q) ? static_cast<int>(std::lround(maxval * (1.0 - env.rho(q)))) : 0;
      out += std::to_string(std::max(gray, env.is_free(q) ? 1 : 0));
      out += x + 1 < env.dims().nx ? ' ' : '\n';
    }
  }
  return out;
}

}  // namespace nagplan::fixtures
