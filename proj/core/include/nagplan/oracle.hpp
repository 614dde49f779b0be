#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nagplan/environment.hpp"

namespace nagplan::oracle {

/// Single-source shortest distances on the lattice graph.
struct DistanceField {
  std::vector<double> dist;         // +inf where unreachable, indexed by cell
  std::vector<std::int64_t> parent; // -1 at the source and for unreachable cells

  std::vector<Coord> path_to(const Environment& env, const Coord& q) const;
};

DistanceField plain_dijkstra(const Environment& env, const Coord& source);

/// Shortest lattice distance, nullopt when q_g cannot be reached.
std::optional<double> plain_distance(const Environment& env, const Coord& q_s, const Coord& q_g);

/// One vertical ray per 2D obstacle. Ray i lies on the line x = anchor.x + 0.5
/// and runs from the anchor row towards row 0. Crossing it in +x direction
/// appends letter +(i+1), in -x direction -(i+1).
struct Ray {
  Coord anchor;
  int letter = 0;
};

struct RaySet {
  std::vector<Ray> rays;
};

/// Builds rays for every 4-connected obstacle component of a planar environment.
/// Each ray starts at a component cell (the anchor) and runs toward row 0 along
/// the line x = anchor.x + 1/2. Anchors take pairwise distinct columns, none in
/// the last column; InvalidQuery when a component has no such cell left.
RaySet make_ray_set(const Environment& env);

/// Reduced word of signed letters.
using Word = std::vector<int>;

std::string word_to_string(const Word& w);

/// Appends a letter with free reduction.
void append_letter(Word& w, int letter);

/// h-signature of a lattice walk. Throws DegenerateCrossing if the walk touches an anchor cell.
Word h_signature(std::span<const Coord> path, const RaySet& rays);

struct HomotopyClass {
  Word word;
  double length = 0.0;
  std::vector<Coord> path;
};

/// Dijkstra over (cell, reduced word) states. Returns up to k distinct words
/// in the order they first reach q_g, i.e. by nondecreasing length. Stops
/// early (partial list) after `max_states` pops.
std::vector<HomotopyClass> h_augmented_dijkstra(const Environment& env, const Coord& q_s, const Coord& q_g,
                                                const RaySet& rays, int k, std::size_t max_states = 5'000'000);

/// Winding-class lengths on a cylinder via its universal cover: a planar strip
/// of 2k+1 copies, Dijkstra from q_s in the centre copy, one length per copy of
/// q_g. Returns the k smallest (the zero-length class is skipped when q_s == q_g).
std::vector<double> cylinder_unrolled_klengths(const Environment& env, const Coord& q_s, const Coord& q_g, int k);

/// Continuum geodesic length on a cylinder of radius r_c after `winding` extra turns.
double cylinder_geodesic_length(double r_c, double dz, double dtheta, int winding);

using PathClassifier = std::function<std::string(std::span<const Coord>)>;

struct BruteForceOptions {
  /// Class key of a complete simple path. Defaults to the h-signature over make_ray_set(env).
  PathClassifier classifier;
  /// Paths longer than this multiple of the shortest distance are never enumerated.
  double max_stretch = 3.0;
  std::size_t max_visits = 20'000'000;
};

struct ClassLength {
  std::string key;
  double length = 0.0;
};

/// Exhaustive simple-path enumeration for small environments, grouped into
/// classes by the classifier; returns the k smallest per-class minima.
/// Enumeration runs with an increasing cost cap, so every class shorter than
/// the cap that ends the search is exact. Throws OracleTimeout past max_visits.
std::vector<ClassLength> brute_force_k_geodesics(const Environment& env, const Coord& q_s, const Coord& q_g, int k,
                                                 const BruteForceOptions& options = {});

}  // namespace nagplan::oracle
