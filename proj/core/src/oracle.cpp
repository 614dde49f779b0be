#include "nagplan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <queue>
#include <unordered_map>
#include <utility>

#include "nagplan/errors.hpp"

namespace nagplan::oracle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Coord require_free(const Environment& env, const Coord& q, const char* what) {
  const auto n = env.normalize(q);
  if (!n || !env.is_free(*n)) throw InvalidQuery(std::string(what) + " " + to_string(q) + " is not a free cell");
  return *n;
}

using MinQueue = std::priority_queue<std::pair<double, std::size_t>, std::vector<std::pair<double, std::size_t>>,
                                     std::greater<>>;

}  // namespace

std::vector<Coord> DistanceField::path_to(const Environment& env, const Coord& q) const {
  const auto n = env.normalize(q);
  if (!n) throw InvalidQuery("path target out of bounds");
  std::size_t i = env.index(*n);
  if (!std::isfinite(dist[i])) return {};
  std::vector<Coord> out;
  for (std::int64_t cur = static_cast<std::int64_t>(i); cur >= 0; cur = parent[static_cast<std::size_t>(cur)]) {
    out.push_back(env.coord_of(static_cast<std::size_t>(cur)));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

DistanceField plain_dijkstra(const Environment& env, const Coord& source) {
  const Coord s = require_free(env, source, "source");
  DistanceField f;
  f.dist.assign(env.cell_count(), kInf);
  f.parent.assign(env.cell_count(), -1);
  std::vector<char> done(env.cell_count(), 0);
  MinQueue open;
  f.dist[env.index(s)] = 0.0;
  open.emplace(0.0, env.index(s));
  while (!open.empty()) {
    const auto [d, i] = open.top();
    open.pop();
    if (done[i]) continue;
    done[i] = 1;
    env.for_each_neighbor(env.coord_of(i), [&](const Coord& n, double c) {
      const std::size_t j = env.index(n);
      if (done[j] || d + c >= f.dist[j]) return;
      f.dist[j] = d + c;
      f.parent[j] = static_cast<std::int64_t>(i);
      open.emplace(d + c, j);
    });
  }
  return f;
}

std::optional<double> plain_distance(const Environment& env, const Coord& q_s, const Coord& q_g) {
  const Coord g = require_free(env, q_g, "goal");
  const auto f = plain_dijkstra(env, q_s);
  const double d = f.dist[env.index(g)];
  if (!std::isfinite(d)) return std::nullopt;
  return d;
}

RaySet make_ray_set(const Environment& env) {
  if (env.topology() != Topology::kPlanar2d) throw InvalidQuery("rays are defined for planar 2D environments only");
  const int nx = env.dims().nx;
  const int ny = env.dims().ny;
  std::vector<int> label(env.cell_count(), -1);
  std::vector<bool> column_used(static_cast<std::size_t>(nx), false);
  RaySet out;
  int next = 0;
  for (std::size_t start = 0; start < env.cell_count(); ++start) {
    if (!env.obstacle_at(start) || label[start] >= 0) continue;
    std::vector<std::size_t> cells;
    std::deque<std::size_t> queue{start};
    label[start] = next;
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      cells.push_back(i);
      const Coord q = env.coord_of(i);
      const Coord around[4] = {{q.x + 1, q.y, 0}, {q.x - 1, q.y, 0}, {q.x, q.y + 1, 0}, {q.x, q.y - 1, 0}};
      for (const Coord& n : around) {
        if (n.x < 0 || n.y < 0 || n.x >= nx || n.y >= ny) continue;
        const std::size_t j = env.index(n);
        if (env.obstacle_at(j) && label[j] < 0) {
          label[j] = next;
          queue.push_back(j);
        }
      }
    }
    std::sort(cells.begin(), cells.end());
    bool placed = false;
    for (std::size_t i : cells) {
      const Coord q = env.coord_of(i);
      // The ray runs up the line x + 1/2; a path can only meet it at the anchor's own row
      // by stepping out of the anchor cell, which is solid.
      if (q.x + 1 >= nx || column_used[static_cast<std::size_t>(q.x)]) continue;
      column_used[static_cast<std::size_t>(q.x)] = true;
      out.rays.push_back(Ray{q, next + 1});
      placed = true;
      break;
    }
    if (!placed) {
      throw InvalidQuery("obstacle containing " + to_string(env.coord_of(start)) +
                         " has no cell in a free column");
    }
    ++next;
  }
  return out;
}

std::string word_to_string(const Word& w) {
  std::string s;
  for (int letter : w) {
    if (!s.empty()) s += ' ';
    s += 'r';
    s += std::to_string(std::abs(letter));
    if (letter < 0) s += "^-1";
  }
  return s;
}

void append_letter(Word& w, int letter) {
  if (!w.empty() && w.back() == -letter) {
    w.pop_back();
  } else {
    w.push_back(letter);
  }
}

namespace {

void step_letters(const Coord& a, const Coord& b, const RaySet& rays, Word& w) {
  if (a.x == b.x) return;
  const int column = std::min(a.x, b.x);
  const double y_cross = 0.5 * (a.y + b.y);
  for (const Ray& r : rays.rays) {
    if (r.anchor.x != column || !(y_cross < r.anchor.y)) continue;
    append_letter(w, a.x < b.x ? r.letter : -r.letter);
  }
}

}  // namespace

Word h_signature(std::span<const Coord> path, const RaySet& rays) {
  for (const Coord& q : path) {
    for (const Ray& r : rays.rays) {
      if (q.x == r.anchor.x && q.y == r.anchor.y) {
        throw DegenerateCrossing("path touches ray anchor " + to_string(r.anchor));
      }
    }
  }
  Word w;
  for (std::size_t i = 1; i < path.size(); ++i) step_letters(path[i - 1], path[i], rays, w);
  return w;
}

std::vector<HomotopyClass> h_augmented_dijkstra(const Environment& env, const Coord& q_s, const Coord& q_g,
                                                const RaySet& rays, int k, std::size_t max_states) {
  if (env.topology() != Topology::kPlanar2d) throw InvalidQuery("h-signature search needs a planar environment");
  if (k < 1) throw InvalidQuery("k must be positive");
  const Coord s = require_free(env, q_s, "start");
  const Coord g = require_free(env, q_g, "goal");
  const std::size_t goal_index = env.index(g);

  struct State {
    std::size_t cell;
    Word word;
    double dist;
    std::int64_t parent;
    bool closed;
  };
  std::vector<State> states;
  std::unordered_map<std::string, std::size_t> lookup;
  auto key_of = [](std::size_t cell, const Word& w) {
    std::string key(sizeof(cell) + w.size() * sizeof(int), '\0');
    std::memcpy(key.data(), &cell, sizeof(cell));
    if (!w.empty()) std::memcpy(key.data() + sizeof(cell), w.data(), w.size() * sizeof(int));
    return key;
  };

  MinQueue open;
  states.push_back(State{env.index(s), {}, 0.0, -1, false});
  lookup.emplace(key_of(env.index(s), {}), 0);
  open.emplace(0.0, 0);

  std::vector<HomotopyClass> out;
  std::size_t pops = 0;
  while (!open.empty() && static_cast<int>(out.size()) < k && pops < max_states) {
    const auto [d, id] = open.top();
    open.pop();
    if (states[id].closed || d > states[id].dist) continue;
    states[id].closed = true;
    ++pops;
    const std::size_t cell = states[id].cell;
    const Coord q = env.coord_of(cell);
    if (cell == goal_index) {
      HomotopyClass h{states[id].word, d, {}};
      for (std::int64_t cur = static_cast<std::int64_t>(id); cur >= 0; cur = states[static_cast<std::size_t>(cur)].parent) {
        h.path.push_back(env.coord_of(states[static_cast<std::size_t>(cur)].cell));
      }
      std::reverse(h.path.begin(), h.path.end());
      out.push_back(std::move(h));
    }
    const Word base = states[id].word;
    env.for_each_neighbor(q, [&](const Coord& n, double c) {
      Word w = base;
      step_letters(q, n, rays, w);
      const std::size_t ni = env.index(n);
      const std::string key = key_of(ni, w);
      const auto it = lookup.find(key);
      if (it == lookup.end()) {
        lookup.emplace(key, states.size());
        states.push_back(State{ni, std::move(w), d + c, static_cast<std::int64_t>(id), false});
        open.emplace(d + c, states.size() - 1);
      } else {
        State& st = states[it->second];
        if (st.closed || d + c >= st.dist) return;
        st.dist = d + c;
        st.parent = static_cast<std::int64_t>(id);
        open.emplace(d + c, it->second);
      }
    });
  }
  return out;
}

std::vector<double> cylinder_unrolled_klengths(const Environment& env, const Coord& q_s, const Coord& q_g, int k) {
  if (env.topology() != Topology::kCylinder2d) throw InvalidQuery("unrolling needs a cylinder environment");
  if (k < 1) throw InvalidQuery("k must be positive");
  const Coord s = require_free(env, q_s, "start");
  const Coord g = require_free(env, q_g, "goal");
  const int w = env.dims().nx;
  const int ny = env.dims().ny;
  const int copies = 2 * k + 1;
  Dims strip_dims{w * copies, ny, 1};
  std::vector<std::uint8_t> obstacles(static_cast<std::size_t>(w) * copies * ny);
  std::vector<double> rho(obstacles.size());
  for (int y = 0; y < ny; ++y) {
    for (int x = 0; x < w * copies; ++x) {
      const std::size_t src = env.index(Coord{x % w, y, 0});
      const std::size_t dst = static_cast<std::size_t>(y) * w * copies + x;
      obstacles[dst] = env.obstacle_at(src) ? 1 : 0;
      rho[dst] = env.rho_at(src);
    }
  }
  const Environment strip(strip_dims, Topology::kPlanar2d, std::move(obstacles), std::move(rho), env.cm());
  const auto field = plain_dijkstra(strip, Coord{s.x + k * w, s.y, 0});
  std::vector<double> lengths;
  for (int j = 0; j < copies; ++j) {
    if (j == k && s == g) continue;
    const double d = field.dist[strip.index(Coord{g.x + j * w, g.y, 0})];
    if (std::isfinite(d)) lengths.push_back(d);
  }
  std::sort(lengths.begin(), lengths.end());
  if (static_cast<int>(lengths.size()) > k) lengths.resize(static_cast<std::size_t>(k));
  return lengths;
}

double cylinder_geodesic_length(double r_c, double dz, double dtheta, int winding) {
  const double arc = r_c * (dtheta + 2.0 * std::numbers::pi * winding);
  return std::hypot(dz, arc);
}

namespace {

struct Enumerator {
  const Environment& env;
  const PathClassifier& classify;
  const std::vector<double>& to_goal;
  std::size_t goal;
  double cap;
  std::size_t max_visits;
  std::size_t visits = 0;
  std::vector<char> on_path;
  std::vector<Coord> path;
  std::map<std::string, double>& minima;

  void run(std::size_t cell, double cost) {
    if (++visits > max_visits) throw OracleTimeout("brute-force enumeration exceeded its visit budget");
    if (cell == goal) {
      const std::string key = classify(std::span<const Coord>(path));
      auto [it, inserted] = minima.emplace(key, cost);
      if (!inserted) it->second = std::min(it->second, cost);
      return;
    }
    env.for_each_neighbor(env.coord_of(cell), [&](const Coord& n, double c) {
      const std::size_t j = env.index(n);
      if (on_path[j] || cost + c + to_goal[j] > cap) return;
      on_path[j] = 1;
      path.push_back(n);
      run(j, cost + c);
      path.pop_back();
      on_path[j] = 0;
    });
  }
};

}  // namespace

std::vector<ClassLength> brute_force_k_geodesics(const Environment& env, const Coord& q_s, const Coord& q_g, int k,
                                                 const BruteForceOptions& options) {
  if (k < 1) throw InvalidQuery("k must be positive");
  const Coord s = require_free(env, q_s, "start");
  const Coord g = require_free(env, q_g, "goal");
  PathClassifier classify = options.classifier;
  if (!classify) {
    auto rays = std::make_shared<RaySet>(make_ray_set(env));
    classify = [rays](std::span<const Coord> p) { return word_to_string(h_signature(p, *rays)); };
  }
  const auto field = plain_dijkstra(env, g);
  const double shortest = field.dist[env.index(s)];
  if (!std::isfinite(shortest)) return {};

  std::map<std::string, double> minima;
  const double stretches[] = {1.0, 1.1, 1.25, 1.5, 2.0, 3.0, 5.0, 8.0};
  std::vector<ClassLength> sorted;
  for (double stretch : stretches) {
    const bool last = stretch >= options.max_stretch;
    const double cap = (last ? options.max_stretch : stretch) * shortest + 1e-9;
    Enumerator e{env, classify, field.dist, env.index(g), cap, options.max_visits, 0,
                 std::vector<char>(env.cell_count(), 0), {s}, minima};
    e.on_path[env.index(s)] = 1;
    e.run(env.index(s), 0.0);
    sorted.clear();
    for (const auto& [key, len] : minima) sorted.push_back(ClassLength{key, len});
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const ClassLength& a, const ClassLength& b) { return a.length < b.length; });
    if (static_cast<int>(sorted.size()) >= k && sorted[static_cast<std::size_t>(k - 1)].length <= cap) break;
    if (last) break;
  }
  if (static_cast<int>(sorted.size()) > k) sorted.resize(static_cast<std::size_t>(k));
  return sorted;
}

}  // namespace nagplan::oracle
