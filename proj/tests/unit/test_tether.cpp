#include <algorithm>
#include <queue>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "nagplan/errors.hpp"
#include "nagplan/oracle.hpp"
#include "nagplan/tether.hpp"

using namespace nagplan;

namespace {

bool adjacent(const Environment& env, const Coord& a, const Coord& b) {
  const auto d = env.delta(a, b);
  return std::max({std::abs(d[0]), std::abs(d[1]), std::abs(d[2])}) == 1;
}

bool edge_between(const NagGraph& g, NagVertexId a, NagVertexId b) {
  for (const auto& e : g.edges(a))
    if (e.to == b) return true;
  return false;
}

double path_cost(const Environment& env, const std::vector<Coord>& path) {
  double sum = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) sum += edge_cost(env, path[i - 1], path[i]);
  return sum;
}

void check_lcs_invariants(const Environment& env, const Workspace& ws, const TetherSpec& spec, const LcsResult& r) {
  REQUIRE_FALSE(r.robot_path.empty());
  REQUIRE(r.vertices.size() == r.robot_path.size());
  REQUIRE(r.tether_configs.size() == r.robot_path.size());
  CHECK(r.length == doctest::Approx(path_cost(env, r.robot_path)).epsilon(1e-9));
  for (std::size_t i = 0; i < r.robot_path.size(); ++i) {
    const auto& tether = r.tether_configs[i];
    CHECK(tether.front() == spec.base);
    CHECK(tether.back() == r.robot_path[i]);
    const double t = path_cost(env, tether);
    CHECK(t <= spec.length + 1e-9);
    CHECK(t == doctest::Approx(r.tether_lengths[i]).epsilon(1e-9));
    if (i > 0) {
      CHECK(adjacent(env, r.robot_path[i - 1], r.robot_path[i]));
      CHECK(edge_between(ws.graph, r.vertices[i - 1], r.vertices[i]));
    }
  }
}

// Plain Dijkstra over the explicit workspace graph, written independently of lcs().
double explicit_graph_distance(const NagGraph& g, NagVertexId from, const Coord& q_g) {
  std::vector<double> dist(g.size(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[from.value] = 0.0;
  open.push({0.0, from.value});
  while (!open.empty()) {
    const auto [d, v] = open.top();
    open.pop();
    if (d > dist[v]) continue;
    if (g.vertices()[v].q == q_g) return d;
    for (const auto& e : g.edges(NagVertexId{v})) {
      if (d + e.cost < dist[e.to.value]) {
        dist[e.to.value] = d + e.cost;
        open.push({dist[e.to.value], e.to.value});
      }
    }
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace

TEST_CASE("flat exploration covers the octile ball") {
  const auto env = fixtures::flat(15, 15);
  const Coord base{7, 7, 0};
  const auto ws = explore_workspace(env, {base, 3.0}, PnsParams::defaults_2d());
  const auto field = oracle::plain_dijkstra(env, base);
  std::set<Coord> expected;
  for (std::size_t i = 0; i < env.cell_count(); ++i)
    if (field.dist[i] <= 3.0) expected.insert(env.coord_of(i));
  std::set<Coord> got;
  for (const auto& v : ws.graph.vertices()) {
    got.insert(v.q);
    CHECK(v.closed);
    CHECK(v.g <= 3.0);
  }
  CHECK(got == expected);
  CHECK(ws.graph.size() == expected.size());
  CHECK(ws.stop_reason == StopReason::kRadius);
}

TEST_CASE("zero-length tether keeps only the base") {
  const auto env = fixtures::flat(5, 5);
  const auto ws = explore_workspace(env, {{2, 2, 0}, 0.0}, PnsParams::defaults_2d());
  CHECK(ws.graph.size() == 1);
  CHECK(ws.graph.edge_count() == 0);
}

TEST_CASE("pockets beyond the tether length are excluded") {
  auto env = fixtures::flat(20, 10);
  fixtures::fill_box(env, {5, 0, 0}, {6, 9, 1});
  const auto ws = explore_workspace(env, {{2, 2, 0}, 10.0}, PnsParams::defaults_2d());
  for (const auto& v : ws.graph.vertices()) CHECK(v.q.x < 7);
  CHECK(ws.graph.vertices_at({8, 2, 0}).empty());
  CHECK_THROWS_AS(lcs(ws, NagVertexId{0}, {8, 2, 0}), UnreachableUnderConstraint);
  CHECK_THROWS_AS(explore_workspace(env, {{5, 3, 0}, 10.0}, PnsParams::defaults_2d()), InvalidQuery);
}

TEST_CASE("an obstacle inside the radius splits coordinates into tether classes") {
  auto env = fixtures::flat(61, 41);
  fixtures::fill_box(env, {20, 14, 0}, {32, 27, 1});
  const Coord base{8, 20, 0};
  const double l = 50.0;
  const auto ws = explore_workspace(env, {base, l}, {4.0, 0.6, 4, 3});
  const auto rays = oracle::make_ray_set(env);
  std::size_t multi = 0;
  for (int x = 33; x < 61; x += 3) {
    for (int y = 0; y < 41; y += 3) {
      const Coord q{x, y, 0};
      const auto classes = tether_classes_at(ws.graph, q);
      if (classes.size() < 2) continue;
      ++multi;
      CHECK(classes.size() == 2);
      // Both homotopy classes fit within the tether at this coordinate.
      const auto oracle_classes = oracle::h_augmented_dijkstra(env, base, q, rays, 3);
      REQUIRE(oracle_classes.size() >= 2);
      CHECK(oracle_classes[1].length <= l + 1e-9);
      std::vector<double> g{ws.graph.vertex(classes[0]).g, ws.graph.vertex(classes[1]).g};
      std::sort(g.begin(), g.end());
      CHECK(g[0] == doctest::Approx(oracle_classes[0].length).epsilon(1e-9));
      CHECK(g[1] == doctest::Approx(oracle_classes[1].length).epsilon(1e-9));
    }
  }
  CHECK(multi > 10);
}

TEST_CASE("long tether reproduces the unconstrained distance") {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    auto env = fixtures::flat(18, 18);
    for (int i = 0; i < 40; ++i) env.set_obstacle({static_cast<int>(rng() % 18), static_cast<int>(rng() % 18), 0}, true);
    const Coord base{0, 0, 0}, goal{17, 17, 0};
    env.set_obstacle(base, false);
    env.set_obstacle(goal, false);
    const auto plain = oracle::plain_distance(env, base, goal);
    if (!plain) continue;
    const TetherSpec spec{base, 200.0};
    const auto ws = explore_workspace(env, spec, PnsParams::defaults_2d());
    const auto r = lcs(ws, NagVertexId{0}, goal);
    CHECK(r.length == doctest::Approx(*plain).epsilon(1e-12));
    check_lcs_invariants(env, ws, spec, r);
  }
}

TEST_CASE("lcs matches an explicit-graph Dijkstra and shrinks with longer tethers") {
  auto env = fixtures::flat(30, 20);
  fixtures::fill_box(env, {10, 5, 0}, {20, 15, 1});
  const Coord base{2, 10, 0}, start{25, 3, 0}, goal{25, 17, 0};
  double prev = std::numeric_limits<double>::infinity();
  for (const double l : {28.0, 32.0, 40.0, 60.0}) {
    const TetherSpec spec{base, l};
    const auto ws = explore_workspace(env, spec, PnsParams::defaults_2d());
    const auto classes = tether_classes_at(ws.graph, start);
    REQUIRE_FALSE(classes.empty());
    const auto r = lcs(ws, classes.front(), goal);
    CHECK(r.length == explicit_graph_distance(ws.graph, classes.front(), goal));
    CHECK(r.length <= prev + 1e-9);
    prev = r.length;
    check_lcs_invariants(env, ws, spec, r);
  }
}

TEST_CASE("missions chain legs through the reached tether class") {
  auto env = fixtures::flat(30, 20);
  fixtures::fill_box(env, {10, 5, 0}, {20, 15, 1});
  // A walled-in free cell that no tether can reach.
  fixtures::fill_box(env, {26, 15, 0}, {29, 18, 1});
  env.set_obstacle({27, 16, 0}, false);
  const Coord base{2, 10, 0};
  const TetherSpec spec{base, 45.0};
  const auto ws = explore_workspace(env, spec, PnsParams::defaults_2d());
  const NagVertexId start{0};

  SUBCASE("single goal equals lcs") {
    const auto m = plan_mission(ws, start, {{25, 10, 0}});
    REQUIRE(m.ok());
    REQUIRE(m.legs.size() == 1);
    const auto r = lcs(ws, start, {25, 10, 0});
    CHECK(m.legs[0].robot_path == r.robot_path);
    CHECK(m.legs[0].length == r.length);
  }
  SUBCASE("three goals form one continuous walk") {
    const std::vector<Coord> goals{{25, 3, 0}, {25, 17, 0}, base};
    const auto m = plan_mission(ws, start, goals);
    REQUIRE(m.ok());
    REQUIRE(m.legs.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(m.legs[i].robot_path.back() == goals[i]);
      if (i > 0) {
        CHECK(m.legs[i].vertices.front() == m.legs[i - 1].goal_vertex());
        CHECK(m.legs[i].robot_path.front() == m.legs[i - 1].robot_path.back());
      }
      check_lcs_invariants(env, ws, spec, m.legs[i]);
    }
    // Returning to the base coordinate lands on one of its enumerated tether classes.
    const auto at_base = tether_classes_at(ws.graph, base);
    CHECK(std::find(at_base.begin(), at_base.end(), m.legs[2].goal_vertex()) != at_base.end());
  }
  SUBCASE("an unreachable leg aborts with the completed prefix") {
    const auto m = plan_mission(ws, start, {{25, 10, 0}, {27, 16, 0}, {3, 3, 0}});
    CHECK_FALSE(m.ok());
    CHECK(m.failed_leg == 1u);
    CHECK(m.legs.size() == 1);
  }
  SUBCASE("empty goal list is rejected") {
    CHECK_THROWS_AS(plan_mission(ws, start, {}), InvalidQuery);
  }
}

TEST_CASE("out and back with a single feasible class retraces the leg") {
  auto env = fixtures::flat(30, 20);
  fixtures::fill_box(env, {10, 5, 0}, {20, 15, 1});
  const Coord base{2, 10, 0}, far{25, 3, 0};
  const TetherSpec spec{base, 26.0};
  const auto ws = explore_workspace(env, spec, PnsParams::defaults_2d());
  REQUIRE(tether_classes_at(ws.graph, far).size() == 1);
  REQUIRE(tether_classes_at(ws.graph, base).size() == 1);
  const auto m = plan_mission(ws, NagVertexId{0}, {far, base});
  REQUIRE(m.ok());
  CHECK(m.legs[1].length == doctest::Approx(m.legs[0].length).epsilon(1e-12));
  CHECK(m.legs[1].goal_vertex() == NagVertexId{0});
  auto back = m.legs[1].vertices;
  std::reverse(back.begin(), back.end());
  CHECK(back.size() == m.legs[0].vertices.size());
  CHECK(back.front() == m.legs[0].vertices.front());
}

TEST_CASE("tether classes are ordered by g then id") {
  auto env = fixtures::flat(30, 20);
  fixtures::fill_box(env, {10, 5, 0}, {20, 15, 1});
  const auto ws = explore_workspace(env, {{2, 10, 0}, 60.0}, PnsParams::defaults_2d());
  for (int x = 21; x < 30; ++x) {
    const auto classes = tether_classes_at(ws.graph, {x, 10, 0});
    for (std::size_t i = 1; i < classes.size(); ++i) {
      const auto& a = ws.graph.vertex(classes[i - 1]);
      const auto& b = ws.graph.vertex(classes[i]);
      CHECK((a.g < b.g || (a.g == b.g && a.id < b.id)));
    }
  }
}
