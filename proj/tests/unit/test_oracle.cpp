#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "nagplan/errors.hpp"
#include "nagplan/oracle.hpp"

using namespace nagplan;
using namespace nagplan::oracle;

namespace {

double octile(int dx, int dy) {
  const int a = std::abs(dx), b = std::abs(dy);
  return std::max(a, b) + (std::sqrt(2.0) - 1.0) * std::min(a, b);
}

Environment single_block() {
  auto env = fixtures::flat(12, 10);
  fixtures::fill_box(env, {5, 3, 0}, {7, 7, 1});
  return env;
}

Environment two_blocks() {
  auto env = fixtures::flat(24, 14);
  fixtures::fill_box(env, {5, 4, 0}, {8, 9, 1});
  fixtures::fill_box(env, {14, 6, 0}, {17, 11, 1});
  return env;
}

}  // namespace

TEST_CASE("ray construction") {
  const auto env = two_blocks();
  const auto rays = make_ray_set(env);
  REQUIRE(rays.rays.size() == 2);
  CHECK(rays.rays[0].letter == 1);
  CHECK(rays.rays[1].letter == 2);
  CHECK(rays.rays[0].anchor.x != rays.rays[1].anchor.x);
  CHECK(fixtures::flat(4, 4).is_free({0, 0, 0}));
  CHECK(make_ray_set(fixtures::flat(4, 4)).rays.empty());
  CHECK_THROWS_AS(make_ray_set(fixtures::cylinder(4, 4)), InvalidQuery);
}

TEST_CASE("word helpers") {
  Word w;
  append_letter(w, 1);
  append_letter(w, 2);
  CHECK(word_to_string(w) == "r1 r2");
  append_letter(w, -2);
  CHECK(word_to_string(w) == "r1");
  append_letter(w, -1);
  CHECK(w.empty());
  append_letter(w, -3);
  CHECK(word_to_string(w) == "r3^-1");
}

TEST_CASE("h-signature of explicit paths") {
  const auto env = single_block();
  const auto rays = make_ray_set(env);
  REQUIRE(rays.rays.size() == 1);
  const int ax = rays.rays[0].anchor.x;

  SUBCASE("no crossing") {
    const std::vector<Coord> below{{0, 8, 0}, {1, 8, 0}, {2, 8, 0}, {3, 8, 0}, {4, 8, 0}, {5, 8, 0}, {6, 8, 0}, {7, 8, 0}};
    CHECK(h_signature(below, rays).empty());
  }
  SUBCASE("crossing and coming back cancels") {
    std::vector<Coord> path;
    for (int x = ax - 2; x <= ax + 2; ++x) path.push_back({x, 1, 0});
    for (int x = ax + 1; x >= ax - 2; --x) path.push_back({x, 1, 0});
    CHECK(h_signature(path, rays).empty());
    const std::vector<Coord> half(path.begin(), path.begin() + 5);
    CHECK(word_to_string(h_signature(half, rays)) == "r1");
  }
  SUBCASE("closed loop around the obstacle") {
    // Over the top left to right, down the right side, back under the bottom, up the left side.
    std::vector<Coord> loop;
    for (int x = 3; x <= 8; ++x) loop.push_back({x, 1, 0});
    for (int y = 2; y <= 8; ++y) loop.push_back({8, y, 0});
    for (int x = 7; x >= 3; --x) loop.push_back({x, 8, 0});
    for (int y = 7; y >= 1; --y) loop.push_back({3, y, 0});
    CHECK(word_to_string(h_signature(loop, rays)) == "r1");
    std::vector<Coord> reversed(loop.rbegin(), loop.rend());
    CHECK(word_to_string(h_signature(reversed, rays)) == "r1^-1");
  }
  SUBCASE("touching an anchor is degenerate") {
    const Coord a = rays.rays[0].anchor;
    const std::vector<Coord> path{{a.x - 1, a.y, 0}, a, {a.x + 1, a.y, 0}};
    CHECK_THROWS_AS(h_signature(path, rays), DegenerateCrossing);
  }
}

TEST_CASE("h-signature survives perturbations away from obstacles") {
  const auto env = two_blocks();
  const auto rays = make_ray_set(env);
  const auto classes = h_augmented_dijkstra(env, {0, 7, 0}, {23, 7, 0}, rays, 4);
  REQUIRE(classes.size() == 4);
  std::mt19937 rng(2);
  for (const auto& c : classes) {
    const auto word = h_signature(c.path, rays);
    CHECK(word == c.word);
    for (int trial = 0; trial < 200; ++trial) {
      auto path = c.path;
      const std::size_t i = 1 + rng() % (path.size() - 2);
      const Coord cand{path[i].x + static_cast<int>(rng() % 3) - 1, path[i].y + static_cast<int>(rng() % 3) - 1, 0};
      if (!env.is_free(cand)) continue;
      auto near = [](const Coord& a, const Coord& b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)) == 1; };
      if (!near(cand, path[i - 1]) || !near(cand, path[i + 1])) continue;
      bool clear = true;
      int x0 = std::min({path[i - 1].x, path[i].x, cand.x, path[i + 1].x});
      int x1 = std::max({path[i - 1].x, path[i].x, cand.x, path[i + 1].x});
      int y0 = std::min({path[i - 1].y, path[i].y, cand.y, path[i + 1].y});
      int y1 = std::max({path[i - 1].y, path[i].y, cand.y, path[i + 1].y});
      for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) clear = clear && env.is_free({x, y, 0});
      if (!clear) continue;
      path[i] = cand;
      CHECK(h_signature(path, rays) == word);
    }
  }
}

TEST_CASE("h-augmented search") {
  SUBCASE("no obstacles gives one class") {
    const auto env = fixtures::flat(8, 8);
    const auto classes = h_augmented_dijkstra(env, {0, 0, 0}, {7, 5, 0}, make_ray_set(env), 2);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].length == octile(7, 5));
  }
  SUBCASE("one obstacle gives two classes, the shorter one plain") {
    const auto env = single_block();
    const auto classes = h_augmented_dijkstra(env, {0, 5, 0}, {11, 4, 0}, make_ray_set(env), 2);
    REQUIRE(classes.size() == 2);
    CHECK(classes[0].length == *plain_distance(env, {0, 5, 0}, {11, 4, 0}));
    CHECK(classes[0].word != classes[1].word);
  }
  SUBCASE("two obstacles give distinct words in nondecreasing length") {
    const auto env = two_blocks();
    const auto classes = h_augmented_dijkstra(env, {0, 7, 0}, {23, 7, 0}, make_ray_set(env), 4);
    REQUIRE(classes.size() == 4);
    std::set<Word> words;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      words.insert(classes[i].word);
      if (i) CHECK(classes[i - 1].length <= classes[i].length);
      double sum = 0.0;
      for (std::size_t j = 1; j < classes[i].path.size(); ++j) sum += edge_cost(env, classes[i].path[j - 1], classes[i].path[j]);
      CHECK(sum == doctest::Approx(classes[i].length).epsilon(1e-12));
    }
    CHECK(words.size() == 4);
  }
  SUBCASE("state budget returns a partial list") {
    const auto env = two_blocks();
    const auto classes = h_augmented_dijkstra(env, {0, 7, 0}, {23, 7, 0}, make_ray_set(env), 4, 300);
    CHECK(classes.size() < 4);
  }
}

TEST_CASE("shortest h-augmented class equals plain Dijkstra on random blocks") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    auto env = fixtures::flat(40, 25);
    int x = 3;
    for (int b = 0; b < 3; ++b) {
      const int w = 2 + static_cast<int>(rng() % 4);
      const int y = 2 + static_cast<int>(rng() % 15);
      fixtures::fill_box(env, {x, y, 0}, {x + w, y + 2 + static_cast<int>(rng() % 6), 1});
      x += w + 3 + static_cast<int>(rng() % 5);
    }
    const Coord s{0, static_cast<int>(rng() % 25), 0}, g{39, static_cast<int>(rng() % 25), 0};
    const auto classes = h_augmented_dijkstra(env, s, g, make_ray_set(env), 1);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].length == *plain_distance(env, s, g));
  }
}

TEST_CASE("cylinder unrolling") {
  const int w = 12;
  const auto env = fixtures::cylinder(w, 9);
  SUBCASE("returning to the start takes one full wrap") {
    const auto lengths = cylinder_unrolled_klengths(env, {3, 4, 0}, {3, 4, 0}, 1);
    REQUIRE(lengths.size() == 1);
    CHECK(lengths[0] == doctest::Approx(static_cast<double>(w)).epsilon(1e-12));
  }
  SUBCASE("same column, two classes") {
    const auto lengths = cylinder_unrolled_klengths(env, {3, 1, 0}, {3, 6, 0}, 2);
    REQUIRE(lengths.size() == 2);
    CHECK(lengths[0] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(lengths[1] == doctest::Approx(octile(w, 5)).epsilon(1e-12));
  }
  SUBCASE("winding classes in order") {
    const auto lengths = cylinder_unrolled_klengths(env, {1, 2, 0}, {5, 6, 0}, 4);
    REQUIRE(lengths.size() == 4);
    CHECK(lengths[0] == doctest::Approx(octile(4, 4)).epsilon(1e-12));
    CHECK(lengths[1] == doctest::Approx(octile(w - 4, 4)).epsilon(1e-12));
    CHECK(lengths[2] == doctest::Approx(octile(w + 4, 4)).epsilon(1e-12));
    CHECK(lengths[3] == doctest::Approx(octile(2 * w - 4, 4)).epsilon(1e-12));
  }
  SUBCASE("wrong topology") {
    CHECK_THROWS_AS(cylinder_unrolled_klengths(fixtures::flat(4, 4), {0, 0, 0}, {1, 1, 0}, 1), InvalidQuery);
  }
}

TEST_CASE("analytic cylinder geodesic") {
  CHECK(cylinder_geodesic_length(2.0, 0.0, std::numbers::pi, 0) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(cylinder_geodesic_length(1.0, 3.0, 0.0, 0) == doctest::Approx(3.0));
  CHECK(cylinder_geodesic_length(1.0, 0.0, 0.0, 1) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(cylinder_geodesic_length(1.0, 4.0, 0.0, -1) == doctest::Approx(std::hypot(4.0, 2.0 * std::numbers::pi)));
}

TEST_CASE("brute-force geodesic enumeration") {
  SUBCASE("free 3x3 grid has one class") {
    const auto env = fixtures::flat(3, 3);
    const auto classes = brute_force_k_geodesics(env, {0, 0, 0}, {2, 1, 0}, 1);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].length == doctest::Approx(octile(2, 1)).epsilon(1e-12));
  }
  SUBCASE("blocked centre gives two equal classes") {
    auto env = fixtures::flat(5, 5);
    env.set_obstacle({2, 2, 0}, true);
    const auto classes = brute_force_k_geodesics(env, {0, 2, 0}, {4, 2, 0}, 2);
    REQUIRE(classes.size() == 2);
    CHECK(classes[0].key != classes[1].key);
    CHECK(classes[0].length == doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(classes[1].length == doctest::Approx(classes[0].length).epsilon(1e-12));
    const auto h = h_augmented_dijkstra(env, {0, 2, 0}, {4, 2, 0}, make_ray_set(env), 2);
    REQUIRE(h.size() == 2);
    CHECK(h[1].length == doctest::Approx(classes[1].length).epsilon(1e-12));
  }
  SUBCASE("asking for more classes than exist returns fewer") {
    auto env = fixtures::flat(5, 5);
    env.set_obstacle({2, 2, 0}, true);
    const auto classes = brute_force_k_geodesics(env, {0, 2, 0}, {4, 2, 0}, 6);
    CHECK(classes.size() < 6);
    CHECK(classes.size() >= 2);
  }
  SUBCASE("agrees with the h-augmented search on a small two-block map") {
    auto env = fixtures::flat(12, 8);
    fixtures::fill_box(env, {3, 2, 0}, {5, 5, 1});
    fixtures::fill_box(env, {7, 3, 0}, {9, 6, 1});
    const auto bf = brute_force_k_geodesics(env, {0, 4, 0}, {11, 4, 0}, 3);
    const auto h = h_augmented_dijkstra(env, {0, 4, 0}, {11, 4, 0}, make_ray_set(env), 3);
    REQUIRE(bf.size() == 3);
    REQUIRE(h.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(bf[i].length == doctest::Approx(h[i].length).epsilon(1e-12));
  }
  SUBCASE("visit budget") {
    auto env = fixtures::flat(8, 8);
    env.set_obstacle({4, 4, 0}, true);
    BruteForceOptions opts;
    opts.max_visits = 50;
    CHECK_THROWS_AS(brute_force_k_geodesics(env, {0, 0, 0}, {7, 7, 0}, 2, opts), OracleTimeout);
  }
}
