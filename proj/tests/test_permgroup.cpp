#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shimura/error.hpp"
#include "support.hpp"

using namespace shimura;
using namespace support;

TEST_CASE("permutation construction rejects non-bijections") {
  CHECK_THROWS_AS(Permutation({0, 0, 1}), Error);
  CHECK_THROWS_AS(Permutation({0, 3}), Error);
  CHECK(Permutation({2, 0, 1}).inverse() == Permutation({1, 2, 0}));
}

TEST_CASE("composition applies the right factor first") {
  const auto a = Permutation::from_cycles(3, {{0, 1}});
  const auto b = Permutation::from_cycles(3, {{1, 2}});
  CHECK((a * b)(1) == a(b(1)));
  CHECK((a * b)(1) == 2);
  CHECK((b * a)(1) == 0);
  CHECK(Permutation::from_cycles(4, {{0, 1, 2}}).to_string() == "(0 1 2)");
  CHECK(Permutation::identity(3).to_string() == "()");
}

TEST_CASE("closure orders") {
  const auto c3 = Permutation::from_cycles(3, {{0, 1, 2}});
  const auto t = Permutation::from_cycles(3, {{0, 1}});
  CHECK(close(std::vector{c3}).size() == 3);
  CHECK(close(std::vector{t, c3}).size() == 6);
  CHECK(close(std::vector{Permutation::identity(4)}).size() == 1);
  CHECK(PermGroup(5, {}).order() == 1);
  for (std::size_t n = 1; n <= 7; ++n) {
    std::size_t fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= i;
    CHECK(symmetric(n).order() == fact);
    if (n >= 3) CHECK(dihedral(n).order() == 2 * n);
    if (n >= 4) CHECK(alternating(n).order() == fact / 2);
  }
}

TEST_CASE("closure respects the size limit") {
  try {
    PermGroup(8, {cycle_perm(8), transposition(8, 0, 1)}, 1000);
    FAIL("expected GroupTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GroupTooLarge);
  }
  CHECK_THROWS_AS(PermGroup(3, {Permutation::identity(4)}), Error);
}

TEST_CASE("point orbits") {
  const auto c3 = cyclic(3);
  CHECK(orbit_of_point(c3, 0) == std::vector<Point>{0, 1, 2});
  CHECK(orbit_of_point(PermGroup(3, {}), 1) == std::vector<Point>{1});
  const PermGroup swap01(4, {Permutation::from_cycles(4, {{0, 1}})});
  CHECK(orbit_of_point(swap01, 2) == std::vector<Point>{2});
  CHECK_THROWS_AS(orbit_of_point(c3, 3), Error);
}

TEST_CASE("subset orbits") {
  const auto s3 = symmetric(3);
  const auto orbit = orbit_of_subset(s3, Subset::of({0, 1}));
  CHECK(orbit.members == std::vector<Subset>{Subset::of({0, 1}), Subset::of({0, 2}), Subset::of({1, 2})});
  CHECK(orbit.canonical == Subset::of({0, 1}));
  CHECK(orbit_of_subset(s3, Subset{}).members == std::vector<Subset>{Subset{}});
  const auto c5 = orbit_of_subset(cyclic(5), Subset::of({0, 1}));
  CHECK(c5.members.size() == 5);
  for (Point i = 0; i < 5; ++i)
    CHECK(std::find(c5.members.begin(), c5.members.end(), Subset::of({i, static_cast<Point>((i + 1) % 5)})) !=
          c5.members.end());
}

TEST_CASE("stabilizers") {
  const auto s3 = symmetric(3);
  const auto stab = setwise_stabilizer(s3, Subset::of({0, 1}));
  CHECK(stab.order() == 2);
  CHECK(stab.contains(Permutation::from_cycles(3, {{0, 1}})));
  CHECK(setwise_stabilizer(s3, Subset::full(3)).order() == 6);
  CHECK(setwise_stabilizer(cyclic(3), Subset::of({0})).order() == 1);
  CHECK(point_stabilizer(symmetric(4), 0).order() == 6);
}

TEST_CASE("orbit-stabilizer and BFS agree on every subset of small groups") {
  for (const auto& [name, g] : transitive_groups()) {
    if (g.ground_size() > 6) continue;
    CAPTURE(name);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.ground_size()); ++m) {
      const auto orbit = orbit_of_subset(g, Subset{m});
      const auto bfs = bfs_orbit(g, Subset{m});
      CHECK(std::set<Subset>(orbit.members.begin(), orbit.members.end()) == bfs);
      CHECK(orbit.members.size() * setwise_stabilizer(g, Subset{m}).order() == g.order());
      CHECK(orbit.canonical == *bfs.begin());
    }
  }
}

TEST_CASE("transitivity") {
  for (const auto& [name, g] : transitive_groups()) {
    CAPTURE(name);
    CHECK(g.is_transitive());
  }
  CHECK_FALSE(PermGroup(4, {Permutation::from_cycles(4, {{0, 1}})}).is_transitive());
}
