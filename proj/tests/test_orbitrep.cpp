#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shimura/error.hpp"
#include "shimura/kernels.hpp"
#include "shimura/orbitrep.hpp"
#include "support.hpp"

using namespace shimura;
using namespace support;

namespace {

QuaternionData data(const PermGroup& g, std::vector<FiniteBlock> blocks = {}) {
  return QuaternionData{TotallyRealModel(g), 0, std::move(blocks)};
}

const QZInvariant h = QZInvariant::half();

}  // namespace

TEST_CASE("orbit enumeration examples") {
  const auto c3 = enumerate_orbits(TotallyRealModel(cyclic(3)), true);
  REQUIRE(c3.size() == 3);
  CHECK(c3[0].ell == 1);
  CHECK(c3[1].ell == 2);
  CHECK(c3[2].is_full_set());
  const auto s3 = enumerate_orbits(TotallyRealModel(symmetric(3)), true);
  REQUIRE(s3.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(s3[i].members == c3[i].members);

  const auto c5 = enumerate_orbits(TotallyRealModel(cyclic(5)), true);
  std::size_t two_subset_orbits = 0;
  for (const auto& o : c5)
    if (o.ell == 2) {
      ++two_subset_orbits;
      CHECK(o.members.size() == 5);
    }
  CHECK(two_subset_orbits == 2);
  CHECK(enumerate_orbits(TotallyRealModel(cyclic(3)), false).front().canonical.empty());
}

TEST_CASE("enumeration matches brute force and the serial path") {
  for (const auto& [name, g] : transitive_groups()) {
    CAPTURE(name);
    const TotallyRealModel f(g);
    const auto parallel = enumerate_orbits(f, true, Execution::Parallel);
    const auto serial = enumerate_orbits(f, true, Execution::Serial);
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t i = 0; i < parallel.size(); ++i) CHECK(parallel[i].members == serial[i].members);
    auto brute = brute_force_orbits(g);
    std::set<std::set<Subset>> expected(brute.begin(), brute.end());
    std::set<std::set<Subset>> got;
    for (const auto& o : parallel) got.insert(std::set<Subset>(o.members.begin(), o.members.end()));
    CHECK(got == expected);
    CHECK(canonical_subset_flags(g, Execution::Parallel) == canonical_subset_flags_by_marking(g));
  }
}

TEST_CASE("irrep records") {
  const auto c3 = cyclic(3);
  const auto d = data(c3);
  const auto orbits = enumerate_orbits(TotallyRealModel(c3), true);
  const auto singletons = irrep_record(orbits[0], d);
  CHECK(singletons.endo_degree == 2);
  CHECK(singletons.dim_W == 12);
  CHECK(singletons.qbar_decomposition.size() == 3);
  for (const auto& s : singletons.qbar_decomposition) CHECK(s.multiplicity == 2);
  const auto full = irrep_record(orbits[2], d);
  CHECK(full.endo_degree == 1);
  CHECK(full.dim_W == 8);
  const auto full2 = irrep_record(orbits[2], data(c3, {{"p", {h}}, {"q", {h}}}));
  CHECK(full2.endo_degree == 2);
  CHECK(full2.dim_W == 16);
}

TEST_CASE("irrep record errors") {
  const auto c3 = cyclic(3);
  const auto empty = make_orbit(c3, Subset{});
  try {
    irrep_record(empty, data(c3));
    FAIL("expected EmptyOrbitMember");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyOrbitMember);
  }
  const auto other = make_orbit(cyclic(5), Subset::of({0}));
  CHECK_THROWS_AS(irrep_record(other, data(c3)), Error);
  CHECK_THROWS_AS(irrep_record(make_orbit(cyclic(2), Subset::of({0})), data(cyclic(2))), Error);
}

TEST_CASE("torus orbits") {
  const auto c3 = cyclic(3);
  const auto regular = torus_orbit_rep(c3, {1, 0, 0});
  CHECK(regular.orbit.size() == 3);
  CHECK(regular.endo_field_degree == 3);
  const auto fixed = torus_orbit_rep(c3, {1, 1, 1});
  CHECK(fixed.orbit.size() == 1);
  CHECK(fixed.endo_field_degree == 1);
  CHECK(torus_orbit_rep(cyclic(4), {1, 0, 1, 0}).orbit.size() == 2);
  CHECK_THROWS_AS(torus_orbit_rep(c3, {1, 0}), Error);
}
