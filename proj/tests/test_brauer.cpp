#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shimura/brauer.hpp"
#include "shimura/error.hpp"
#include "support.hpp"

using namespace shimura;
using namespace support;

namespace {

QuaternionData data(std::size_t m, std::vector<FiniteBlock> blocks = {}) {
  return QuaternionData{TotallyRealModel(cyclic(m)), 0, std::move(blocks)};
}

const QZInvariant h = QZInvariant::half();
const QZInvariant z = QZInvariant::zero();

}  // namespace

TEST_CASE("Q/Z invariants") {
  CHECK(QZInvariant::parse("0") == z);
  CHECK(QZInvariant::parse("1/2") == h);
  CHECK(h + h == z);
  CHECK(h + z == h);
  CHECK_THROWS_AS(QZInvariant::parse("0.5"), Error);
  CHECK(h.to_string() == "1/2");
}

TEST_CASE("reciprocity") {
  CHECK(validate(data(3)).empty());
  const auto v = validate(data(2));
  REQUIRE(v.size() == 1);
  CHECK(v[0].axiom == "reciprocity");
  CHECK(validate(data(2, {{"p", {h}}})).empty());
  CHECK(validate(data(3, {{"p", {h}}, {"q", {h}}})).empty());
}

TEST_CASE("structural violations are all reported") {
  auto d = data(3, {{"inf", {h}}, {"p", {}}, {"p", {h}}});
  d.sigma_nc = 7;
  std::set<std::string> axioms;
  for (const auto& v : validate(d)) axioms.insert(v.axiom);
  CHECK(axioms.count("sigma_nc_range"));
  CHECK(axioms.count("prime_label"));
  CHECK(axioms.count("finite_block"));
}

TEST_CASE("corestriction invariants") {
  using Inv = std::vector<std::pair<std::string, QZInvariant>>;
  CHECK(cores_to_Q_local_invariants(data(3)) == Inv{{"inf", z}});
  CHECK(cores_to_Q_local_invariants(data(2, {{"p", {h}}})) == Inv{{"inf", h}, {"p", h}});
  CHECK(cores_to_Q_local_invariants(data(3, {{"p", {h}}, {"q", {h}}})) == Inv{{"inf", z}, {"p", h}, {"q", h}});
  CHECK(cores_to_Q_local_invariants(data(5, {{"p", {h, h}}})) == Inv{{"inf", z}, {"p", z}});
  CHECK(cores_to_Q_is_trivial(data(3)));
  CHECK_FALSE(cores_to_Q_is_trivial(data(3, {{"p", {h}}, {"q", {h}}})));
  CHECK_FALSE(cores_to_Q_is_trivial(data(2, {{"p", {h}}})));
  CHECK_THROWS_AS(cores_to_Q_local_invariants(data(2)), Error);
}

TEST_CASE("infinite invariant depends only on the parity of the degree") {
  for (std::size_t m = 1; m <= 9; ++m) {
    std::vector<FiniteBlock> blocks;
    if (m % 2 == 0) blocks.push_back({"p", {h}});
    const auto inv = cores_to_Q_local_invariants(data(m, blocks));
    CHECK(inv.front().second == (m % 2 == 0 ? h : z));
  }
}

TEST_CASE("real invariant along a subset") {
  const auto d = data(3);
  CHECK(real_invariant_along(d, Subset::of({0})) == z);
  CHECK(real_invariant_along(d, Subset::of({0, 1})) == h);
  CHECK(real_invariant_along(d, Subset::full(3)) == z);
  CHECK_THROWS_AS(real_invariant_along(d, Subset{}), Error);
}
