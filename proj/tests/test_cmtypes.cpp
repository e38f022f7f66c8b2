#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shimura/error.hpp"
#include "support.hpp"

using namespace shimura;
using namespace support;

namespace {

std::shared_ptr<const CMDatum> datum(const CMModel& e, const SubfieldMap& to_k, Subset sigma) {
  return std::make_shared<CMDatum>(CMDatum::make(e, to_k, sigma));
}

std::shared_ptr<const CMDatum> classical(const CMModel& e) {
  return datum(e, SubfieldMap::single_block(e.degree() / 2), Subset{1});
}

std::shared_ptr<const CMDatum> k_is_e0(const CMModel& e, Subset sigma) {
  return datum(e, SubfieldMap::singletons(e.degree() / 2), sigma);
}

std::set<std::string> axioms(const std::vector<Violation>& v) {
  std::set<std::string> out;
  for (const auto& x : v) out.insert(x.axiom);
  return out;
}

}  // namespace

TEST_CASE("datum validation") {
  CHECK(validate_datum(*classical(cyclic_quartic())).empty());
  const auto bad = datum(cyclic_cm(6), SubfieldMap(3, {{0, 1}, {2}}), Subset{1});
  CHECK(axioms(validate_datum(*bad)).count("k_blocks_invariant"));
  const auto out_of_range = datum(cyclic_quartic(), SubfieldMap::single_block(2), Subset{2});
  CHECK(axioms(validate_datum(*out_of_range)).count("sigma_range"));
}

TEST_CASE("partial CM type validation") {
  const auto d = k_is_e0(cyclic_quartic(), Subset::of({0}));
  CHECK(validate_partial_cm({d, Subset::of({0})}).empty());
  CHECK(axioms(validate_partial_cm({d, Subset::of({0, 2})})).count("injective"));
  CHECK(axioms(validate_partial_cm({d, Subset{}})).count("surjective"));
  CHECK(axioms(validate_partial_cm({d, Subset::of({1})})).count("over_sigma"));
  CHECK(axioms(validate_partial_cm({d, Subset::of({5})})).count("phi_range"));
  const auto c = classical(cyclic_quartic());
  CHECK(validate_partial_cm({c, Subset::of({0, 1})}).empty());
  CHECK(all_partial_cm_types(*c).size() == 4);
  for (Subset phi : all_partial_cm_types(*c)) CHECK((phi.mask & apply(cyclic_quartic().bar, phi).mask) == 0);
}

TEST_CASE("multiplication types") {
  const auto d = k_is_e0(cyclic_quartic(), Subset::of({0}));
  const auto f = multiplication_type({d, Subset::of({0})}, 2);
  CHECK(f.values == std::vector<int>{2, 1, 0, 1});
  const auto full = multiplication_type({classical(cyclic_quartic()), Subset::of({0, 1})}, 2);
  CHECK(full.values == std::vector<int>{2, 2, 0, 0});
  const auto none = multiplication_type({k_is_e0(cyclic_quartic(), Subset{}), Subset{}}, 4);
  CHECK(none.values == std::vector<int>{2, 2, 2, 2});
  CHECK(none.is_constant());
  CHECK_THROWS_AS(multiplication_type({d, Subset::of({0})}, 3), Error);
  CHECK_THROWS_AS(multiplication_type({d, Subset::of({0, 2})}, 2), Error);
  for (int n : {2, 4, 8})
    for (Point x = 0; x < 4; ++x) {
      const auto g = multiplication_type({d, Subset::of({0})}, n);
      CHECK(g.values[x] + g.values[cyclic_quartic().bar(x)] == n);
    }
}

TEST_CASE("primitivity examples") {
  const auto quartic = classical(cyclic_quartic());
  const auto biquad = classical(biquadratic());
  for (Subset phi : all_partial_cm_types(*quartic)) {
    CHECK(is_primitive_definition({quartic, phi}));
    CHECK(is_primitive_stabilizer({quartic, phi}, 2));
    CHECK_FALSE(induced_from_subfield({quartic, phi}));
  }
  for (Subset phi : all_partial_cm_types(*biquad)) {
    CHECK_FALSE(is_primitive_definition({biquad, phi}));
    CHECK_FALSE(is_primitive_stabilizer({biquad, phi}, 2));
    CHECK(induced_from_subfield({biquad, phi}));
  }
  // Phi = {e, a} is stable under the fibre-preserving element a.
  CHECK_FALSE(is_primitive_stabilizer({biquad, Subset::of({0, 1})}, 2));
  const auto quadratic = classical(cyclic_cm(2));
  CHECK(is_primitive_definition({quadratic, Subset::of({0})}));
  CHECK(is_primitive_stabilizer({quadratic, Subset::of({0})}, 2));
  CHECK_FALSE(induced_from_subfield({quadratic, Subset::of({0})}));
  for (Subset sigma : {Subset::of({0}), Subset::of({1}), Subset::of({0, 1})}) {
    const auto d = k_is_e0(cyclic_quartic(), sigma);
    for (Subset phi : all_partial_cm_types(*d)) CHECK(is_primitive_definition({d, phi}));
  }
  CHECK_THROWS_AS(induced_from_subfield({k_is_e0(cyclic_quartic(), Subset::of({0})), Subset::of({0})}), Error);
}

TEST_CASE("classical primitivity matches the centralizer oracle on Galois models") {
  for (const auto& [name, model] : cm_models()) {
    if (model.group.order() != model.degree()) continue;
    CAPTURE(name);
    const auto c = classical(model);
    for (Subset phi : all_partial_cm_types(*c)) {
      const bool expected = primitive_by_centralizer(model, phi);
      CHECK(is_primitive_definition({c, phi}) == expected);
      CHECK(is_primitive_stabilizer({c, phi}, 2) == expected);
      CHECK(centre_index({c, phi}, 2) >= 1);
      if (expected) CHECK(centre_index({c, phi}, 2) == 1);
    }
  }
}

TEST_CASE("central torus") {
  const auto quadratic = classical(cyclic_cm(2));
  const auto f = multiplication_type({quadratic, Subset::of({0})}, 2);
  CHECK(f.values == std::vector<int>{2, 0});
  const auto z = central_torus(f, cyclic(2));
  CHECK(z.rank == 2);
  CHECK(contains_weight(z));

  const MultiplicationType constant{4, {2, 2, 2, 2}};
  const auto z1 = central_torus(constant, cyclic(4));
  CHECK(z1.rank == 1);
  CHECK(z1.cochar_basis == IntMatrix{{1, 1, 1, 1}});

  const auto unitary = k_is_e0(cyclic_quartic(), Subset::of({1}));
  const auto fu = multiplication_type({unitary, Subset::of({1})}, 2);
  const auto zu = central_torus(fu, cyclic(4));
  CHECK(contains_weight(zu));
  CHECK(satisfies_unitary_pairing(zu, cyclic_quartic().bar));
  CHECK_FALSE(satisfies_unitary_pairing(CentralTorus{IntMatrix{{1, 0, 0, 0}}, 1}, cyclic_quartic().bar));
}
