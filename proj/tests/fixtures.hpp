// Quaternion data and CM corpora for the worked instances.
#pragma once

#include "support.hpp"

namespace fixtures {

using namespace shimura;
using support::cyclic;

inline const QZInvariant kHalf = QZInvariant::half();

inline QuaternionData mumford() { return {TotallyRealModel(cyclic(3)), 0, {}}; }
inline QuaternionData type_two() { return {TotallyRealModel(cyclic(3)), 0, {{"p", {kHalf}}, {"q", {kHalf}}}}; }
inline QuaternionData type_three() { return {TotallyRealModel(cyclic(2)), 0, {{"p", {kHalf}}}}; }
inline QuaternionData unitary() { return type_three(); }
inline QuaternionData quintic() { return {TotallyRealModel(cyclic(5)), 0, {}}; }

/// Cyclic quartic E with E0 = F, k = E0, Sigma = the E0-embedding not
/// matching sigma_nc.
inline std::shared_ptr<const CMDatum> unitary_datum() {
  return std::make_shared<CMDatum>(
      CMDatum::make(support::cyclic_quartic(), SubfieldMap::singletons(2), Subset::of({1})));
}

/// Cyclic degree-10 E with E0 = k of the distance-one 2-subset orbit.
inline std::shared_ptr<const CMDatum> decic_datum() {
  return std::make_shared<CMDatum>(
      CMDatum::make(support::cyclic_cm(10), SubfieldMap::singletons(5), Subset::of({1, 2, 3})));
}

inline std::shared_ptr<const CMDatum> elliptic_datum() {
  return std::make_shared<CMDatum>(CMDatum::make(support::cyclic_cm(2), SubfieldMap::single_block(1), Subset{1}));
}

inline SubsetOrbit orbit_of(const QuaternionData& d, Subset member) { return make_orbit(d.field.group(), member); }

}  // namespace fixtures
