#include "shimura/orbitrep.hpp"

#include <algorithm>

#include "shimura/error.hpp"

namespace shimura {

std::size_t SubsetOrbit::index_of(Subset member) const {
  const auto it = std::lower_bound(members.begin(), members.end(), member);
  if (it == members.end() || *it != member) throw Error(ErrorCode::IndexOutOfRange, "subset is not an orbit member");
  return static_cast<std::size_t>(it - members.begin());
}

SubsetOrbit make_orbit(const PermGroup& group, Subset member) {
  auto set = orbit_of_subset(group, member);
  SubsetOrbit orbit{set.canonical, std::move(set.members), member.size(), setwise_stabilizer(group, set.canonical),
                    group.ground_size()};
  return orbit;
}

std::vector<SubsetOrbit> enumerate_orbits(const TotallyRealModel& f, bool nonempty_only, Execution exec) {
  const PermGroup& group = f.group();
  const auto flags = canonical_subset_flags(group, exec);
  std::vector<Subset> canonicals;
  for (std::size_t mask = nonempty_only ? 1 : 0; mask < flags.size(); ++mask)
    if (flags[mask]) canonicals.push_back(Subset{mask});
  std::vector<SubsetOrbit> orbits(canonicals.size(), SubsetOrbit{{}, {}, 0, PermGroup::from_closed_elements(1, {}), 0});
  for_each_index(canonicals.size(), exec, [&](std::size_t i) { orbits[i] = make_orbit(group, canonicals[i]); });
  std::stable_sort(orbits.begin(), orbits.end(), [](const SubsetOrbit& a, const SubsetOrbit& b) {
    return a.ell != b.ell ? a.ell < b.ell : a.canonical < b.canonical;
  });
  return orbits;
}

IrrepRecord irrep_record(const SubsetOrbit& orbit, const QuaternionData& d) {
  if (orbit.canonical.empty()) throw Error(ErrorCode::EmptyOrbitMember, "orbit of the empty subset has no irrep");
  if (orbit.ground_size != d.field.degree())
    throw Error(ErrorCode::InvalidData, "orbit and quaternion data live on different Emb(F)");
  if (!validate(d).empty()) throw Error(ErrorCode::InvalidData, "quaternion data fails validation");

  IrrepRecord rec;
  rec.orbit = orbit;
  rec.k_degree = orbit.members.size();
  if (orbit.is_full_set()) {
    rec.endo_degree = cores_to_Q_is_trivial(d) ? 1 : 2;
  } else {
    // The real place of k attached to a member J sees the sum of D's real
    // invariants over J. One nonzero value makes the class nontrivial.
    const bool ramified = std::any_of(orbit.members.begin(), orbit.members.end(),
                                      [&](Subset j) { return !real_invariant_along(d, j).is_zero(); });
    if (!ramified)
      throw Error(ErrorCode::InvariantViolated,
                  "proper orbit with all real invariants 0; the sigma_nc bookkeeping is inconsistent");
    rec.endo_degree = 2;
  }
  rec.dim_W = static_cast<std::uint64_t>(rec.k_degree) * rec.endo_degree * (std::uint64_t{1} << orbit.ell);
  for (Subset j : orbit.members) rec.qbar_decomposition.push_back({j, rec.endo_degree});
  return rec;
}

TorusOrbitRep torus_orbit_rep(const PermGroup& action, const std::vector<std::int64_t>& seed) {
  if (seed.size() != action.ground_size())
    throw Error(ErrorCode::DimensionMismatch, "character vector length differs from lattice rank");
  std::vector<std::vector<std::int64_t>> orbit;
  for (const auto& g : action.elements()) {
    std::vector<std::int64_t> v(seed.size());
    for (Point i = 0; i < seed.size(); ++i) v[g(i)] = seed[i];
    orbit.push_back(std::move(v));
  }
  std::sort(orbit.begin(), orbit.end());
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  const std::size_t size = orbit.size();
  return {seed.size(), std::move(orbit), size};
}

}  // namespace shimura
