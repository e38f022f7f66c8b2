#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "shimura/brauer.hpp"
#include "shimura/fieldmodel.hpp"
#include "shimura/kernels.hpp"
#include "shimura/permgroup.hpp"

namespace shimura {

/// A Galois orbit of subsets of Emb(F). Emb(k) of the orbit's field is in
/// bijection with `members`.
struct SubsetOrbit {
  Subset canonical;
  std::vector<Subset> members;  // ascending by mask
  std::size_t ell = 0;          // common cardinality of the members
  PermGroup stab;               // setwise stabilizer of `canonical`
  std::size_t ground_size = 0;

  std::size_t k_degree() const noexcept { return members.size(); }
  bool is_full_set() const noexcept { return members.size() == 1 && canonical == Subset::full(ground_size); }
  bool is_singletons() const noexcept { return ell == 1; }
  /// Position of a member in `members`; throws IndexOutOfRange if absent.
  std::size_t index_of(Subset member) const;
};

struct QbarSummand {
  Subset member;
  std::size_t multiplicity = 0;
};

/// Discrete invariants of the irreducible representation attached to an orbit.
struct IrrepRecord {
  SubsetOrbit orbit;
  std::size_t k_degree = 0;
  std::size_t endo_degree = 0;   // 1 or 2
  std::uint64_t dim_W = 0;
  std::vector<QbarSummand> qbar_decomposition;
};

struct TorusOrbitRep {
  std::size_t lattice_rank = 0;
  std::vector<std::vector<std::int64_t>> orbit;  // ascending
  std::size_t endo_field_degree = 0;
};

/// All orbits of (nonempty) subsets, sorted by (ell, canonical mask).
std::vector<SubsetOrbit> enumerate_orbits(const TotallyRealModel& f, bool nonempty_only,
                                          Execution exec = Execution::Parallel);

/// Orbit containing a given subset.
SubsetOrbit make_orbit(const PermGroup& group, Subset member);

/// Throws EmptyOrbitMember for the orbit of the empty set, InvalidData if D
/// fails validation or lives on a different ground set.
IrrepRecord irrep_record(const SubsetOrbit& orbit, const QuaternionData& d);

/// Orbit of a character vector under coordinate permutation:
/// (gamma . v)[gamma(i)] = v[i]. Throws DimensionMismatch.
TorusOrbitRep torus_orbit_rep(const PermGroup& action, const std::vector<std::int64_t>& seed);

}  // namespace shimura
