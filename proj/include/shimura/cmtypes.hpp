#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "shimura/fieldmodel.hpp"
#include "shimura/intlattice.hpp"
#include "shimura/permgroup.hpp"

namespace shimura {

/// (E, E0, k, Sigma): a CM model, the subfield k of E0 as a block system
/// on Emb(E0), and Sigma as a subset of Emb(k).
struct CMDatum {
  CMModel E;
  SubfieldMap to_E0;
  SubfieldMap to_k;
  Subset sigma_set;

  /// Builds to_E0 from the bar-pairs. Throws InvalidModel if E is invalid
  /// or to_k does not partition Emb(E0).
  static CMDatum make(CMModel e, SubfieldMap to_k, Subset sigma_set);

  /// Restriction Emb(E) -> Emb(k).
  SubfieldMap e_to_k() const { return compose(to_E0, to_k); }
  bool is_classical() const noexcept { return to_k.target_size() == 1 && sigma_set == Subset{1}; }
};

std::vector<Violation> validate_datum(const CMDatum& datum);

struct PartialCMType {
  std::shared_ptr<const CMDatum> datum;
  Subset phi;
};

/// Values f(phi) in {0, n/2, n}, indexed by Emb(E).
struct MultiplicationType {
  int n = 0;
  std::vector<int> values;

  bool is_constant() const;
  friend bool operator==(const MultiplicationType&, const MultiplicationType&) = default;
};

/// Saturated cocharacter lattice of the connected centre inside X_*(T_E).
struct CentralTorus {
  IntMatrix cochar_basis;
  std::size_t rank = 0;
};

/// Empty iff restriction to Emb(E0) maps phi bijectively onto the
/// E0-embeddings lying over Sigma.
std::vector<Violation> validate_partial_cm(const PartialCMType& t);

/// Every valid phi for the datum, ascending by mask.
std::vector<Subset> all_partial_cm_types(const CMDatum& datum);

/// f = n on phi, 0 on bar(phi), n/2 elsewhere. Throws InvalidPartialCMType,
/// InvalidData for odd or nonpositive n.
MultiplicationType multiplication_type(const PartialCMType& t, int n);

/// Direct check of the quantified condition over all pairs in a common
/// fibre over Emb(k) and all Galois elements.
bool is_primitive_definition(const PartialCMType& t);

/// Stabilizer form: with phi0 = embedding 0, primitive iff
/// Stab(phi0) = Stab(P(phi0)) ∩ Stab(ē_phi0), where
/// Stab(ē_phi0) = { d : f(g d phi0) = f(g phi0) for all g }.
bool is_primitive_stabilizer(const PartialCMType& t, int n);

/// [Stab(ē_phi0) : Stab(phi0)], i.e. [E : K] where K is the centre of the
/// commutant of the connected centre. 1 for primitive classical CM types.
std::size_t centre_index(const PartialCMType& t, int n);

/// Classical CM types only (k = Q, Sigma = Emb(Q)); throws
/// NotClassicalCMType otherwise. True iff phi is a union of fibres of a
/// proper CM subfield.
bool induced_from_subfield(const PartialCMType& t);

/// Saturation of the span of the Galois orbit of a = 2 f / n.
CentralTorus central_torus(const MultiplicationType& f, const PermGroup& action);

/// The all-ones cocharacter (weight) lies in the lattice.
bool contains_weight(const CentralTorus& z);
/// Every basis row v has v[x] + v[bar x] independent of x (Z inside U_E).
bool satisfies_unitary_pairing(const CentralTorus& z, const Permutation& bar);

}  // namespace shimura
