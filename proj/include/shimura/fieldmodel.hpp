#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "shimura/permgroup.hpp"

namespace shimura {

/// One failed axiom with a human-readable witness.
struct Violation {
  std::string axiom;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// A totally real field F, seen through the Galois action on Emb(F).
class TotallyRealModel {
 public:
  /// Throws InvalidModel if the action is not transitive.
  explicit TotallyRealModel(PermGroup group);

  const PermGroup& group() const noexcept { return group_; }
  std::size_t degree() const noexcept { return group_.ground_size(); }

 private:
  PermGroup group_;
};

/// A CM field E: Galois action on Emb(E) plus complex conjugation.
struct CMModel {
  PermGroup group;
  Permutation bar;

  std::size_t degree() const noexcept { return group.ground_size(); }
};

/// Checks transitivity, that bar is a fixed-point-free involution commuting
/// with the action, and that bar is realized by an element of the group
/// (complex conjugation is itself a Galois element).
std::vector<Violation> validate_cm_model(const CMModel& model);

/// A restriction map Emb(source) -> Emb(subfield), given as the partition of
/// the source embeddings into fibres. Blocks are kept sorted internally and
/// ordered by their smallest element; the target index of a block is its
/// position in that order.
class SubfieldMap {
 public:
  /// Throws InvalidModel unless `blocks` partitions {0..source_size-1}.
  SubfieldMap(std::size_t source_size, std::vector<std::vector<Point>> blocks);

  static SubfieldMap singletons(std::size_t n);
  static SubfieldMap single_block(std::size_t n);

  std::size_t source_size() const noexcept { return block_of_.size(); }
  std::size_t target_size() const noexcept { return blocks_.size(); }
  const std::vector<std::vector<Point>>& blocks() const noexcept { return blocks_; }
  Point target_of(Point x) const { return block_of_.at(x); }

  /// True iff every element of `action` permutes the blocks.
  bool is_invariant(const PermGroup& action) const;
  /// Permutation of the target induced by a block-preserving permutation.
  Permutation induced(const Permutation& p) const;
  /// Action on the target induced by `action` (must be invariant).
  PermGroup target_action(const PermGroup& action) const;

  /// Preimage of a target subset.
  Subset preimage(Subset targets) const;
  /// Image of a source subset.
  Subset image(Subset sources) const;

  friend bool operator==(const SubfieldMap& a, const SubfieldMap& b) { return a.blocks_ == b.blocks_; }

 private:
  std::vector<std::vector<Point>> blocks_;
  std::vector<Point> block_of_;
};

/// Emb(E) -> Emb(E0), blocks are the bar-pairs. Throws InvalidModel.
SubfieldMap real_quotient(const CMModel& model);

/// Block of sources mapping to `t`. Throws IndexOutOfRange.
std::vector<Point> fiber(const SubfieldMap& map, Point t);

/// first: A -> B, second: B -> C; returns A -> C.
SubfieldMap compose(const SubfieldMap& first, const SubfieldMap& second);

/// Every partition of the ground set into blocks permuted by the transitive
/// group `action`, trivial ones included, in a deterministic order (finest
/// first).
std::vector<SubfieldMap> block_systems(const PermGroup& action);

/// Extra structure carried along in isomorphism tests: a colour per point
/// and an optional partition (compared without regard to block labels).
/// An empty colour vector means every point has the same colour.
struct Decoration {
  std::vector<int> colour;
  std::optional<SubfieldMap> partition;
};

/// Searches for a bijection pi with pi G pi^-1 = G' (as sets of
/// permutations) that respects the decorations and, when both `bar`
/// pointers are given, satisfies pi bar = bar' pi.
std::optional<Permutation> find_permutation_isomorphism(const PermGroup& a, const Permutation* bar_a,
                                                        const Decoration& da, const PermGroup& b,
                                                        const Permutation* bar_b, const Decoration& db);

/// Searches for a bijection pi with pi G pi^-1 = G', pi bar = bar' pi and
/// pi respecting the decorations. Brute force with pruning; intended for
/// |Emb(E)| <= 12.
std::optional<Permutation> find_isomorphism(const CMModel& a, const Decoration& da, const CMModel& b,
                                            const Decoration& db);

}  // namespace shimura
