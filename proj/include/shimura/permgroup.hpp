#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace shimura {

using Point = std::uint32_t;

inline constexpr std::size_t kDefaultGroupLimit = 100000;
inline constexpr std::size_t kMaxSubsetWidth = 64;

/// A bijection of {0, ..., n-1}, stored as its image array.
class Permutation {
 public:
  Permutation() = default;
  /// Throws InvalidData unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t n);
  /// Builds a permutation from disjoint cycles, e.g. {{0, 1, 2}, {3, 4}}.
  static Permutation from_cycles(std::size_t n, std::initializer_list<std::initializer_list<Point>> cycles);

  std::size_t size() const noexcept { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;

  /// (a * b)(x) = a(b(x)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

  /// Cycle notation with singletons omitted; "()" for the identity.
  std::string to_string() const;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/// A subset of the ground set as a bitmask. Width is carried by the context.
struct Subset {
  std::uint64_t mask = 0;

  static Subset of(std::initializer_list<Point> points);
  static Subset full(std::size_t width);

  bool contains(Point x) const noexcept { return (mask >> x) & 1u; }
  std::size_t size() const noexcept;
  bool empty() const noexcept { return mask == 0; }
  Subset with(Point x) const noexcept { return {mask | (std::uint64_t{1} << x)}; }
  std::vector<Point> points() const;

  friend bool operator==(Subset, Subset) = default;
  friend auto operator<=>(Subset, Subset) = default;
};

/// gamma(I) = { gamma(x) : x in I }.
Subset apply(const Permutation& gamma, Subset subset);

/// Full subgroup generated by `generators`, sorted lexicographically by
/// image array. Throws GroupTooLarge when the closure exceeds `limit`.
std::vector<Permutation> close(std::span<const Permutation> generators, std::size_t limit = kDefaultGroupLimit);

/// A finite permutation group with its element list materialized at
/// construction. Immutable afterwards.
class PermGroup {
 public:
  /// Placeholder on the empty ground set; has no elements.
  PermGroup() = default;
  PermGroup(std::size_t ground_size, std::vector<Permutation> generators,
            std::size_t limit = kDefaultGroupLimit);

  /// Wraps an element list that is already closed under composition (for
  /// example a stabilizer cut out of a larger group). The generator list
  /// is the element list itself.
  static PermGroup from_closed_elements(std::size_t ground_size, std::vector<Permutation> elements);

  std::size_t ground_size() const noexcept { return ground_size_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }

  bool contains(const Permutation& p) const;
  bool is_transitive() const;

 private:
  std::size_t ground_size_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
};

std::vector<Point> orbit_of_point(const PermGroup& group, Point x);

struct SubsetOrbitSet {
  Subset canonical;              // numerically smallest mask in the orbit
  std::vector<Subset> members;   // ascending by mask
};

SubsetOrbitSet orbit_of_subset(const PermGroup& group, Subset subset);

/// { gamma in G : gamma(I) = I }.
PermGroup setwise_stabilizer(const PermGroup& group, Subset subset);

/// { gamma in G : gamma(x) = x }.
PermGroup point_stabilizer(const PermGroup& group, Point x);

}  // namespace shimura
