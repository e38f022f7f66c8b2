#include "shimura/permgroup.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "shimura/error.hpp"

namespace shimura {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidData: return "InvalidData";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::EmptyOrbitMember: return "EmptyOrbitMember";
    case ErrorCode::InvalidPartialCMType: return "InvalidPartialCMType";
    case ErrorCode::NotClassicalCMType: return "NotClassicalCMType";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::OrbitMismatch: return "OrbitMismatch";
    case ErrorCode::Case0Rejected: return "Case0Rejected";
    case ErrorCode::InconsistentData: return "InconsistentData";
    case ErrorCode::DuplicateIsotype: return "DuplicateIsotype";
    case ErrorCode::MixedAdjointData: return "MixedAdjointData";
    case ErrorCode::DegenerateMultiplicationType: return "DegenerateMultiplicationType";
    case ErrorCode::InvariantViolated: return "InvariantViolated";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point y : images_) {
    if (y >= images_.size() || seen[y])
      throw Error(ErrorCode::InvalidData, "image array is not a bijection");
    seen[y] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(std::size_t n,
                                     std::initializer_list<std::initializer_list<Point>> cycles) {
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  for (const auto& cycle : cycles) {
    std::vector<Point> c(cycle);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= n) throw Error(ErrorCode::IndexOutOfRange, "cycle entry out of range");
      images[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
  Permutation p;
  p.images_ = std::move(inv);
  return p;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "composing permutations of different degree");
  Permutation p;
  p.images_.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) p.images_[i] = a.images_[b.images_[i]];
  return p;
}

std::string Permutation::to_string() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (Point start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    out += '(';
    Point x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out += ' ';
      out += std::to_string(x);
      first = false;
      x = images_[x];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

Subset Subset::of(std::initializer_list<Point> points) {
  Subset s;
  for (Point x : points) s = s.with(x);
  return s;
}

Subset Subset::full(std::size_t width) {
  if (width > kMaxSubsetWidth) throw Error(ErrorCode::DimensionMismatch, "subset width exceeds 64");
  return {width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1};
}

std::size_t Subset::size() const noexcept { return static_cast<std::size_t>(std::popcount(mask)); }

std::vector<Point> Subset::points() const {
  std::vector<Point> out;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) out.push_back(static_cast<Point>(std::countr_zero(m)));
  return out;
}

Subset apply(const Permutation& gamma, Subset subset) {
  Subset out;
  for (std::uint64_t m = subset.mask; m != 0; m &= m - 1)
    out.mask |= std::uint64_t{1} << gamma(static_cast<Point>(std::countr_zero(m)));
  return out;
}

std::vector<Permutation> close(std::span<const Permutation> generators, std::size_t limit) {
  if (generators.empty()) throw Error(ErrorCode::InvalidData, "closure of an empty generator list");
  const std::size_t n = generators.front().size();
  for (const auto& g : generators)
    if (g.size() != n) throw Error(ErrorCode::DimensionMismatch, "generators act on different ground sets");

  std::unordered_set<Permutation, PermutationHash> seen;
  std::deque<Permutation> frontier;
  auto id = Permutation::identity(n);
  seen.insert(id);
  frontier.push_back(std::move(id));
  while (!frontier.empty()) {
    Permutation current = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : generators) {
      Permutation next = g * current;
      if (seen.insert(next).second) {
        if (seen.size() > limit)
          throw Error(ErrorCode::GroupTooLarge,
                      "closure exceeds the limit of " + std::to_string(limit) + " elements");
        frontier.push_back(std::move(next));
      }
    }
  }
  std::vector<Permutation> elements(seen.begin(), seen.end());
  std::sort(elements.begin(), elements.end());
  return elements;
}

PermGroup::PermGroup(std::size_t ground_size, std::vector<Permutation> generators, std::size_t limit)
    : ground_size_(ground_size), generators_(std::move(generators)) {
  if (ground_size_ == 0) throw Error(ErrorCode::InvalidData, "ground set must be nonempty");
  for (const auto& g : generators_)
    if (g.size() != ground_size_) throw Error(ErrorCode::DimensionMismatch, "generator degree differs from ground size");
  if (generators_.empty()) generators_.push_back(Permutation::identity(ground_size_));
  elements_ = close(generators_, limit);
}

PermGroup PermGroup::from_closed_elements(std::size_t ground_size, std::vector<Permutation> elements) {
  PermGroup g;
  g.ground_size_ = ground_size;
  std::sort(elements.begin(), elements.end());
  g.generators_ = elements;
  g.elements_ = std::move(elements);
  return g;
}

bool PermGroup::contains(const Permutation& p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

bool PermGroup::is_transitive() const { return orbit_of_point(*this, 0).size() == ground_size_; }

std::vector<Point> orbit_of_point(const PermGroup& group, Point x) {
  if (x >= group.ground_size()) throw Error(ErrorCode::IndexOutOfRange, "point outside the ground set");
  std::vector<bool> hit(group.ground_size(), false);
  for (const auto& g : group.elements()) hit[g(x)] = true;
  std::vector<Point> out;
  for (Point y = 0; y < hit.size(); ++y)
    if (hit[y]) out.push_back(y);
  return out;
}

SubsetOrbitSet orbit_of_subset(const PermGroup& group, Subset subset) {
  std::vector<Subset> members;
  members.reserve(group.order());
  for (const auto& g : group.elements()) members.push_back(apply(g, subset));
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return {members.front(), std::move(members)};
}

PermGroup setwise_stabilizer(const PermGroup& group, Subset subset) {
  std::vector<Permutation> stab;
  for (const auto& g : group.elements())
    if (apply(g, subset) == subset) stab.push_back(g);
  return PermGroup::from_closed_elements(group.ground_size(), std::move(stab));
}

PermGroup point_stabilizer(const PermGroup& group, Point x) {
  std::vector<Permutation> stab;
  for (const auto& g : group.elements())
    if (g(x) == x) stab.push_back(g);
  return PermGroup::from_closed_elements(group.ground_size(), std::move(stab));
}

}  // namespace shimura
