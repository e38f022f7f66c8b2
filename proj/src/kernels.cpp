#include "shimura/kernels.hpp"

#include "shimura/error.hpp"

namespace shimura {

namespace {

constexpr std::size_t kMaxEnumerationWidth = 30;

void check_width(const PermGroup& group) {
  if (group.ground_size() > kMaxEnumerationWidth)
    throw Error(ErrorCode::DimensionMismatch, "subset enumeration limited to 30 points");
}

// Per-byte lookup: the image of an 8-bit chunk of a mask under one element.
struct ChunkedPermutation {
  std::vector<std::uint64_t> table;  // [chunk][256]
  std::size_t chunks = 0;

  explicit ChunkedPermutation(const Permutation& p) : chunks((p.size() + 7) / 8) {
    table.assign(chunks * 256, 0);
    for (std::size_t c = 0; c < chunks; ++c)
      for (std::uint32_t byte = 0; byte < 256; ++byte) {
        std::uint64_t img = 0;
        for (std::uint32_t b = 0; b < 8; ++b) {
          const std::size_t x = c * 8 + b;
          if ((byte >> b) & 1u && x < p.size()) img |= std::uint64_t{1} << p(static_cast<Point>(x));
        }
        table[c * 256 + byte] = img;
      }
  }

  std::uint64_t apply(std::uint64_t mask) const {
    std::uint64_t out = 0;
    for (std::size_t c = 0; c < chunks; ++c) out |= table[c * 256 + ((mask >> (8 * c)) & 0xffu)];
    return out;
  }
};

}  // namespace

std::vector<std::uint8_t> canonical_subset_flags(const PermGroup& group, Execution exec) {
  check_width(group);
  std::vector<ChunkedPermutation> elements;
  elements.reserve(group.order());
  for (const auto& g : group.elements())
    if (!g.is_identity()) elements.emplace_back(g);
  const std::size_t total = std::size_t{1} << group.ground_size();
  std::vector<std::uint8_t> flags(total, 0);
  for_each_index(total, exec, [&](std::size_t mask) {
    for (const auto& g : elements)
      if (g.apply(mask) < mask) return;
    flags[mask] = 1;
  });
  return flags;
}

std::vector<std::uint8_t> canonical_subset_flags_by_marking(const PermGroup& group) {
  check_width(group);
  const std::size_t total = std::size_t{1} << group.ground_size();
  std::vector<std::uint8_t> flags(total, 0);
  std::vector<bool> seen(total, false);
  for (std::size_t mask = 0; mask < total; ++mask) {
    if (seen[mask]) continue;
    flags[mask] = 1;
    for (const auto& g : group.elements()) seen[apply(g, Subset{mask}).mask] = true;
  }
  return flags;
}

}  // namespace shimura
