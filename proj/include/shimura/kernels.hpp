#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <omp.h>

#include "shimura/permgroup.hpp"

namespace shimura {

/// Selects between the serial reference loop and the OpenMP loop for each
/// data-parallel kernel. Both paths produce identical results.
enum class Execution { Serial, Parallel };

/// Runs body(i) for i in [0, n). Iterations must be independent; results
/// are expected to be written into per-index slots so that the merge order
/// stays deterministic.
template <typename Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

/// flags[mask] == 1 iff mask is the numerically smallest subset in its
/// orbit under `group`. Covers all 2^ground_size masks.
std::vector<std::uint8_t> canonical_subset_flags(const PermGroup& group, Execution exec);

/// Reference implementation of the above kept for tests and benchmarks:
/// scans masks in increasing order and marks whole orbits as they appear.
std::vector<std::uint8_t> canonical_subset_flags_by_marking(const PermGroup& group);

}  // namespace shimura
