#include "shimura/brauer.hpp"

#include <set>

#include "shimura/error.hpp"

namespace shimura {

QZInvariant QZInvariant::parse(const std::string& text) {
  if (text == "0") return zero();
  if (text == "1/2") return half();
  throw Error(ErrorCode::ParseError, "invariant must be \"0\" or \"1/2\", got \"" + text + "\"");
}

std::vector<Violation> validate(const QuaternionData& d) {
  std::vector<Violation> out;
  const std::size_t m = d.field.degree();
  const bool sigma_ok = d.sigma_nc < m;
  if (!sigma_ok)
    out.push_back({"sigma_nc_range", "sigma_nc=" + std::to_string(d.sigma_nc) + " but [F:Q]=" + std::to_string(m)});
  std::set<std::string> labels;
  QZInvariant total;
  for (Point s = 0; s < m; ++s) total += d.real_invariant(s);
  for (const auto& block : d.finite_blocks) {
    if (block.prime.empty()) out.push_back({"prime_label", "finite block with an empty prime label"});
    if (block.prime == kInfinitePlace) out.push_back({"prime_label", "\"inf\" is reserved for the real place"});
    if (!labels.insert(block.prime).second) out.push_back({"prime_label", "duplicate prime label " + block.prime});
    if (block.invariants.empty()) out.push_back({"finite_block", "block " + block.prime + " lists no primes"});
    for (auto inv : block.invariants) total += inv;
  }
  if (sigma_ok && !total.is_zero())
    out.push_back({"reciprocity", "sum of all local invariants is 1/2, not 0 (real part " +
                                      std::string((m - 1) % 2 ? "1/2" : "0") + ")"});
  return out;
}

std::vector<std::pair<std::string, QZInvariant>> cores_to_Q_local_invariants(const QuaternionData& d) {
  if (!validate(d).empty()) throw Error(ErrorCode::InvalidData, "quaternion data fails validation");
  std::vector<std::pair<std::string, QZInvariant>> out;
  QZInvariant at_infinity;
  for (Point s = 0; s < d.field.degree(); ++s) at_infinity += d.real_invariant(s);
  out.emplace_back(kInfinitePlace, at_infinity);
  for (const auto& block : d.finite_blocks) {
    QZInvariant sum;
    for (auto inv : block.invariants) sum += inv;
    out.emplace_back(block.prime, sum);
  }
  return out;
}

bool cores_to_Q_is_trivial(const QuaternionData& d) {
  for (const auto& [place, inv] : cores_to_Q_local_invariants(d))
    if (!inv.is_zero()) return false;
  return true;
}

QZInvariant real_invariant_along(const QuaternionData& d, Subset j) {
  if (j.empty()) throw Error(ErrorCode::EmptySubset, "real_invariant_along needs a nonempty subset");
  if (j.mask >> d.field.degree() != 0 && d.field.degree() < 64)
    throw Error(ErrorCode::DimensionMismatch, "subset exceeds Emb(F)");
  QZInvariant sum;
  for (Point s : j.points()) sum += d.real_invariant(s);
  return sum;
}

}  // namespace shimura
