#pragma once

#include <string>
#include <utility>
#include <vector>

#include "shimura/fieldmodel.hpp"
#include "shimura/permgroup.hpp"

namespace shimura {

/// A local Brauer invariant of a quaternion class: 0 or 1/2 in Q/Z.
class QZInvariant {
 public:
  constexpr QZInvariant() = default;
  static constexpr QZInvariant zero() { return QZInvariant(false); }
  static constexpr QZInvariant half() { return QZInvariant(true); }
  /// Accepts exactly "0" or "1/2"; throws ParseError otherwise.
  static QZInvariant parse(const std::string& text);

  constexpr bool is_zero() const noexcept { return !half_; }
  std::string to_string() const { return half_ ? "1/2" : "0"; }

  friend constexpr QZInvariant operator+(QZInvariant a, QZInvariant b) { return QZInvariant(a.half_ != b.half_); }
  QZInvariant& operator+=(QZInvariant other) { return *this = *this + other; }
  friend constexpr bool operator==(QZInvariant, QZInvariant) = default;

 private:
  constexpr explicit QZInvariant(bool half) : half_(half) {}
  bool half_ = false;
};

/// Invariants of D at the primes of F above one rational prime.
struct FiniteBlock {
  std::string prime;
  std::vector<QZInvariant> invariants;
};

/// A quaternion algebra D over F split at exactly one real place. The real
/// invariants are implied by sigma_nc: 0 there, 1/2 at every other embedding.
struct QuaternionData {
  TotallyRealModel field;
  Point sigma_nc = 0;
  std::vector<FiniteBlock> finite_blocks;

  QZInvariant real_invariant(Point sigma) const {
    return sigma == sigma_nc ? QZInvariant::zero() : QZInvariant::half();
  }
};

inline constexpr const char* kInfinitePlace = "inf";

std::vector<Violation> validate(const QuaternionData& d);

/// Local invariants of Cores_{F/Q}(D): "inf" first, then one entry per
/// finite block in input order. Throws InvalidData if D is invalid.
std::vector<std::pair<std::string, QZInvariant>> cores_to_Q_local_invariants(const QuaternionData& d);

bool cores_to_Q_is_trivial(const QuaternionData& d);

/// Sum over sigma in J of the real invariants of D. Throws EmptySubset.
QZInvariant real_invariant_along(const QuaternionData& d, Subset j);

}  // namespace shimura
