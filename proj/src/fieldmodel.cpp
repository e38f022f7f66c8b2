#include "shimura/fieldmodel.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "shimura/error.hpp"

namespace shimura {

TotallyRealModel::TotallyRealModel(PermGroup group) : group_(std::move(group)) {
  if (!group_.is_transitive()) throw Error(ErrorCode::InvalidModel, "Galois action on Emb(F) is not transitive");
}

std::vector<Violation> validate_cm_model(const CMModel& model) {
  std::vector<Violation> out;
  const std::size_t n = model.degree();
  if (model.bar.size() != n) {
    out.push_back({"bar_degree", "bar acts on " + std::to_string(model.bar.size()) + " points, Emb(E) has " +
                                     std::to_string(n)});
    return out;
  }
  if (!model.group.is_transitive()) out.push_back({"transitive", "Galois action on Emb(E) is not transitive"});
  for (Point x = 0; x < n; ++x) {
    if (model.bar(model.bar(x)) != x) {
      out.push_back({"bar_involution", "bar(bar(" + std::to_string(x) + ")) != " + std::to_string(x)});
      break;
    }
  }
  for (Point x = 0; x < n; ++x) {
    if (model.bar(x) == x) {
      out.push_back({"bar_fixed_point_free", "bar fixes " + std::to_string(x)});
      break;
    }
  }
  for (const auto& gamma : model.group.generators()) {
    for (Point x = 0; x < n; ++x) {
      if (gamma(model.bar(x)) != model.bar(gamma(x))) {
        out.push_back({"bar_equivariant", "gamma=" + gamma.to_string() + " x=" + std::to_string(x) +
                                              ": gamma(bar(x))=" + std::to_string(gamma(model.bar(x))) +
                                              " but bar(gamma(x))=" + std::to_string(model.bar(gamma(x)))});
        break;
      }
    }
  }
  if (!model.group.contains(model.bar))
    out.push_back({"bar_in_group", "bar=" + model.bar.to_string() + " is not an element of the Galois group"});
  return out;
}

SubfieldMap::SubfieldMap(std::size_t source_size, std::vector<std::vector<Point>> blocks)
    : blocks_(std::move(blocks)), block_of_(source_size, static_cast<Point>(-1)) {
  for (auto& b : blocks_) {
    if (b.empty()) throw Error(ErrorCode::InvalidModel, "empty block in subfield map");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end());
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (Point x : blocks_[i]) {
      if (x >= source_size) throw Error(ErrorCode::InvalidModel, "block entry outside the source set");
      if (block_of_[x] != static_cast<Point>(-1)) throw Error(ErrorCode::InvalidModel, "blocks overlap");
      block_of_[x] = static_cast<Point>(i);
    }
  }
  for (Point b : block_of_)
    if (b == static_cast<Point>(-1)) throw Error(ErrorCode::InvalidModel, "blocks do not cover the source set");
}

SubfieldMap SubfieldMap::singletons(std::size_t n) {
  std::vector<std::vector<Point>> blocks;
  for (Point x = 0; x < n; ++x) blocks.push_back({x});
  return SubfieldMap(n, std::move(blocks));
}

SubfieldMap SubfieldMap::single_block(std::size_t n) {
  std::vector<Point> all(n);
  for (Point x = 0; x < n; ++x) all[x] = x;
  return SubfieldMap(n, {all});
}

Permutation SubfieldMap::induced(const Permutation& p) const {
  std::vector<Point> images(blocks_.size());
  std::vector<bool> hit(blocks_.size(), false);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Point target = block_of_[p(blocks_[i].front())];
    for (Point x : blocks_[i])
      if (block_of_[p(x)] != target) throw Error(ErrorCode::InvalidModel, "permutation does not preserve the blocks");
    if (hit[target]) throw Error(ErrorCode::InvalidModel, "permutation does not preserve the blocks");
    hit[target] = true;
    images[i] = target;
  }
  return Permutation(std::move(images));
}

bool SubfieldMap::is_invariant(const PermGroup& action) const {
  if (action.ground_size() != source_size()) return false;
  try {
    for (const auto& g : action.generators()) (void)induced(g);
  } catch (const Error&) {
    return false;
  }
  return true;
}

PermGroup SubfieldMap::target_action(const PermGroup& action) const {
  std::vector<Permutation> gens;
  for (const auto& g : action.generators()) gens.push_back(induced(g));
  return PermGroup(target_size(), std::move(gens), std::max<std::size_t>(action.order(), 1));
}

Subset SubfieldMap::preimage(Subset targets) const {
  Subset out;
  for (Point t : targets.points())
    for (Point x : blocks_.at(t)) out = out.with(x);
  return out;
}

Subset SubfieldMap::image(Subset sources) const {
  Subset out;
  for (Point x : sources.points()) out = out.with(block_of_.at(x));
  return out;
}

SubfieldMap real_quotient(const CMModel& model) {
  if (!validate_cm_model(model).empty()) throw Error(ErrorCode::InvalidModel, "CM model fails validation");
  std::vector<std::vector<Point>> blocks;
  for (Point x = 0; x < model.degree(); ++x)
    if (x < model.bar(x)) blocks.push_back({x, model.bar(x)});
  return SubfieldMap(model.degree(), std::move(blocks));
}

std::vector<Point> fiber(const SubfieldMap& map, Point t) {
  if (t >= map.target_size()) throw Error(ErrorCode::IndexOutOfRange, "target index " + std::to_string(t));
  return map.blocks()[t];
}

SubfieldMap compose(const SubfieldMap& first, const SubfieldMap& second) {
  if (first.target_size() != second.source_size())
    throw Error(ErrorCode::DimensionMismatch, "subfield maps do not compose");
  std::vector<std::vector<Point>> blocks(second.target_size());
  for (Point x = 0; x < first.source_size(); ++x) blocks[second.target_of(first.target_of(x))].push_back(x);
  return SubfieldMap(first.source_size(), std::move(blocks));
}

std::vector<SubfieldMap> block_systems(const PermGroup& action) {
  const std::size_t n = action.ground_size();
  if (n > 20) throw Error(ErrorCode::DimensionMismatch, "block system search limited to 20 points");
  std::vector<SubfieldMap> out;
  std::set<std::vector<std::vector<Point>>> seen;
  // Every block containing 0; its translates must tile the ground set.
  for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (n - 1)); ++rest) {
    const Subset block{(rest << 1) | 1u};
    if (n % block.size() != 0) continue;
    std::vector<Subset> translates{block};
    bool ok = true;
    for (std::size_t i = 0; i < translates.size() && ok; ++i) {
      for (const auto& g : action.generators()) {
        const Subset img = apply(g, translates[i]);
        bool known = false;
        for (Subset t : translates) {
          if (t == img) {
            known = true;
            break;
          }
          if ((t.mask & img.mask) != 0) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
        if (!known) translates.push_back(img);
      }
    }
    if (!ok) continue;
    std::uint64_t covered = 0;
    for (Subset t : translates) covered |= t.mask;
    if (covered != Subset::full(n).mask) continue;
    std::vector<std::vector<Point>> blocks;
    for (Subset t : translates) blocks.push_back(t.points());
    SubfieldMap map(n, blocks);
    if (seen.insert(map.blocks()).second) out.push_back(std::move(map));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SubfieldMap& a, const SubfieldMap& b) { return a.target_size() > b.target_size(); });
  return out;
}

namespace {

class IsomorphismSearch {
 public:
  IsomorphismSearch(const PermGroup& a, const Permutation* bar_a, const Decoration& da, const PermGroup& b,
                    const Permutation* bar_b, const Decoration& db)
      : a_(a), bar_a_(bar_a), da_(da), b_(b), bar_b_(bar_b), db_(db), n_(a.ground_size()), pi_(n_, kUnset),
        used_(n_, false), colour_a_(da.colour), colour_b_(db.colour) {
    if (colour_a_.empty()) colour_a_.assign(n_, 0);
    if (colour_b_.empty()) colour_b_.assign(b.ground_size(), 0);
    for (std::size_t i = 0; i < a_.generators().size(); ++i) candidates_.push_back(all_elements_of_b());
  }

  std::optional<Permutation> run() {
    if (b_.ground_size() != n_ || a_.order() != b_.order()) return std::nullopt;
    if ((bar_a_ == nullptr) != (bar_b_ == nullptr)) return std::nullopt;
    if (colour_a_.size() != n_ || colour_b_.size() != n_) return std::nullopt;
    if (da_.partition.has_value() != db_.partition.has_value()) return std::nullopt;
    if (da_.partition && da_.partition->target_size() != db_.partition->target_size()) return std::nullopt;
    if (!search()) return std::nullopt;
    return Permutation(std::vector<Point>(pi_.begin(), pi_.end()));
  }

 private:
  static constexpr Point kUnset = static_cast<Point>(-1);

  std::vector<std::size_t> all_elements_of_b() const {
    std::vector<std::size_t> idx(b_.order());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
  }

  bool compatible(Point x, Point y) const {
    if (used_[y] || colour_a_[x] != colour_b_[y]) return false;
    if (da_.partition) {
      for (Point z = 0; z < n_; ++z) {
        if (pi_[z] == kUnset) continue;
        const bool same_a = da_.partition->target_of(z) == da_.partition->target_of(x);
        const bool same_b = db_.partition->target_of(pi_[z]) == db_.partition->target_of(y);
        if (same_a != same_b) return false;
      }
    }
    return true;
  }

  // Keeps only the elements h of G' with h(pi(x)) = pi(g(x)) wherever defined.
  bool filter_candidates() {
    const auto& gens = a_.generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      auto& cand = candidates_[i];
      std::erase_if(cand, [&](std::size_t idx) {
        const Permutation& h = b_.elements()[idx];
        for (Point x = 0; x < n_; ++x) {
          if (pi_[x] == kUnset) continue;
          const Point gx = gens[i](x);
          if (pi_[gx] != kUnset && h(pi_[x]) != pi_[gx]) return true;
        }
        return false;
      });
      if (cand.empty()) return false;
    }
    return true;
  }

  bool assign(Point x, Point y) {
    if (!compatible(x, y)) return false;
    pi_[x] = y;
    used_[y] = true;
    return true;
  }

  void unassign(Point x) {
    used_[pi_[x]] = false;
    pi_[x] = kUnset;
  }

  bool search() {
    Point x = 0;
    while (x < n_ && pi_[x] != kUnset) ++x;
    if (x == n_) return true;
    for (Point y = 0; y < n_; ++y) {
      if (!assign(x, y)) continue;
      Point bx = kUnset;
      if (bar_a_ != nullptr) {
        bx = (*bar_a_)(x);
        if (bx == x || !assign(bx, (*bar_b_)(y))) {
          unassign(x);
          continue;
        }
      }
      auto saved = candidates_;
      if (filter_candidates() && search()) return true;
      candidates_ = std::move(saved);
      if (bx != kUnset) unassign(bx);
      unassign(x);
    }
    return false;
  }

  const PermGroup& a_;
  const Permutation* bar_a_;
  const Decoration& da_;
  const PermGroup& b_;
  const Permutation* bar_b_;
  const Decoration& db_;
  std::size_t n_;
  std::vector<Point> pi_;
  std::vector<bool> used_;
  std::vector<int> colour_a_;
  std::vector<int> colour_b_;
  std::vector<std::vector<std::size_t>> candidates_;
};

}  // namespace

std::optional<Permutation> find_permutation_isomorphism(const PermGroup& a, const Permutation* bar_a,
                                                        const Decoration& da, const PermGroup& b,
                                                        const Permutation* bar_b, const Decoration& db) {
  return IsomorphismSearch(a, bar_a, da, b, bar_b, db).run();
}

std::optional<Permutation> find_isomorphism(const CMModel& a, const Decoration& da, const CMModel& b,
                                            const Decoration& db) {
  return find_permutation_isomorphism(a.group, &a.bar, da, b.group, &b.bar, db);
}

}  // namespace shimura
