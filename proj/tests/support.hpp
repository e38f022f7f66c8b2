// Shared fixtures and independent oracles for the test binaries.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "shimura/classify.hpp"
#include "shimura/cmtypes.hpp"
#include "shimura/fieldmodel.hpp"
#include "shimura/intlattice.hpp"
#include "shimura/permgroup.hpp"

namespace support {

using namespace shimura;

inline Permutation cycle_perm(std::size_t n, std::size_t shift = 1) {
  std::vector<Point> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<Point>((i + shift) % n);
  return Permutation(images);
}

inline Permutation transposition(std::size_t n, Point a, Point b) {
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  std::swap(images[a], images[b]);
  return Permutation(images);
}

inline PermGroup cyclic(std::size_t n) { return PermGroup(n, {cycle_perm(n)}); }

inline PermGroup dihedral(std::size_t n) {
  std::vector<Point> reflection(n);
  for (std::size_t i = 0; i < n; ++i) reflection[i] = static_cast<Point>((n - i) % n);
  return PermGroup(n, {cycle_perm(n), Permutation(reflection)});
}

inline PermGroup symmetric(std::size_t n) {
  if (n == 1) return PermGroup(1, {});
  return PermGroup(n, {cycle_perm(n), transposition(n, 0, 1)}, 50000);
}

inline PermGroup alternating(std::size_t n) {
  std::vector<Permutation> gens;
  for (Point i = 2; i < n; ++i) {
    std::vector<Point> images(n);
    std::iota(images.begin(), images.end(), Point{0});
    images[0] = 1;
    images[1] = i;
    images[i] = 0;
    gens.emplace_back(images);
  }
  return PermGroup(n, gens, 50000);
}

/// Left-regular action of a group given by its element list.
inline std::pair<PermGroup, std::vector<Permutation>> regular(const PermGroup& abstract) {
  const auto& elems = abstract.elements();
  auto index = [&](const Permutation& p) {
    return static_cast<Point>(std::lower_bound(elems.begin(), elems.end(), p) - elems.begin());
  };
  std::vector<Permutation> left;
  for (const auto& g : elems) {
    std::vector<Point> images(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) images[i] = index(g * elems[i]);
    left.emplace_back(images);
  }
  std::vector<Permutation> gens;
  for (const auto& g : abstract.generators()) gens.push_back(left[index(g)]);
  return {PermGroup(elems.size(), gens), left};
}

struct NamedGroup {
  std::string name;
  PermGroup group;
};

/// Transitive groups on at most 8 points used for orbit checks.
inline std::vector<NamedGroup> transitive_groups() {
  std::vector<NamedGroup> out;
  for (std::size_t n = 1; n <= 8; ++n) {
    out.push_back({"C" + std::to_string(n), cyclic(n)});
    if (n >= 3) out.push_back({"D" + std::to_string(n), dihedral(n)});
    if (n >= 2) out.push_back({"S" + std::to_string(n), symmetric(n)});
    if (n >= 4) out.push_back({"A" + std::to_string(n), alternating(n)});
  }
  out.push_back({"V4", PermGroup(4, {Permutation({1, 0, 3, 2}), Permutation({2, 3, 0, 1})})});
  out.push_back({"C2xC4", regular(PermGroup(6, {Permutation({1, 0, 2, 3, 4, 5}), Permutation({0, 1, 3, 4, 5, 2})})).first});
  out.push_back({"C2^3", regular(PermGroup(6, {Permutation({1, 0, 2, 3, 4, 5}), Permutation({0, 1, 3, 2, 4, 5}),
                                               Permutation({0, 1, 2, 3, 5, 4})}))
                             .first});
  out.push_back({"PSL(2,5) on 6", PermGroup(6, {Permutation({1, 2, 3, 4, 0, 5}), Permutation({5, 4, 2, 3, 1, 0})})});
  return out;
}

struct NamedCM {
  std::string name;
  CMModel model;
};

/// C2 wr H on 2k points: point 2i+s; H permutes i, flips change s; bar flips all.
inline CMModel wreath(const PermGroup& h) {
  const std::size_t k = h.ground_size();
  std::vector<Permutation> gens;
  for (const auto& g : h.generators()) {
    std::vector<Point> images(2 * k);
    for (Point i = 0; i < k; ++i)
      for (Point s = 0; s < 2; ++s) images[2 * i + s] = 2 * g(i) + s;
    gens.emplace_back(images);
  }
  std::vector<Point> flip0(2 * k), flip_all(2 * k);
  std::iota(flip0.begin(), flip0.end(), Point{0});
  std::swap(flip0[0], flip0[1]);
  for (Point x = 0; x < 2 * k; ++x) flip_all[x] = x ^ 1u;
  gens.emplace_back(flip0);
  return CMModel{PermGroup(2 * k, gens), Permutation(flip_all)};
}

/// H x C2 on 2k points with bar the C2 factor.
inline CMModel times_c2(const PermGroup& h) {
  CMModel w = wreath(h);
  std::vector<Permutation> gens(w.group.generators().begin(), w.group.generators().end() - 1);
  gens.push_back(w.bar);
  return CMModel{PermGroup(w.degree(), gens), w.bar};
}

/// Regular model of an abstract group with a central involution z.
inline CMModel regular_model(const PermGroup& abstract, const Permutation& z) {
  auto [group, left] = regular(abstract);
  const auto& elems = abstract.elements();
  const auto zi = std::lower_bound(elems.begin(), elems.end(), z) - elems.begin();
  return CMModel{std::move(group), left[zi]};
}

inline CMModel cyclic_quartic() { return {cyclic(4), cycle_perm(4, 2)}; }
inline CMModel biquadratic() {
  return {PermGroup(4, {Permutation({1, 0, 3, 2}), Permutation({2, 3, 0, 1})}), Permutation({2, 3, 0, 1})};
}
inline CMModel cyclic_cm(std::size_t n) { return {cyclic(n), cycle_perm(n, n / 2)}; }

/// Valid CM models with at most 10 embeddings.
inline std::vector<NamedCM> cm_models() {
  std::vector<NamedCM> out;
  out.push_back({"imaginary quadratic", cyclic_cm(2)});
  out.push_back({"cyclic quartic", cyclic_quartic()});
  out.push_back({"biquadratic", biquadratic()});
  out.push_back({"D4 quartic", {dihedral(4), cycle_perm(4, 2)}});
  out.push_back({"cyclic sextic", cyclic_cm(6)});
  out.push_back({"S3 x C2 sextic", times_c2(symmetric(3))});
  out.push_back({"C2 wr C3", wreath(cyclic(3))});
  out.push_back({"C2 wr S3", wreath(symmetric(3))});
  out.push_back({"cyclic octic", cyclic_cm(8)});
  out.push_back({"C4 x C2 regular", times_c2(cyclic(4))});
  out.push_back({"C2^3 regular", times_c2(biquadratic().group)});
  out.push_back({"D4 x C2 octic", times_c2(dihedral(4))});
  out.push_back({"C2 wr C4", wreath(cyclic(4))});
  out.push_back({"C2 wr V4", wreath(biquadratic().group)});
  out.push_back({"C2 wr D4", wreath(dihedral(4))});
  out.push_back({"C2 wr S4", wreath(symmetric(4))});
  {
    // Q8 as permutations of {±1, ±i, ±j, ±k}; -1 is central.
    const Permutation i({2, 3, 1, 0, 6, 7, 5, 4});
    const Permutation j({4, 5, 7, 6, 1, 0, 2, 3});
    const PermGroup q8(8, {i, j});
    out.push_back({"Q8 regular", regular_model(q8, i * i)});
  }
  {
    const PermGroup d4 = dihedral(4);
    const Permutation r = cycle_perm(4);
    out.push_back({"D4 regular", regular_model(d4, r * r)});
  }
  out.push_back({"cyclic decic", cyclic_cm(10)});
  out.push_back({"C2 wr C5", wreath(cyclic(5))});
  out.push_back({"C2 wr D5", wreath(dihedral(5))});
  out.push_back({"C2 wr S5", wreath(symmetric(5))});
  return out;
}

/// Every CM datum over the model: k ranges over all block systems of the
/// action on Emb(E0), Sigma over all subsets of Emb(k).
inline std::vector<std::shared_ptr<const CMDatum>> all_data(const CMModel& e) {
  std::vector<std::shared_ptr<const CMDatum>> out;
  const SubfieldMap to_e0 = real_quotient(e);
  const PermGroup e0 = to_e0.target_action(e.group);
  for (const auto& to_k : block_systems(e0))
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << to_k.target_size()); ++s)
      out.push_back(std::make_shared<CMDatum>(CMDatum::make(e, to_k, Subset{s})));
  return out;
}

/// Orbit of a subset by breadth-first search over generators.
inline std::set<Subset> bfs_orbit(const PermGroup& g, Subset s) {
  std::set<Subset> seen{s};
  std::vector<Subset> todo{s};
  while (!todo.empty()) {
    Subset cur = todo.back();
    todo.pop_back();
    for (const auto& gen : g.generators()) {
      Subset next{0};
      for (Point x : cur.points()) next = next.with(gen(x));
      if (seen.insert(next).second) todo.push_back(next);
    }
  }
  return seen;
}

/// Rank over Q by fraction-field Gaussian elimination.
inline std::size_t rational_rank(std::vector<std::vector<mpq_class>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const mpq_class factor = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= factor * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::vector<std::vector<mpq_class>> rational_rows(const IntMatrix& m) {
  std::vector<std::vector<mpq_class>> rows(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = mpq_class(m(r, c));
  return rows;
}

inline bool in_rational_span(const IntMatrix& m, const IntVector& v) {
  auto rows = rational_rows(m);
  const std::size_t before = rational_rank(rows);
  std::vector<mpq_class> extra;
  for (const auto& x : v) extra.emplace_back(x);
  rows.push_back(extra);
  return rational_rank(rows) == before;
}

/// Primitivity of a classical CM type on a regular (Galois) model: no
/// nontrivial element of the centralizer of the action fixes Phi.
inline bool primitive_by_centralizer(const CMModel& e, Subset phi) {
  // A centralizing c is determined by t = c(0) through c(g 0) = g t.
  const std::size_t n = e.degree();
  for (Point t = 1; t < n; ++t) {
    std::vector<std::int64_t> images(n, -1);
    bool ok = true;
    for (const auto& g : e.group.elements()) {
      auto& slot = images[g(0)];
      if (slot >= 0 && slot != g(t)) ok = false;
      slot = g(t);
    }
    if (!ok) continue;
    Subset image;
    for (Point x : phi.points()) image = image.with(static_cast<Point>(images[x]));
    if (image == phi) return false;
  }
  return true;
}

/// Orbits of subsets of Emb(F) as sets of subsets, by brute force.
inline std::vector<std::set<Subset>> brute_force_orbits(const PermGroup& g) {
  std::vector<std::set<Subset>> out;
  std::set<Subset> seen;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << g.ground_size()); ++m) {
    if (seen.count(Subset{m})) continue;
    std::set<Subset> orbit;
    for (const auto& e : g.elements()) orbit.insert(apply(e, Subset{m}));
    seen.insert(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace support
