#include "shimura/cmtypes.hpp"

#include <algorithm>

#include "shimura/error.hpp"

namespace shimura {

CMDatum CMDatum::make(CMModel e, SubfieldMap to_k, Subset sigma_set) {
  SubfieldMap to_e0 = real_quotient(e);
  if (to_k.source_size() != to_e0.target_size())
    throw Error(ErrorCode::InvalidModel, "k-blocks do not partition Emb(E0)");
  return CMDatum{std::move(e), std::move(to_e0), std::move(to_k), sigma_set};
}

std::vector<Violation> validate_datum(const CMDatum& datum) {
  auto out = validate_cm_model(datum.E);
  if (!out.empty()) return out;
  const PermGroup e0_action = datum.to_E0.target_action(datum.E.group);
  if (!datum.to_k.is_invariant(e0_action))
    out.push_back({"k_blocks_invariant", "k-blocks are not permuted by the Galois action on Emb(E0)"});
  if (datum.sigma_set.mask >> datum.to_k.target_size() != 0)
    out.push_back({"sigma_range", "Sigma names an embedding outside Emb(k)"});
  return out;
}

bool MultiplicationType::is_constant() const {
  return std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) == values.end();
}

std::vector<Violation> validate_partial_cm(const PartialCMType& t) {
  std::vector<Violation> out;
  if (!t.datum) return {{"datum", "missing CM datum"}};
  const CMDatum& d = *t.datum;
  const std::size_t n = d.E.degree();
  if (n < 64 && (t.phi.mask >> n) != 0) {
    out.push_back({"phi_range", "Phi names an embedding outside Emb(E)"});
    return out;
  }
  const Subset wanted = d.to_k.preimage(d.sigma_set);
  std::vector<int> hits(d.to_E0.target_size(), 0);
  for (Point x : t.phi.points()) ++hits[d.to_E0.target_of(x)];
  for (Point e0 = 0; e0 < hits.size(); ++e0) {
    const std::string where = "E0-embedding " + std::to_string(e0);
    if (hits[e0] > 1) out.push_back({"injective", where + " has both lifts in Phi"});
    if (wanted.contains(e0) && hits[e0] == 0) out.push_back({"surjective", where + " lies over Sigma but has no lift in Phi"});
    if (!wanted.contains(e0) && hits[e0] > 0) out.push_back({"over_sigma", where + " is not over Sigma but has a lift in Phi"});
  }
  return out;
}

std::vector<Subset> all_partial_cm_types(const CMDatum& d) {
  const auto over = d.to_k.preimage(d.sigma_set).points();
  std::vector<Subset> out;
  for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << over.size()); ++choice) {
    Subset phi;
    for (std::size_t i = 0; i < over.size(); ++i) phi = phi.with(d.to_E0.blocks()[over[i]][(choice >> i) & 1u]);
    out.push_back(phi);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void require_valid(const PartialCMType& t) {
  if (!t.datum || !validate_datum(*t.datum).empty() || !validate_partial_cm(t).empty())
    throw Error(ErrorCode::InvalidPartialCMType, "partial CM type fails validation");
}

}  // namespace

MultiplicationType multiplication_type(const PartialCMType& t, int n) {
  require_valid(t);
  if (n <= 0 || n % 2 != 0) throw Error(ErrorCode::InvalidData, "n must be a positive even integer");
  const CMModel& e = t.datum->E;
  MultiplicationType f{n, std::vector<int>(e.degree(), n / 2)};
  for (Point x = 0; x < e.degree(); ++x) {
    if (t.phi.contains(x)) f.values[x] = n;
    else if (t.phi.contains(e.bar(x))) f.values[x] = 0;
  }
  return f;
}

bool is_primitive_definition(const PartialCMType& t) {
  require_valid(t);
  const CMDatum& d = *t.datum;
  const SubfieldMap to_k = d.e_to_k();
  const auto& elements = d.E.group.elements();
  for (Point x = 0; x < d.E.degree(); ++x) {
    for (Point y : to_k.blocks()[to_k.target_of(x)]) {
      if (y == x) continue;
      const bool separated = std::any_of(elements.begin(), elements.end(), [&](const Permutation& g) {
        return t.phi.contains(g(x)) && !t.phi.contains(g(y));
      });
      if (!separated) return false;
    }
  }
  return true;
}

bool is_primitive_stabilizer(const PartialCMType& t, int n) {
  const MultiplicationType f = multiplication_type(t, n);
  const CMDatum& d = *t.datum;
  const SubfieldMap to_k = d.e_to_k();
  const auto& elements = d.E.group.elements();
  const Point phi0 = 0;

  // profile[x][i] = f(g_i(x)); d lies in Stab(ē_phi0) iff profile[d(phi0)] == profile[phi0].
  std::vector<std::vector<int>> profile(d.E.degree(), std::vector<int>(elements.size()));
  for (Point x = 0; x < d.E.degree(); ++x)
    for (std::size_t i = 0; i < elements.size(); ++i) profile[x][i] = f.values[elements[i](x)];

  std::size_t stab_phi = 0;
  std::size_t stab_both = 0;
  for (const auto& delta : elements) {
    const Point y = delta(phi0);
    if (y == phi0) ++stab_phi;
    const bool keeps_fibre = to_k.target_of(y) == to_k.target_of(phi0);
    if (keeps_fibre && profile[y] == profile[phi0]) ++stab_both;
  }
  return stab_phi == stab_both;
}

std::size_t centre_index(const PartialCMType& t, int n) {
  const MultiplicationType f = multiplication_type(t, n);
  const auto& elements = t.datum->E.group.elements();
  std::vector<std::vector<int>> profile(t.datum->E.degree(), std::vector<int>(elements.size()));
  for (Point x = 0; x < profile.size(); ++x)
    for (std::size_t i = 0; i < elements.size(); ++i) profile[x][i] = f.values[elements[i](x)];
  std::size_t stab_phi = 0;
  std::size_t stab_e = 0;
  for (const auto& delta : elements) {
    if (delta(0) == 0) ++stab_phi;
    if (profile[delta(0)] == profile[0]) ++stab_e;
  }
  return stab_e / stab_phi;
}

bool induced_from_subfield(const PartialCMType& t) {
  require_valid(t);
  const CMDatum& d = *t.datum;
  if (!d.is_classical()) throw Error(ErrorCode::NotClassicalCMType, "induced_from_subfield needs k = Q and Sigma = Emb(Q)");
  const std::size_t n = d.E.degree();
  for (const auto& blocks : block_systems(d.E.group)) {
    if (blocks.target_size() == n || blocks.target_size() == 1) continue;
    Permutation bar_on_blocks;
    try {
      bar_on_blocks = blocks.induced(d.E.bar);
    } catch (const Error&) {
      continue;
    }
    bool cm = true;
    for (Point b = 0; b < blocks.target_size(); ++b)
      if (bar_on_blocks(b) == b) cm = false;
    if (!cm) continue;
    if (blocks.preimage(blocks.image(t.phi)) == t.phi) return true;
  }
  return false;
}

CentralTorus central_torus(const MultiplicationType& f, const PermGroup& action) {
  if (f.values.size() != action.ground_size())
    throw Error(ErrorCode::DimensionMismatch, "multiplication type and action have different degree");
  std::vector<IntVector> rows;
  for (const auto& g : action.elements()) {
    IntVector v(f.values.size());
    for (Point x = 0; x < f.values.size(); ++x) v[g(x)] = 2 * f.values[x] / f.n;
    rows.push_back(std::move(v));
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  IntMatrix basis = saturate(IntMatrix::from_rows(rows, f.values.size()));
  const std::size_t r = basis.rows();
  return {std::move(basis), r};
}

bool contains_weight(const CentralTorus& z) {
  return contains(z.cochar_basis, IntVector(z.cochar_basis.cols(), Integer(1)));
}

bool satisfies_unitary_pairing(const CentralTorus& z, const Permutation& bar) {
  for (std::size_t r = 0; r < z.cochar_basis.rows(); ++r) {
    const Integer reference = z.cochar_basis(r, 0) + z.cochar_basis(r, bar(0));
    for (Point x = 1; x < z.cochar_basis.cols(); ++x)
      if (z.cochar_basis(r, x) + z.cochar_basis(r, bar(x)) != reference) return false;
  }
  return true;
}

}  // namespace shimura
