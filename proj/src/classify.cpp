#include "shimura/classify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "shimura/error.hpp"

namespace shimura {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Construction1: return "Construction1";
    case Provenance::Construction2: return "Construction2";
    case Provenance::CMFactor: return "CMFactor";
    case Provenance::NonsimpleCombination: return "NonsimpleCombination";
  }
  return "?";
}

std::string_view to_string(AlbertType t) {
  switch (t) {
    case AlbertType::I: return "I";
    case AlbertType::II: return "II";
    case AlbertType::III: return "III";
    case AlbertType::IV: return "IV";
    case AlbertType::CM: return "CM";
    case AlbertType::Nonsimple: return "nonsimple";
  }
  return "?";
}

std::string_view to_string(EndoKind k) {
  switch (k) {
    case EndoKind::RationalField: return "RationalField";
    case EndoKind::QuatOverQ_SplitAtInfinity: return "QuatOverQ_SplitAtInfinity";
    case EndoKind::QuatOverQ_RamifiedAtInfinity: return "QuatOverQ_RamifiedAtInfinity";
    case EndoKind::CMField: return "CMField";
    case EndoKind::QuatOverCM: return "QuatOverCM";
    case EndoKind::Product: return "Product";
  }
  return "?";
}

std::string_view to_string(CaseFlag c) { return c == CaseFlag::Split ? "split" : "nonsplit"; }

namespace {

std::uint64_t pow2(std::size_t e) {
  if (e >= 63) throw Error(ErrorCode::InvalidData, "dimension overflows 64 bits");
  return std::uint64_t{1} << e;
}

void require_valid(const QuaternionData& d) {
  const auto violations = validate(d);
  if (!violations.empty())
    throw Error(ErrorCode::InvalidData, "quaternion data: " + violations.front().axiom + ": " + violations.front().detail);
}

void require_multiplicity(std::size_t r) {
  if (r == 0) throw Error(ErrorCode::InvalidData, "multiplicity r must be at least 1");
}

// Same record with the isotypic multiplicity changed; every dimension scales by r.
ClassificationRecord with_multiplicity(const ClassificationRecord& base, std::size_t r) {
  ClassificationRecord out = base;
  out.g = base.g / base.inputs.r * r;
  out.dim_V = base.dim_V / base.inputs.r * r;
  out.endo.matrix_size = r;
  out.inputs.r = r;
  return out;
}

}  // namespace

std::string adjoint_key(const QuaternionData& d) {
  std::ostringstream key;
  key << "m=" << d.field.degree() << ";gens=";
  for (const auto& g : d.field.group().generators()) key << g.to_string();
  key << ";order=" << d.field.group().order() << ";nc=" << d.sigma_nc << ";finite=";
  for (const auto& block : d.finite_blocks) {
    key << block.prime << ':';
    for (auto inv : block.invariants) key << inv.to_string() << ',';
    key << ';';
  }
  return key.str();
}

ClassificationRecord construction1(const QuaternionData& d, std::size_t r) {
  require_valid(d);
  require_multiplicity(r);
  const std::size_t m = d.field.degree();
  const bool trivial = cores_to_Q_is_trivial(d);
  if (m % 2 == 0 && trivial)
    throw Error(ErrorCode::InconsistentData,
                "[F:Q] even forces inv_inf(Cores D) = 1/2, yet the corestriction came out trivial");

  const SubsetOrbit full = make_orbit(d.field.group(), Subset::full(m));
  const IrrepRecord irrep = irrep_record(full, d);

  ClassificationRecord rec;
  rec.provenance = Provenance::Construction1;
  if (m % 2 == 1 && trivial) {
    rec.albert_type = AlbertType::I;
    rec.endo = {EndoKind::RationalField, 1, r};
    rec.g = r * pow2(m - 1);
  } else if (m % 2 == 1) {
    rec.albert_type = AlbertType::II;
    rec.endo = {EndoKind::QuatOverQ_SplitAtInfinity, 1, r};
    rec.g = r * pow2(m);
  } else {
    rec.albert_type = AlbertType::III;
    rec.endo = {EndoKind::QuatOverQ_RamifiedAtInfinity, 1, r};
    rec.g = r * pow2(m);
  }
  rec.dim_V = r * irrep.dim_W;
  if (rec.dim_V != 2 * rec.g)
    throw Error(ErrorCode::InvariantViolated, "corestriction dimension " + std::to_string(rec.dim_V) + " != 2g");
  rec.central_torus_rank = 1;
  rec.inputs.adjoint_key = adjoint_key(d);
  rec.inputs.orbit = full.canonical;
  rec.inputs.orbit_ell = m;
  rec.inputs.orbit_size = 1;
  rec.inputs.r = r;
  return rec;
}

std::optional<std::vector<std::size_t>> match_k_level(const SubsetOrbit& orbit, const QuaternionData& d,
                                                      const CMDatum& datum) {
  if (orbit.ground_size != d.field.degree()) throw Error(ErrorCode::InvalidData, "orbit is not over Emb(F)");
  const SubfieldMap e_to_k = datum.e_to_k();
  if (e_to_k.target_size() != orbit.members.size()) return std::nullopt;

  const PermGroup k_action = e_to_k.target_action(datum.E.group);
  std::vector<Permutation> member_gens;
  for (const auto& g : d.field.group().generators()) {
    std::vector<Point> images(orbit.members.size());
    for (std::size_t i = 0; i < orbit.members.size(); ++i)
      images[i] = static_cast<Point>(orbit.index_of(apply(g, orbit.members[i])));
    member_gens.emplace_back(std::move(images));
  }
  const PermGroup member_action(orbit.members.size(), std::move(member_gens), d.field.group().order());

  Decoration on_k;
  Decoration on_members;
  for (Point i = 0; i < orbit.members.size(); ++i) {
    on_k.colour.push_back(datum.sigma_set.contains(i) ? 1 : 0);
    on_members.colour.push_back(orbit.members[i].contains(d.sigma_nc) ? 0 : 1);
  }
  const auto pi = find_permutation_isomorphism(k_action, nullptr, on_k, member_action, nullptr, on_members);
  if (!pi) return std::nullopt;
  return std::vector<std::size_t>(pi->images().begin(), pi->images().end());
}

ClassificationRecord construction2(const QuaternionData& d, const SubsetOrbit& orbit, const PartialCMType& phi,
                                   CaseFlag flag, std::size_t r, std::optional<std::size_t> entry,
                                   std::string name) {
  require_valid(d);
  require_multiplicity(r);
  if (orbit.canonical.empty()) throw Error(ErrorCode::EmptyOrbitMember, "Construction 2 needs nonempty subsets");
  if (orbit.is_full_set()) throw Error(ErrorCode::InvalidData, "Construction 2 needs a proper orbit");
  if (!phi.datum) throw Error(ErrorCode::InvalidPartialCMType, "missing CM datum");
  if (!validate_datum(*phi.datum).empty() || !validate_partial_cm(phi).empty())
    throw Error(ErrorCode::InvalidPartialCMType, "partial CM type fails validation");

  auto matching = match_k_level(orbit, d, *phi.datum);
  if (!matching)
    throw Error(ErrorCode::OrbitMismatch,
                "no equivariant bijection Emb(k) -> orbit carries Sigma onto the members missing sigma_nc");

  const IrrepRecord irrep = irrep_record(orbit, d);
  if (irrep.endo_degree == 1)
    throw Error(ErrorCode::Case0Rejected, "End(rho_I) is commutative for a proper orbit; this cannot happen");

  const int n = static_cast<int>(flag == CaseFlag::Split ? pow2(orbit.ell) : pow2(orbit.ell + 1));
  const bool by_definition = is_primitive_definition(phi);
  const bool by_stabilizer = is_primitive_stabilizer(phi, n);
  if (by_definition != by_stabilizer)
    throw Error(ErrorCode::InvariantViolated, "primitivity tests disagree");
  if (!by_definition) throw Error(ErrorCode::NotPrimitive, "Phi is not primitive relative to (k, Sigma)");

  MultiplicationType f = multiplication_type(phi, n);
  if (f.is_constant()) throw Error(ErrorCode::DegenerateMultiplicationType, "multiplication type is constant");
  const CentralTorus z = central_torus(f, phi.datum->E.group);
  if (!contains_weight(z)) throw Error(ErrorCode::InvariantViolated, "weight cocharacter is not central");
  if (!satisfies_unitary_pairing(z, phi.datum->E.bar))
    throw Error(ErrorCode::InvariantViolated, "connected centre is not contained in U_E");

  const std::size_t e_degree = phi.datum->E.degree();
  ClassificationRecord rec;
  rec.provenance = Provenance::Construction2;
  rec.albert_type = AlbertType::IV;
  rec.n = n;
  rec.g = r * e_degree * static_cast<std::uint64_t>(n) / 2;
  rec.endo = {flag == CaseFlag::Split ? EndoKind::CMField : EndoKind::QuatOverCM, e_degree, r};
  // V = H (x)_End W with dim_E H = 2 (split) or 4; dim_Q End(rho_I) = 4 [k:Q].
  const std::uint64_t dim_h = e_degree * (flag == CaseFlag::Split ? 2u : 4u);
  rec.dim_V = r * dim_h * irrep.dim_W / (4 * irrep.k_degree);
  if (rec.dim_V != 2 * rec.g)
    throw Error(ErrorCode::InvariantViolated, "dim V = " + std::to_string(rec.dim_V) + " != 2g");
  rec.mult_type = std::move(f);
  rec.central_torus_rank = z.rank;
  rec.inputs.adjoint_key = adjoint_key(d);
  rec.inputs.orbit = orbit.canonical;
  rec.inputs.orbit_ell = orbit.ell;
  rec.inputs.orbit_size = orbit.members.size();
  rec.inputs.cm_entry = entry;
  rec.inputs.cm_name = std::move(name);
  rec.inputs.phi = phi.phi;
  rec.inputs.case_flag = flag;
  rec.inputs.e_degree = e_degree;
  rec.inputs.r = r;
  rec.inputs.k_matching = std::move(*matching);
  return rec;
}

ClassificationRecord cm_factor_record(const PartialCMType& phi, std::optional<std::size_t> entry, std::string name) {
  if (!phi.datum || !validate_datum(*phi.datum).empty() || !validate_partial_cm(phi).empty())
    throw Error(ErrorCode::InvalidPartialCMType, "CM type fails validation");
  if (!phi.datum->is_classical()) throw Error(ErrorCode::NotClassicalCMType, "CM factor needs a classical CM type");
  const std::size_t e_degree = phi.datum->E.degree();
  const std::size_t nu = centre_index(phi, 2);
  ClassificationRecord rec;
  rec.provenance = Provenance::CMFactor;
  rec.albert_type = AlbertType::CM;
  rec.g = phi.phi.size();
  rec.endo = {EndoKind::CMField, e_degree / nu, nu};
  rec.dim_V = e_degree;
  rec.inputs.cm_entry = entry;
  rec.inputs.cm_name = std::move(name);
  rec.inputs.phi = phi.phi;
  rec.inputs.e_degree = e_degree;
  return rec;
}

ClassificationRecord combine_nonsimple(const std::optional<ClassificationRecord>& cm_factor,
                                       const std::vector<std::pair<ClassificationRecord, std::size_t>>& factors) {
  if (cm_factor && cm_factor->provenance != Provenance::CMFactor)
    throw Error(ErrorCode::InvalidData, "the CM factor must be a classical CM record");
  if (factors.empty()) throw Error(ErrorCode::InvalidData, "at least one non-CM factor is required");
  const std::string& key = factors.front().first.inputs.adjoint_key;
  std::vector<Subset> orbits;
  ClassificationRecord rec;
  rec.provenance = Provenance::NonsimpleCombination;
  rec.albert_type = AlbertType::Nonsimple;
  rec.endo = {EndoKind::Product, 0, 0};
  if (cm_factor) {
    rec.g += cm_factor->g;
    rec.dim_V += cm_factor->dim_V;
    rec.components.push_back(*cm_factor);
    rec.multiplicities.push_back(1);
  }
  for (const auto& [factor, multiplicity] : factors) {
    if (factor.provenance != Provenance::Construction1 && factor.provenance != Provenance::Construction2)
      throw Error(ErrorCode::InvalidData, "non-CM factors must come from Construction 1 or 2");
    if (multiplicity == 0) throw Error(ErrorCode::InvalidData, "factor multiplicity must be positive");
    if (factor.inputs.adjoint_key != key)
      throw Error(ErrorCode::MixedAdjointData, "factors are built over different (F, D)");
    const Subset orbit = factor.inputs.orbit.value_or(Subset{});
    if (std::find(orbits.begin(), orbits.end(), orbit) != orbits.end())
      throw Error(ErrorCode::DuplicateIsotype,
                  "two factors share the orbit with canonical mask " + std::to_string(orbit.mask));
    orbits.push_back(orbit);
    rec.g += multiplicity * factor.g;
    rec.dim_V += multiplicity * factor.dim_V;
    rec.components.push_back(factor);
    rec.multiplicities.push_back(multiplicity);
  }
  if (rec.dim_V != 2 * rec.g) throw Error(ErrorCode::InvariantViolated, "dimensions of the factors do not add up");
  rec.inputs.adjoint_key = key;
  return rec;
}

ViehwegZuoConditions viehweg_zuo_conditions(const QuaternionData& d, const SubsetOrbit& orbit) {
  const std::size_t m = d.field.degree();
  bool prime = m >= 2;
  for (std::size_t p = 2; p * p <= m; ++p)
    if (m % p == 0) prime = false;
  return {prime, !orbit.is_singletons(), !orbit.is_full_set()};
}

std::string invariant_key(const ClassificationRecord& record) {
  std::ostringstream key;
  key << to_string(record.provenance) << '|' << to_string(record.albert_type) << "|g=" << record.g
      << "|n=" << (record.n ? std::to_string(*record.n) : "-") << '|' << to_string(record.endo.kind) << ','
      << record.endo.centre_degree << ',' << record.endo.matrix_size;
  const auto& in = record.inputs;
  key << "|orbit=" << (in.orbit ? std::to_string(in.orbit->mask) : "-")
      << "|case=" << (in.case_flag ? std::string(to_string(*in.case_flag)) : "-") << "|r=" << in.r
      << "|entry=" << (in.cm_entry ? std::to_string(*in.cm_entry) : "-")
      << "|phi=" << (in.phi ? std::to_string(in.phi->mask) : "-");
  if (record.mult_type) {
    key << "|f=";
    for (int v : record.mult_type->values) key << v << ',';
  }
  for (std::size_t i = 0; i < record.components.size(); ++i)
    key << "|[" << record.multiplicities[i] << 'x' << invariant_key(record.components[i]) << ']';
  return key.str();
}

void sort_records(std::vector<ClassificationRecord>& records) {
  auto orbit_of = [](const ClassificationRecord& r) {
    return r.inputs.orbit ? r.inputs.orbit->mask : ~std::uint64_t{0};
  };
  std::vector<std::pair<std::string, std::size_t>> keys;
  for (std::size_t i = 0; i < records.size(); ++i) keys.emplace_back(invariant_key(records[i]), i);
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = records[a];
    const auto& rb = records[b];
    if (ra.g != rb.g) return ra.g < rb.g;
    if (ra.albert_type != rb.albert_type) return ra.albert_type < rb.albert_type;
    if (orbit_of(ra) != orbit_of(rb)) return orbit_of(ra) < orbit_of(rb);
    if (ra.endo.kind != rb.endo.kind) return ra.endo.kind < rb.endo.kind;
    return keys[a].first < keys[b].first;
  });
  std::vector<ClassificationRecord> sorted;
  sorted.reserve(records.size());
  for (std::size_t i : order) sorted.push_back(std::move(records[i]));
  records = std::move(sorted);
}

namespace {

std::string location_of(std::size_t entry, std::optional<Subset> phi = std::nullopt) {
  std::string loc = "/cm_corpus/" + std::to_string(entry);
  if (phi) loc += " phi=" + std::to_string(phi->mask);
  return loc;
}

Decoration decoration_for(const CMDatum& datum, Subset phi) {
  Decoration dec;
  const Subset over_sigma = datum.to_E0.preimage(datum.to_k.preimage(datum.sigma_set));
  for (Point x = 0; x < datum.E.degree(); ++x)
    dec.colour.push_back((over_sigma.contains(x) ? 1 : 0) + (phi.contains(x) ? 2 : 0));
  dec.partition = datum.e_to_k();
  return dec;
}

bool equivalent_models(const CorpusEntry& a, Subset phi_a, const CorpusEntry& b, Subset phi_b) {
  if (a.datum->E.degree() != b.datum->E.degree()) return false;
  return find_isomorphism(a.datum->E, decoration_for(*a.datum, phi_a), b.datum->E,
                          decoration_for(*b.datum, phi_b))
      .has_value();
}

struct Candidate {
  std::size_t orbit;
  std::size_t entry;
  Subset phi;
  CaseFlag flag;
};

std::size_t max_multiplicity(std::uint64_t g_base, const CatalogOptions& options) {
  if (g_base == 0) return 0;
  std::size_t r = static_cast<std::size_t>(options.g_max / g_base);
  if (options.r_max) r = std::min(r, *options.r_max);
  return r;
}

}  // namespace

CatalogResult catalog(const QuaternionData& d, const std::vector<CorpusEntry>& corpus, const CatalogOptions& options) {
  CatalogResult result;
  for (const auto& v : validate(d)) result.diagnostics.push_back({"error", "/quaternion", v.axiom + ": " + v.detail});
  if (!result.diagnostics.empty()) return result;

  // Isotype groups for the nonsimple combiner: one entry per orbit.
  std::vector<std::vector<ClassificationRecord>> isotypes;

  if (options.include_construction1) {
    const ClassificationRecord base = construction1(d, 1);
    for (std::size_t r = 1; r <= max_multiplicity(base.g, options); ++r)
      result.records.push_back(with_multiplicity(base, r));
    isotypes.push_back({base});
  }

  std::vector<bool> entry_ok(corpus.size(), false);
  std::vector<std::vector<Subset>> valid_phis(corpus.size());
  for (std::size_t e = 0; e < corpus.size(); ++e) {
    if (!corpus[e].datum) {
      result.diagnostics.push_back({"error", location_of(e), "missing CM datum"});
      continue;
    }
    const auto violations = validate_datum(*corpus[e].datum);
    for (const auto& v : violations) result.diagnostics.push_back({"error", location_of(e), v.axiom + ": " + v.detail});
    if (!violations.empty()) continue;
    entry_ok[e] = true;
    for (Subset phi : corpus[e].phi_candidates) {
      const auto pv = validate_partial_cm({corpus[e].datum, phi});
      for (const auto& v : pv) result.diagnostics.push_back({"error", location_of(e, phi), v.axiom + ": " + v.detail});
      if (pv.empty()) valid_phis[e].push_back(phi);
    }
  }

  std::vector<ClassificationRecord> cm_factors;
  std::vector<std::pair<std::size_t, Subset>> cm_sources;
  for (std::size_t e = 0; e < corpus.size(); ++e) {
    if (!entry_ok[e] || !corpus[e].datum->is_classical()) continue;
    for (Subset phi : valid_phis[e]) {
      const bool duplicate = std::any_of(cm_sources.begin(), cm_sources.end(), [&](const auto& src) {
        return equivalent_models(corpus[src.first], src.second, corpus[e], phi);
      });
      if (duplicate) continue;
      cm_factors.push_back(cm_factor_record({corpus[e].datum, phi}, e, corpus[e].name));
      cm_sources.emplace_back(e, phi);
    }
  }

  if (options.include_construction2) {
    std::vector<SubsetOrbit> orbits;
    for (auto& o : enumerate_orbits(d.field, true, options.exec))
      if (!o.is_full_set()) orbits.push_back(std::move(o));

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t o = 0; o < orbits.size(); ++o)
      for (std::size_t e = 0; e < corpus.size(); ++e)
        if (entry_ok[e] && !corpus[e].datum->is_classical()) pairs.emplace_back(o, e);
    std::vector<std::uint8_t> matched(pairs.size(), 0);
    for_each_index(pairs.size(), options.exec, [&](std::size_t i) {
      matched[i] = match_k_level(orbits[pairs[i].first], d, *corpus[pairs[i].second].datum).has_value();
    });

    std::vector<Candidate> candidates;
    std::vector<bool> entry_used(corpus.size(), false);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (!matched[i]) continue;
      const auto [o, e] = pairs[i];
      entry_used[e] = true;
      for (Subset phi : valid_phis[e])
        for (CaseFlag flag : corpus[e].case_flags) candidates.push_back({o, e, phi, flag});
    }
    for (std::size_t e = 0; e < corpus.size(); ++e)
      if (entry_ok[e] && !corpus[e].datum->is_classical() && !entry_used[e])
        result.diagnostics.push_back(
            {"info", location_of(e), "k-level of the datum matches no proper orbit of Emb(F); entry unused"});

    std::vector<std::optional<ClassificationRecord>> built(candidates.size());
    std::vector<std::string> failures(candidates.size());
    for_each_index(candidates.size(), options.exec, [&](std::size_t i) {
      const Candidate& c = candidates[i];
      try {
        built[i] = construction2(d, orbits[c.orbit], {corpus[c.entry].datum, c.phi}, c.flag, 1, c.entry,
                                 corpus[c.entry].name);
      } catch (const Error& err) {
        failures[i] = err.what();
      }
    });

    // Deduplicate per (orbit, case flag) up to isomorphism of the decorated CM model.
    std::map<std::size_t, std::vector<ClassificationRecord>> by_orbit;
    std::map<std::pair<std::size_t, CaseFlag>, std::vector<std::size_t>> kept;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const Candidate& c = candidates[i];
      if (!built[i]) {
        result.diagnostics.push_back({"warning", location_of(c.entry, c.phi),
                                      "orbit " + std::to_string(orbits[c.orbit].canonical.mask) + " " +
                                          std::string(to_string(c.flag)) + ": " + failures[i]});
        continue;
      }
      auto& seen = kept[{c.orbit, c.flag}];
      const bool duplicate = std::any_of(seen.begin(), seen.end(), [&](std::size_t j) {
        return equivalent_models(corpus[candidates[j].entry], candidates[j].phi, corpus[c.entry], c.phi);
      });
      if (duplicate) continue;
      seen.push_back(i);
      const ClassificationRecord& base = *built[i];
      for (std::size_t r = 1; r <= max_multiplicity(base.g, options); ++r)
        result.records.push_back(with_multiplicity(base, r));
      by_orbit[c.orbit].push_back(base);
    }
    for (auto& [o, records] : by_orbit) isotypes.push_back(std::move(records));
  }

  if (options.include_nonsimple) {
    std::vector<std::optional<ClassificationRecord>> cm_choices{std::nullopt};
    for (const auto& cm : cm_factors) cm_choices.emplace_back(cm);
    for (const auto& cm : cm_choices) {
      const std::uint64_t g0 = cm ? cm->g : 0;
      std::vector<std::pair<ClassificationRecord, std::size_t>> chosen;
      std::function<void(std::size_t, std::uint64_t)> walk = [&](std::size_t idx, std::uint64_t g) {
        if (idx == isotypes.size()) {
          if (chosen.size() >= 2 || (cm && !chosen.empty())) result.records.push_back(combine_nonsimple(cm, chosen));
          return;
        }
        walk(idx + 1, g);
        for (const auto& base : isotypes[idx]) {
          for (std::size_t m = 1; g + m * base.g <= options.g_max && (!options.r_max || m <= *options.r_max); ++m) {
            chosen.emplace_back(base, m);
            walk(idx + 1, g + m * base.g);
            chosen.pop_back();
          }
        }
      };
      walk(0, g0);
    }
  }

  sort_records(result.records);
  return result;
}

}  // namespace shimura
