#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shimura/brauer.hpp"
#include "shimura/cmtypes.hpp"
#include "shimura/kernels.hpp"
#include "shimura/orbitrep.hpp"

namespace shimura {

enum class Provenance { Construction1, Construction2, CMFactor, NonsimpleCombination };
enum class AlbertType { I, II, III, IV, CM, Nonsimple };
enum class EndoKind {
  RationalField,
  QuatOverQ_SplitAtInfinity,
  QuatOverQ_RamifiedAtInfinity,
  CMField,
  QuatOverCM,
  Product,
};
/// Whether E splits the quaternion algebra End(rho_I) (Case 1) or not (Case 2).
enum class CaseFlag { Split, NonSplit };

std::string_view to_string(Provenance p);
std::string_view to_string(AlbertType t);
std::string_view to_string(EndoKind k);
std::string_view to_string(CaseFlag c);

/// End^0 as M_r(division algebra); matrix_size is r.
struct EndoDescriptor {
  EndoKind kind = EndoKind::RationalField;
  std::size_t centre_degree = 1;
  std::size_t matrix_size = 1;

  friend bool operator==(const EndoDescriptor&, const EndoDescriptor&) = default;
};

struct RecordInputs {
  std::string adjoint_key;            // identifies (F, D)
  std::optional<Subset> orbit;        // canonical member
  std::size_t orbit_ell = 0;
  std::size_t orbit_size = 0;
  std::optional<std::size_t> cm_entry;
  std::string cm_name;
  std::optional<Subset> phi;
  std::optional<CaseFlag> case_flag;
  std::size_t e_degree = 0;
  std::size_t r = 1;
  /// Emb(k) index -> orbit member index, for Construction 2.
  std::vector<std::size_t> k_matching;
};

struct ClassificationRecord {
  Provenance provenance = Provenance::Construction1;
  AlbertType albert_type = AlbertType::I;
  std::uint64_t g = 0;
  std::optional<int> n;
  EndoDescriptor endo;
  std::optional<MultiplicationType> mult_type;
  RecordInputs inputs;
  /// dim_Q V recomputed from constituents; always 2g.
  std::uint64_t dim_V = 0;
  std::size_t central_torus_rank = 0;
  /// Nonsimple combinations only: the factors and their multiplicities.
  std::vector<ClassificationRecord> components;
  std::vector<std::size_t> multiplicities;
};

/// Identifies (F, D) so that records from different adjoint data never mix.
std::string adjoint_key(const QuaternionData& d);

/// Corestriction representation, type I/II/III. Throws InvalidData,
/// InconsistentData (m even with trivial corestriction).
ClassificationRecord construction1(const QuaternionData& d, std::size_t r);

/// Equivariant bijection Emb(k) -> orbit members carrying Sigma onto the
/// members without sigma_nc, if one exists.
std::optional<std::vector<std::size_t>> match_k_level(const SubsetOrbit& orbit, const QuaternionData& d,
                                                      const CMDatum& datum);

/// Type IV from a primitive partial CM type. Throws OrbitMismatch,
/// NotPrimitive, Case0Rejected, InvalidPartialCMType, InvalidData.
ClassificationRecord construction2(const QuaternionData& d, const SubsetOrbit& orbit, const PartialCMType& phi,
                                   CaseFlag flag, std::size_t r, std::optional<std::size_t> entry = std::nullopt,
                                   std::string name = {});

/// X0 of CM type (E, Phi) for a classical CM type, g0 = |Phi|.
ClassificationRecord cm_factor_record(const PartialCMType& phi, std::optional<std::size_t> entry = std::nullopt,
                                      std::string name = {});

/// X0 x X1^m1 x ... with pairwise distinct underlying orbits. Throws
/// DuplicateIsotype, MixedAdjointData, InvalidData.
ClassificationRecord combine_nonsimple(const std::optional<ClassificationRecord>& cm_factor,
                                       const std::vector<std::pair<ClassificationRecord, std::size_t>>& factors);

struct ViehwegZuoConditions {
  bool prime_degree = false;
  bool not_singletons = false;
  bool not_full_set = false;

  bool all() const noexcept { return prime_degree && not_singletons && not_full_set; }
};

/// Side conditions under which a Construction-2 instance contradicts the
/// claimed decomposition into corestriction-type local systems.
ViehwegZuoConditions viehweg_zuo_conditions(const QuaternionData& d, const SubsetOrbit& orbit);

struct CorpusEntry {
  std::string name;
  std::shared_ptr<const CMDatum> datum;
  std::vector<Subset> phi_candidates;
  std::vector<CaseFlag> case_flags;
};

struct Diagnostic {
  std::string severity;  // "error" | "warning" | "info"
  std::string location;
  std::string message;
};

struct CatalogResult {
  std::vector<ClassificationRecord> records;
  std::vector<Diagnostic> diagnostics;
};

struct CatalogOptions {
  std::uint64_t g_max = 0;
  std::optional<std::size_t> r_max;
  bool include_construction1 = true;
  bool include_construction2 = true;
  bool include_nonsimple = true;
  Execution exec = Execution::Parallel;
};

/// All records with g <= g_max from both constructions and their nonsimple
/// combinations, deduplicated and deterministically ordered.
CatalogResult catalog(const QuaternionData& d, const std::vector<CorpusEntry>& corpus, const CatalogOptions& options);

/// Deterministic order: (g, albert_type, canonical orbit, endo kind), then
/// the full invariant key.
void sort_records(std::vector<ClassificationRecord>& records);

/// String of all discrete invariants, used for ordering and deduplication.
std::string invariant_key(const ClassificationRecord& record);

}  // namespace shimura
