#include "shimura/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "shimura/error.hpp"

namespace shimura::io {

using nlohmann::json;
using nlohmann::ordered_json;

Format parse_format(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "md" || text == "markdown") return Format::Markdown;
  throw Error(ErrorCode::ParseError, "unknown format '" + std::string(text) + "'");
}

std::string subset_text(Subset s) {
  std::string out = "{";
  bool first = true;
  for (Point x : s.points()) {
    if (!first) out += ',';
    out += std::to_string(x);
    first = false;
  }
  return out + "}";
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, (where.empty() ? "/" : where) + ": " + what);
}

const json& field(const json& obj, const std::string& where, const char* key) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::uint64_t as_count(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) fail(where, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array");
  return v;
}

std::vector<Point> as_points(const json& v, const std::string& where) {
  std::vector<Point> out;
  std::size_t i = 0;
  for (const auto& x : as_array(v, where)) out.push_back(static_cast<Point>(as_count(x, where + "/" + std::to_string(i++))));
  return out;
}

Subset as_subset(const json& v, const std::string& where, std::size_t width) {
  Subset s;
  std::size_t i = 0;
  for (Point x : as_points(v, where)) {
    if (x >= width) fail(where + "/" + std::to_string(i), "point " + std::to_string(x) + " outside the ground set");
    s = s.with(x);
    ++i;
  }
  return s;
}

Permutation as_permutation(const json& v, const std::string& where, std::size_t degree) {
  auto images = as_points(v, where);
  if (images.size() != degree)
    fail(where, "image array has length " + std::to_string(images.size()) + ", expected " + std::to_string(degree));
  try {
    return Permutation(std::move(images));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

std::vector<Permutation> as_generators(const json& v, const std::string& where, std::size_t degree) {
  std::vector<Permutation> gens;
  std::size_t i = 0;
  for (const auto& g : as_array(v, where)) gens.push_back(as_permutation(g, where + "/" + std::to_string(i++), degree));
  return gens;
}

std::size_t as_degree(const json& v, const std::string& where) {
  const auto m = as_count(v, where);
  if (m == 0 || m > 63) fail(where, "degree must lie in 1..63");
  return static_cast<std::size_t>(m);
}

void add(std::vector<Diagnostic>& out, const std::string& where, const std::vector<Violation>& violations) {
  for (const auto& v : violations) out.push_back({"error", where, v.axiom + ": " + v.detail});
}

std::optional<CorpusEntry> parse_entry(const json& e, const std::string& where, std::size_t index,
                                       std::size_t group_limit, std::vector<Diagnostic>& diags) {
  const std::size_t degree = as_degree(field(e, where, "embE_degree"), where + "/embE_degree");
  if (degree > 30) fail(where + "/embE_degree", "CM models are limited to 30 embeddings");
  auto gens = as_generators(field(e, where, "generators"), where + "/generators", degree);
  Permutation bar = as_permutation(field(e, where, "bar"), where + "/bar", degree);

  std::vector<std::vector<Point>> k_blocks;
  {
    const std::string kw = where + "/k_blocks";
    std::size_t i = 0;
    for (const auto& b : as_array(field(e, where, "k_blocks"), kw)) {
      auto block = as_points(b, kw + "/" + std::to_string(i));
      for (Point x : block)
        if (x >= degree) fail(kw + "/" + std::to_string(i), "point outside Emb(E)");
      k_blocks.push_back(std::move(block));
      ++i;
    }
  }
  const auto sigma_indices = as_points(field(e, where, "sigma_set"), where + "/sigma_set");
  for (std::size_t i = 0; i < sigma_indices.size(); ++i)
    if (sigma_indices[i] >= k_blocks.size()) fail(where + "/sigma_set/" + std::to_string(i), "no such k-block");

  CorpusEntry entry;
  entry.name = e.contains("name") ? as_string(e["name"], where + "/name") : "entry" + std::to_string(index);
  {
    const std::string cw = where + "/case_flags";
    if (e.contains("case_flags")) {
      std::size_t i = 0;
      for (const auto& c : as_array(e["case_flags"], cw)) {
        const auto s = as_string(c, cw + "/" + std::to_string(i++));
        if (s == "split") entry.case_flags.push_back(CaseFlag::Split);
        else if (s == "nonsplit") entry.case_flags.push_back(CaseFlag::NonSplit);
        else fail(cw, "case flag must be \"split\" or \"nonsplit\"");
      }
    } else {
      entry.case_flags = {CaseFlag::Split, CaseFlag::NonSplit};
    }
  }
  const json& phis = field(e, where, "phi_candidates");
  const bool all_phis = phis.is_string() && phis.get<std::string>() == "all";
  if (!all_phis) {
    const std::string pw = where + "/phi_candidates";
    std::size_t i = 0;
    for (const auto& p : as_array(phis, pw)) entry.phi_candidates.push_back(as_subset(p, pw + "/" + std::to_string(i++), degree));
  }

  // Semantic checks from here on.
  std::optional<CMModel> built;
  try {
    built = CMModel{PermGroup(degree, std::move(gens), group_limit), bar};
  } catch (const Error& err) {
    diags.push_back({"error", where + "/generators", err.what()});
    return std::nullopt;
  }
  CMModel model = std::move(*built);
  const auto model_violations = validate_cm_model(model);
  add(diags, where, model_violations);
  if (!model_violations.empty()) return std::nullopt;

  const SubfieldMap to_e0 = real_quotient(model);
  std::optional<SubfieldMap> k_on_e;
  try {
    k_on_e.emplace(degree, k_blocks);
  } catch (const Error& err) {
    diags.push_back({"error", where + "/k_blocks", err.what()});
    return std::nullopt;
  }
  std::vector<std::vector<Point>> e0_blocks;
  for (std::size_t i = 0; i < k_blocks.size(); ++i) {
    std::vector<Point> block;
    bool stable = true;
    for (Point x : k_blocks[i]) {
      if (std::find(k_blocks[i].begin(), k_blocks[i].end(), bar(x)) == k_blocks[i].end()) stable = false;
      if (x < bar(x)) block.push_back(to_e0.target_of(x));
    }
    if (!stable) {
      diags.push_back({"error", where + "/k_blocks/" + std::to_string(i), "k_blocks_bar_stable: block is not a union of bar-pairs"});
      return std::nullopt;
    }
    e0_blocks.push_back(std::move(block));
  }
  SubfieldMap to_k(to_e0.target_size(), e0_blocks);
  Subset sigma;
  for (Point i : sigma_indices) sigma = sigma.with(to_k.target_of(e0_blocks[i].front()));

  auto datum = std::make_shared<CMDatum>(CMDatum{std::move(model), to_e0, std::move(to_k), sigma});
  const auto datum_violations = validate_datum(*datum);
  add(diags, where, datum_violations);
  if (!datum_violations.empty()) return std::nullopt;
  if (all_phis) entry.phi_candidates = all_partial_cm_types(*datum);
  entry.datum = std::move(datum);
  return entry;
}

}  // namespace

Input parse_input(std::string_view text, std::size_t group_limit) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("/: ") + e.what());
  }
  Input in;
  const json& galois = field(doc, "", "galois");
  const std::size_t m = as_degree(field(galois, "/galois", "degree"), "/galois/degree");
  auto gens = as_generators(field(galois, "/galois", "generators"), "/galois/generators", m);
  const auto sigma_nc = static_cast<Point>(as_count(field(doc, "", "sigma_nc"), "/sigma_nc"));

  std::vector<FiniteBlock> blocks;
  if (doc.contains("finite_blocks")) {
    std::size_t i = 0;
    for (const auto& b : as_array(doc["finite_blocks"], "/finite_blocks")) {
      const std::string bw = "/finite_blocks/" + std::to_string(i++);
      FiniteBlock block{as_string(field(b, bw, "prime"), bw + "/prime"), {}};
      std::size_t j = 0;
      for (const auto& inv : as_array(field(b, bw, "invariants"), bw + "/invariants")) {
        const std::string iw = bw + "/invariants/" + std::to_string(j++);
        try {
          block.invariants.push_back(QZInvariant::parse(as_string(inv, iw)));
        } catch (const Error&) {
          fail(iw, "invariant must be \"0\" or \"1/2\"");
        }
      }
      blocks.push_back(std::move(block));
    }
  }
  in.g_max = doc.contains("g_max") ? as_count(doc["g_max"], "/g_max") : 0;
  if (doc.contains("multiplicity_max")) in.multiplicity_max = as_count(doc["multiplicity_max"], "/multiplicity_max");

  try {
    PermGroup group(m, std::move(gens), group_limit);
    if (!group.is_transitive()) {
      in.diagnostics.push_back({"error", "/galois", "transitive: the Galois action on Emb(F) is not transitive"});
    } else {
      in.quaternion = QuaternionData{TotallyRealModel(std::move(group)), sigma_nc, std::move(blocks)};
      add(in.diagnostics, "/quaternion", validate(*in.quaternion));
    }
  } catch (const Error& err) {
    in.diagnostics.push_back({"error", "/galois", err.what()});
  }

  if (doc.contains("cm_corpus")) {
    std::size_t i = 0;
    for (const auto& e : as_array(doc["cm_corpus"], "/cm_corpus")) {
      const std::string where = "/cm_corpus/" + std::to_string(i);
      if (auto entry = parse_entry(e, where, i, group_limit, in.diagnostics)) in.cm_corpus.push_back(std::move(*entry));
      ++i;
    }
  }
  return in;
}

Input load_input(const std::string& path, std::size_t group_limit) {
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_input(buffer.str(), group_limit);
}

namespace {

ordered_json subset_json(const std::optional<Subset>& s) {
  if (!s) return nullptr;
  ordered_json out = ordered_json::array();
  for (Point x : s->points()) out.push_back(x);
  return out;
}

template <class T>
ordered_json optional_json(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json record_json(const ClassificationRecord& r) {
  ordered_json j;
  j["provenance"] = to_string(r.provenance);
  j["albert_type"] = to_string(r.albert_type);
  j["g"] = r.g;
  j["n"] = optional_json(r.n);
  j["endo"] = {{"kind", to_string(r.endo.kind)},
               {"centre_degree", r.endo.centre_degree},
               {"matrix_size", r.endo.matrix_size}};
  if (r.mult_type) j["mult_type"] = {{"n", r.mult_type->n}, {"values", r.mult_type->values}};
  else j["mult_type"] = nullptr;
  const auto& in = r.inputs;
  ordered_json inputs;
  inputs["adjoint_key"] = in.adjoint_key;
  inputs["orbit"] = subset_json(in.orbit);
  inputs["orbit_ell"] = in.orbit_ell;
  inputs["orbit_size"] = in.orbit_size;
  inputs["cm_entry"] = optional_json(in.cm_entry);
  inputs["cm_name"] = in.cm_name;
  inputs["phi"] = subset_json(in.phi);
  inputs["case_flag"] = in.case_flag ? ordered_json(to_string(*in.case_flag)) : ordered_json(nullptr);
  inputs["e_degree"] = in.e_degree;
  inputs["r"] = in.r;
  inputs["k_matching"] = in.k_matching;
  j["inputs"] = std::move(inputs);
  j["dim_V"] = r.dim_V;
  j["central_torus_rank"] = r.central_torus_rank;
  ordered_json components = ordered_json::array();
  for (std::size_t i = 0; i < r.components.size(); ++i)
    components.push_back({{"multiplicity", r.multiplicities[i]}, {"record", record_json(r.components[i])}});
  j["components"] = std::move(components);
  return j;
}

ordered_json diagnostics_json(const std::vector<Diagnostic>& diags) {
  ordered_json out = ordered_json::array();
  for (const auto& d : diags) out.push_back({{"severity", d.severity}, {"location", d.location}, {"message", d.message}});
  return out;
}

template <class E>
E enum_from(const json& v, std::initializer_list<E> values) {
  const auto text = v.get<std::string>();
  for (E e : values)
    if (to_string(e) == text) return e;
  throw Error(ErrorCode::ParseError, "unknown enum value '" + text + "'");
}

std::optional<Subset> subset_from(const json& v) {
  if (v.is_null()) return std::nullopt;
  Subset s;
  for (const auto& x : v) s = s.with(x.get<Point>());
  return s;
}

ClassificationRecord record_from(const json& j) {
  using P = Provenance;
  using A = AlbertType;
  using K = EndoKind;
  ClassificationRecord r;
  r.provenance = enum_from(j.at("provenance"), {P::Construction1, P::Construction2, P::CMFactor, P::NonsimpleCombination});
  r.albert_type = enum_from(j.at("albert_type"), {A::I, A::II, A::III, A::IV, A::CM, A::Nonsimple});
  r.g = j.at("g").get<std::uint64_t>();
  if (!j.at("n").is_null()) r.n = j.at("n").get<int>();
  const auto& endo = j.at("endo");
  r.endo.kind = enum_from(endo.at("kind"), {K::RationalField, K::QuatOverQ_SplitAtInfinity, K::QuatOverQ_RamifiedAtInfinity,
                                            K::CMField, K::QuatOverCM, K::Product});
  r.endo.centre_degree = endo.at("centre_degree").get<std::size_t>();
  r.endo.matrix_size = endo.at("matrix_size").get<std::size_t>();
  if (!j.at("mult_type").is_null())
    r.mult_type = MultiplicationType{j["mult_type"].at("n").get<int>(), j["mult_type"].at("values").get<std::vector<int>>()};
  const auto& in = j.at("inputs");
  r.inputs.adjoint_key = in.at("adjoint_key").get<std::string>();
  r.inputs.orbit = subset_from(in.at("orbit"));
  r.inputs.orbit_ell = in.at("orbit_ell").get<std::size_t>();
  r.inputs.orbit_size = in.at("orbit_size").get<std::size_t>();
  if (!in.at("cm_entry").is_null()) r.inputs.cm_entry = in["cm_entry"].get<std::size_t>();
  r.inputs.cm_name = in.at("cm_name").get<std::string>();
  r.inputs.phi = subset_from(in.at("phi"));
  if (!in.at("case_flag").is_null())
    r.inputs.case_flag = enum_from(in["case_flag"], {CaseFlag::Split, CaseFlag::NonSplit});
  r.inputs.e_degree = in.at("e_degree").get<std::size_t>();
  r.inputs.r = in.at("r").get<std::size_t>();
  r.inputs.k_matching = in.at("k_matching").get<std::vector<std::size_t>>();
  r.dim_V = j.at("dim_V").get<std::uint64_t>();
  r.central_torus_rank = j.at("central_torus_rank").get<std::size_t>();
  for (const auto& c : j.at("components")) {
    r.multiplicities.push_back(c.at("multiplicity").get<std::size_t>());
    r.components.push_back(record_from(c.at("record")));
  }
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join_rows(const std::vector<std::string>& columns, const std::vector<std::vector<std::string>>& rows,
                      Format format) {
  std::ostringstream out;
  if (format == Format::Csv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
      out << '\n';
    };
    line(columns);
    for (const auto& row : rows) line(row);
  } else {
    auto line = [&](const std::vector<std::string>& cells) {
      out << '|';
      for (const auto& c : cells) out << ' ' << c << " |";
      out << '\n';
    };
    line(columns);
    out << '|';
    for (std::size_t i = 0; i < columns.size(); ++i) out << " --- |";
    out << '\n';
    for (const auto& row : rows) line(row);
  }
  return out.str();
}

std::string components_text(const ClassificationRecord& r) {
  std::string out;
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    const auto& c = r.components[i];
    if (i) out += " + ";
    out += std::to_string(r.multiplicities[i]) + "x" + std::string(to_string(c.albert_type)) + "(g=" + std::to_string(c.g) + ")";
  }
  return out;
}

std::vector<std::string> record_row(const ClassificationRecord& r) {
  std::string values;
  if (r.mult_type)
    for (std::size_t i = 0; i < r.mult_type->values.size(); ++i)
      values += (i ? " " : "") + std::to_string(r.mult_type->values[i]);
  return {std::string(to_string(r.provenance)),
          std::string(to_string(r.albert_type)),
          std::to_string(r.g),
          r.n ? std::to_string(*r.n) : "",
          std::string(to_string(r.endo.kind)),
          std::to_string(r.endo.centre_degree),
          std::to_string(r.endo.matrix_size),
          r.inputs.orbit ? subset_text(*r.inputs.orbit) : "",
          r.inputs.orbit ? std::to_string(r.inputs.orbit_ell) : "",
          r.inputs.cm_name,
          r.inputs.phi ? subset_text(*r.inputs.phi) : "",
          r.inputs.case_flag ? std::string(to_string(*r.inputs.case_flag)) : "",
          std::to_string(r.inputs.r),
          values,
          std::to_string(r.dim_V),
          components_text(r)};
}

const std::vector<std::string> kRecordColumns = {
    "provenance", "albert_type", "g",        "n",         "endo_kind", "centre_degree", "matrix_size", "orbit",
    "ell",        "cm_name",     "phi",      "case_flag", "r",         "mult_type",     "dim_V",       "components"};

bool is_integer_text(const std::string& s) {
  return !s.empty() && s.size() < 19 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::string emit(const Report& report, Format format) {
  if (format == Format::Json) {
    ordered_json doc;
    doc["records"] = ordered_json::array();
    for (const auto& r : report.records) doc["records"].push_back(record_json(r));
    doc["diagnostics"] = diagnostics_json(report.diagnostics);
    return doc.dump() + "\n";
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : report.records) rows.push_back(record_row(r));
  return join_rows(kRecordColumns, rows, format);
}

Report parse_report(std::string_view text) {
  Report report;
  try {
    const json doc = json::parse(text);
    for (const auto& r : doc.at("records")) report.records.push_back(record_from(r));
    for (const auto& d : doc.at("diagnostics"))
      report.diagnostics.push_back(
          {d.at("severity").get<std::string>(), d.at("location").get<std::string>(), d.at("message").get<std::string>()});
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("report: ") + e.what());
  }
  return report;
}

std::string emit(const Table& table, Format format) {
  if (format == Format::Json) {
    ordered_json doc;
    doc[table.name] = ordered_json::array();
    for (const auto& row : table.rows) {
      ordered_json obj;
      for (std::size_t i = 0; i < table.columns.size(); ++i)
        obj[table.columns[i]] = is_integer_text(row[i]) ? ordered_json(std::stoull(row[i])) : ordered_json(row[i]);
      doc[table.name].push_back(std::move(obj));
    }
    doc["diagnostics"] = diagnostics_json(table.diagnostics);
    return doc.dump() + "\n";
  }
  return join_rows(table.columns, table.rows, format);
}

Table orbit_table(const QuaternionData& d) {
  Table t{"orbits", {"canonical", "ell", "size", "k_degree", "stabilizer_order", "endo_degree", "dim_W"}, {}, {}};
  for (const auto& o : enumerate_orbits(d.field, true)) {
    const auto irrep = irrep_record(o, d);
    t.rows.push_back({subset_text(o.canonical), std::to_string(o.ell), std::to_string(o.members.size()),
                      std::to_string(irrep.k_degree), std::to_string(o.stab.order()), std::to_string(irrep.endo_degree),
                      std::to_string(irrep.dim_W)});
  }
  return t;
}

Table cm_check_table(const std::vector<CorpusEntry>& corpus) {
  Table t{"cm_checks",
          {"entry", "name", "phi", "valid", "primitive_definition", "primitive_stabilizer", "induced_from_subfield",
           "centre_index"},
          {},
          {}};
  for (std::size_t e = 0; e < corpus.size(); ++e) {
    const auto& entry = corpus[e];
    for (Subset phi : entry.phi_candidates) {
      const PartialCMType type{entry.datum, phi};
      const auto violations = validate_partial_cm(type);
      std::vector<std::string> row{std::to_string(e), entry.name, subset_text(phi), violations.empty() ? "true" : "false"};
      if (!violations.empty()) {
        for (const auto& v : violations)
          t.diagnostics.push_back({"error", "/cm_corpus/" + std::to_string(e) + " phi=" + subset_text(phi), v.axiom + ": " + v.detail});
        row.insert(row.end(), {"", "", "", ""});
      } else {
        const bool def = is_primitive_definition(type);
        const bool stab = is_primitive_stabilizer(type, 2);
        if (def != stab)
          t.diagnostics.push_back({"error", "/cm_corpus/" + std::to_string(e), "primitivity tests disagree on " + subset_text(phi)});
        row.push_back(def ? "true" : "false");
        row.push_back(stab ? "true" : "false");
        row.push_back(entry.datum->is_classical() ? (induced_from_subfield(type) ? "true" : "false") : "");
        row.push_back(std::to_string(centre_index(type, 2)));
      }
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

}  // namespace shimura::io
