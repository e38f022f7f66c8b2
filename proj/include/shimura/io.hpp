#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shimura/classify.hpp"

namespace shimura::io {

enum class Format { Json, Csv, Markdown };

/// Accepts "json", "csv", "md" or "markdown"; throws ParseError otherwise.
Format parse_format(std::string_view text);

/// Parsed input file. `quaternion` is absent when the Galois data itself is
/// unusable (the reason is then among the diagnostics). Corpus entries whose
/// CM model or k-blocks are invalid are dropped with one diagnostic per
/// violation.
struct Input {
  std::optional<QuaternionData> quaternion;
  std::vector<CorpusEntry> cm_corpus;
  std::uint64_t g_max = 0;
  std::optional<std::size_t> multiplicity_max;
  std::vector<Diagnostic> diagnostics;
};

/// Throws Error(ParseError) with a JSON-pointer location for malformed
/// documents; semantic problems become diagnostics instead.
Input parse_input(std::string_view text, std::size_t group_limit = kDefaultGroupLimit);
Input load_input(const std::string& path, std::size_t group_limit = kDefaultGroupLimit);

struct Report {
  std::vector<ClassificationRecord> records;
  std::vector<Diagnostic> diagnostics;
};

/// Canonical serialization: fixed key order, no insignificant whitespace
/// (json); header plus one line per record (csv); pipe table (md).
std::string emit(const Report& report, Format format);

/// Inverse of emit(_, Json). Throws ParseError.
Report parse_report(std::string_view text);

/// A generic table with its JSON name, used for the orbit and cm-check
/// commands.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<Diagnostic> diagnostics;
};

/// json: {"<name>":[{column:value,...}],"diagnostics":[...]}; values that
/// look like integers are written as numbers.
std::string emit(const Table& table, Format format);

Table orbit_table(const QuaternionData& d);
Table cm_check_table(const std::vector<CorpusEntry>& corpus);

/// Points of a subset in the compact form used by all emitters: "{0,2,3}".
std::string subset_text(Subset s);

}  // namespace shimura::io
