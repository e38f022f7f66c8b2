#include <cstdlib>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>

#include "shimura/error.hpp"
#include "shimura/io.hpp"

namespace {

using namespace shimura;

constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kInvalid = 2;

bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == "error") return true;
  return false;
}

void print_diagnostics(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) std::cerr << d.severity << ' ' << d.location << ": " << d.message << '\n';
}

template <class R>
int finish(const R& report, const std::vector<Diagnostic>& diags, io::Format format) {
  std::cout << io::emit(report, format);
  if (format != io::Format::Json) print_diagnostics(diags);
  return has_errors(diags) ? kInvalid : kOk;
}

std::size_t group_limit_from_env() {
  const char* env = std::getenv("SHIMURA_ATLAS_GROUP_LIMIT");
  if (!env || !*env) return kDefaultGroupLimit;
  try {
    return static_cast<std::size_t>(std::stoull(env));
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, std::string("SHIMURA_ATLAS_GROUP_LIMIT is not a number: ") + env);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete invariants of Shimura subvarieties attached to quaternion data over totally real fields"};
  std::string command;
  std::string path;
  std::string format_text = "json";
  std::optional<std::uint64_t> g_max;
  std::optional<std::size_t> r_max;
  app.add_option("command", command, "validate | orbits | construction1 | construction2 | catalog | cm-check")
      ->required()
      ->check(CLI::IsMember({"validate", "orbits", "construction1", "construction2", "catalog", "cm-check"}));
  app.add_option("input", path, "input JSON file")->required();
  app.add_option("--format", format_text, "json | csv | md")->check(CLI::IsMember({"json", "csv", "md", "markdown"}));
  app.add_option("--g-max", g_max, "largest dimension g to emit");
  app.add_option("--r-max", r_max, "largest isotypic multiplicity");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kIoError;
  }

  try {
    const io::Format format = io::parse_format(format_text);
    io::Input input = io::load_input(path, group_limit_from_env());
    std::vector<Diagnostic> diags = input.diagnostics;

    if (command == "validate") {
      for (std::size_t e = 0; e < input.cm_corpus.size(); ++e)
        for (Subset phi : input.cm_corpus[e].phi_candidates)
          for (const auto& v : validate_partial_cm({input.cm_corpus[e].datum, phi}))
            diags.push_back({"error", "/cm_corpus/" + std::to_string(e) + " phi=" + io::subset_text(phi),
                             v.axiom + ": " + v.detail});
      return finish(io::Report{{}, diags}, diags, format);
    }
    if (has_errors(diags) || !input.quaternion) return finish(io::Report{{}, diags}, diags, format);

    if (command == "orbits") {
      io::Table table = io::orbit_table(*input.quaternion);
      table.diagnostics = diags;
      return finish(table, diags, format);
    }
    if (command == "cm-check") {
      io::Table table = io::cm_check_table(input.cm_corpus);
      table.diagnostics.insert(table.diagnostics.begin(), diags.begin(), diags.end());
      return finish(table, table.diagnostics, format);
    }

    CatalogOptions options;
    options.g_max = g_max.value_or(input.g_max);
    options.r_max = r_max ? r_max : input.multiplicity_max;
    if (command != "catalog") {
      options.include_construction1 = command == "construction1";
      options.include_construction2 = command == "construction2";
      options.include_nonsimple = false;
      if (!g_max && input.g_max == 0) {
        options.g_max = std::numeric_limits<std::uint64_t>::max();
        if (!options.r_max) options.r_max = 1;
      }
    }
    CatalogResult result = catalog(*input.quaternion, input.cm_corpus, options);
    diags.insert(diags.end(), result.diagnostics.begin(), result.diagnostics.end());
    return finish(io::Report{std::move(result.records), diags}, diags, format);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::ParseError ? kIoError : kInvalid;
  }
}
