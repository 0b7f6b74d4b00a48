#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "micromap/model.hpp"
#include "micromap/report.hpp"

namespace micromap {

struct PageSize {
  double width_in = 7.5;
  double height_in = 10.0;
};

struct ValidateOptions {
  Profile profile = Profile::kApp;
  PageSize page;
};

/// Parses the JSON panel-spec document. Unknown keys, unknown glyph kinds and
/// field combinations a glyph kind does not accept are errors; every error is
/// located by field path.
Outcome<PanelSpec> parse_panel_spec(std::string_view text);

/// Canonical JSON form; parse_panel_spec(serialize_panel_spec(s)) == s.
std::string serialize_panel_spec(const PanelSpec& spec);

/// Checks the per-kind field rules for one glyph column.
void check_column_fields(const GlyphColumnSpec& column, std::size_t index, ValidationReport& report);

/// Case-insensitive match against USPS code, full name, or FIPS code.
std::optional<RegionId> try_link_region(std::string_view label);
/// Throws SpecError(UNKNOWN_REGION) when the label matches nothing.
RegionId link_region(std::string_view label);

/// Reads a header-first CSV with one row per region. When `region_column` is
/// empty the first column named "state", "region" or "id" is used.
Outcome<RegionTable> ingest_region_table(std::string_view csv, std::optional<std::string> region_column = {},
                                         std::string source_name = {});

/// Reads long-format (region, x, y) rows. A leading "# name: <cube>" comment
/// overrides `name`.
Outcome<TimeSeriesCube> ingest_time_series(std::string_view csv, std::string name = {});

/// Cross-checks a parsed spec against its data. Deterministic and side-effect free.
ValidationReport validate(const PanelSpec& spec, const RegionTable& table, const CubeSet& cubes,
                          const ValidateOptions& options = {});

/// {"errors": [...], "warnings": [...]}, each entry {code, message, location}.
nlohmann::json report_json(const ValidationReport& report);
/// One diagnostic as compact single-line JSON.
std::string diagnostic_line(const Diagnostic& diagnostic);

}  // namespace micromap
