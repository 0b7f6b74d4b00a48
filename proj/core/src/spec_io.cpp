#include "micromap/spec_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <nlohmann/json.hpp>
#include <set>

#include "micromap/csv.hpp"
#include "micromap/layout.hpp"

namespace micromap {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string column_path(std::size_t index, std::string_view field) {
  return "columns[" + std::to_string(index) + "]" + (field.empty() ? "" : "." + std::string(field));
}

std::optional<double> parse_number(std::string_view text) {
  const auto t = csv::trim(text);
  if (t.empty()) return std::nullopt;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (*first == '+') ++first;
  double v = 0;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool is_missing_token(std::string_view text) {
  const auto t = lower(csv::trim(text));
  return t.empty() || t == "na" || t == "nan" || t == "null" || t == ".";
}

// ---------------------------------------------------------------------------
// JSON field readers; each records its own error and returns nullopt.

class Reader {
 public:
  explicit Reader(ValidationReport& report) : report_(report) {}

  void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        report_.error(codes::kUnknownKey, "unknown key '" + key + "'", join(where, key));
      }
    }
  }

  std::optional<std::string> string(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    if (!v.is_string()) {
      report_.error(codes::kBadValue, std::string(key) + " must be a string", join(where, key));
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  std::optional<double> number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    const auto& v = obj.at(key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      report_.error(codes::kBadValue, std::string(key) + " must be a finite number", join(where, key));
      return std::nullopt;
    }
    return v.get<double>();
  }

  std::optional<bool> boolean(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    if (!v.is_boolean()) {
      report_.error(codes::kBadValue, std::string(key) + " must be true or false", join(where, key));
      return std::nullopt;
    }
    return v.get<bool>();
  }

  std::optional<std::vector<std::string>> string_list(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    bool ok = v.is_array();
    if (ok) ok = std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_string(); });
    if (!ok) {
      report_.error(codes::kBadValue, std::string(key) + " must be a list of column names", join(where, key));
      return std::nullopt;
    }
    return v.get<std::vector<std::string>>();
  }

  static std::string join(const std::string& where, std::string_view key) {
    return where.empty() ? std::string(key) : where + "." + std::string(key);
  }

 private:
  ValidationReport& report_;
};

// Optional strings arriving empty are treated as absent.
std::optional<std::string> non_empty(std::optional<std::string> s) {
  if (s && s->empty()) return std::nullopt;
  return s;
}

}  // namespace

void check_column_fields(const GlyphColumnSpec& c, std::size_t index, ValidationReport& report) {
  const auto kind = std::string(to_string(c.kind));
  auto require = [&](bool present, const char* field) {
    if (!present) {
      report.error(codes::kFieldRequired, std::string(field) + " required for " + kind, column_path(index, field));
    }
  };
  auto forbid = [&](bool present, const char* field) {
    if (present) {
      report.error(codes::kFieldNotAllowed, std::string(field) + " not allowed for " + kind,
                   column_path(index, field));
    }
  };
  const bool lab4 = c.lab4.has_value();
  const bool col1 = c.col1.has_value();
  const bool col2 = c.col2.has_value();
  const bool refval = c.refval.has_value();
  const bool panel = c.panel_data.has_value();
  const bool box = c.box_columns.has_value();

  switch (c.kind) {
    case GlyphKind::kDot:
      require(col1, "col1");
      forbid(col2, "col2");
      forbid(panel, "panel_data");
      forbid(lab4, "lab4");
      forbid(box, "box_columns");
      break;
    case GlyphKind::kArrow:
      require(col1, "col1");
      require(col2, "col2");
      forbid(panel, "panel_data");
      forbid(lab4, "lab4");
      forbid(box, "box_columns");
      break;
    case GlyphKind::kTimeSeries:
      require(panel, "panel_data");
      forbid(col1, "col1");
      forbid(col2, "col2");
      forbid(refval, "refval");
      forbid(box, "box_columns");
      break;
    case GlyphKind::kScatDot:
      require(col1, "col1");
      require(col2, "col2");
      forbid(panel, "panel_data");
      forbid(refval, "refval");
      forbid(box, "box_columns");
      break;
    case GlyphKind::kBoxplot:
      require(box, "box_columns");
      if (box && c.box_columns->size() < kMinBoxColumns) {
        report.error(codes::kBadValue, "box_columns needs at least 5 columns", column_path(index, "box_columns"));
      }
      forbid(col1, "col1");
      forbid(col2, "col2");
      forbid(panel, "panel_data");
      forbid(lab4, "lab4");
      break;
  }
  if (refval && !std::isfinite(*c.refval)) {
    report.error(codes::kBadValue, "refval must be finite", column_path(index, "refval"));
  }
}

Outcome<PanelSpec> parse_panel_spec(std::string_view text) {
  Outcome<PanelSpec> out;
  auto& report = out.report;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    report.error(codes::kParseError, e.what(), "byte " + std::to_string(e.byte));
    return out;
  }
  if (!doc.is_object()) {
    report.error(codes::kParseError, "panel spec must be a JSON object", "$");
    return out;
  }

  Reader r(report);
  PanelSpec spec;
  r.check_keys(doc, {"dataset", "title1", "title2", "shading", "color_safe", "sort", "columns"}, "");
  spec.dataset = r.string(doc, "dataset", "").value_or("");
  spec.title1 = r.string(doc, "title1", "").value_or("");
  spec.title2 = r.string(doc, "title2", "").value_or("");
  spec.color_safe = r.boolean(doc, "color_safe", "").value_or(false);
  if (auto s = r.string(doc, "shading", "")) {
    if (auto mode = parse_shading_mode(*s)) {
      spec.shading = *mode;
    } else {
      report.error(codes::kBadValue, "unknown shading '" + *s + "'", "shading");
    }
  }

  if (!doc.contains("sort")) {
    report.error(codes::kFieldRequired, "sort is required", "sort");
  } else if (!doc["sort"].is_object()) {
    report.error(codes::kBadValue, "sort must be an object", "sort");
  } else {
    const auto& sort = doc["sort"];
    r.check_keys(sort, {"column", "direction"}, "sort");
    auto column = r.string(sort, "column", "sort");
    if (!column || column->empty()) {
      if (!sort.contains("column")) report.error(codes::kFieldRequired, "sort column is required", "sort.column");
      else if (column) report.error(codes::kBadValue, "sort column is empty", "sort.column");
    } else {
      spec.sort.column = *column;
    }
    if (auto d = r.string(sort, "direction", "sort")) {
      if (auto dir = parse_sort_direction(*d)) {
        spec.sort.direction = *dir;
      } else {
        report.error(codes::kBadValue, "direction must be ascending or descending", "sort.direction");
      }
    }
  }

  if (doc.contains("columns")) {
    const auto& cols = doc["columns"];
    if (!cols.is_array()) {
      report.error(codes::kBadValue, "columns must be an array", "columns");
    } else {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        const auto& c = cols[i];
        const auto where = column_path(i, "");
        if (!c.is_object()) {
          report.error(codes::kBadValue, "column must be an object", where);
          continue;
        }
        r.check_keys(c, {"kind", "lab1", "lab2", "lab3", "lab4", "col1", "col2", "refval", "panel_data",
                         "box_columns"},
                     where);
        GlyphColumnSpec g;
        const auto kind = r.string(c, "kind", where);
        if (!kind) {
          if (!c.contains("kind")) report.error(codes::kFieldRequired, "kind is required", column_path(i, "kind"));
          continue;
        }
        if (auto k = parse_glyph_kind(*kind)) {
          g.kind = *k;
        } else {
          report.error(codes::kUnknownGlyph, "unknown glyph kind '" + *kind + "'", column_path(i, "kind"));
          continue;
        }
        g.lab1 = r.string(c, "lab1", where).value_or("");
        g.lab2 = r.string(c, "lab2", where).value_or("");
        g.lab3 = r.string(c, "lab3", where).value_or("");
        g.lab4 = non_empty(r.string(c, "lab4", where));
        g.col1 = r.string(c, "col1", where);
        g.col2 = r.string(c, "col2", where);
        g.refval = r.number(c, "refval", where);
        g.panel_data = r.string(c, "panel_data", where);
        g.box_columns = r.string_list(c, "box_columns", where);
        check_column_fields(g, i, report);
        spec.columns.push_back(std::move(g));
      }
    }
  }

  if (report.ok()) out.value = std::move(spec);
  return out;
}

std::string serialize_panel_spec(const PanelSpec& spec) {
  ordered_json doc;
  doc["dataset"] = spec.dataset;
  doc["title1"] = spec.title1;
  doc["title2"] = spec.title2;
  doc["shading"] = to_string(spec.shading);
  doc["color_safe"] = spec.color_safe;
  doc["sort"] = {{"column", spec.sort.column}, {"direction", to_string(spec.sort.direction)}};
  doc["columns"] = ordered_json::array();
  for (const auto& c : spec.columns) {
    ordered_json col;
    col["kind"] = to_string(c.kind);
    col["lab1"] = c.lab1;
    col["lab2"] = c.lab2;
    col["lab3"] = c.lab3;
    if (c.lab4) col["lab4"] = *c.lab4;
    if (c.col1) col["col1"] = *c.col1;
    if (c.col2) col["col2"] = *c.col2;
    if (c.refval) col["refval"] = *c.refval;
    if (c.panel_data) col["panel_data"] = *c.panel_data;
    if (c.box_columns) col["box_columns"] = *c.box_columns;
    doc["columns"].push_back(std::move(col));
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

std::optional<RegionId> try_link_region(std::string_view label) {
  const auto t = csv::trim(label);
  if (t.empty()) return std::nullopt;
  const auto key = lower(t);
  const bool digits = std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
  for (const auto id : RegionId::all()) {
    if (key == lower(id.code()) || key == lower(id.name()) || key == lower(id.display_name())) return id;
    if (digits && t.size() <= 2 && (t.size() == 2 ? t : "0" + t) == id.fips()) return id;
  }
  return std::nullopt;
}

RegionId link_region(std::string_view label) {
  if (auto id = try_link_region(label)) return *id;
  throw SpecError(codes::kUnknownRegion, "unknown region '" + std::string(label) + "'", "region");
}

namespace {

std::optional<std::size_t> find_region_column(const std::vector<std::string>& header,
                                              const std::optional<std::string>& explicit_name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (explicit_name) {
      if (header[i] == *explicit_name) return i;
      continue;
    }
    const auto h = lower(header[i]);
    if (h == "state" || h == "region" || h == "id") return i;
  }
  return std::nullopt;
}

std::optional<csv::Document> read_csv(std::string_view text, ValidationReport& report) {
  try {
    auto doc = csv::parse(text);
    if (doc.records.empty()) {
      report.error(codes::kBadHeader, "missing header row", "line 1");
      return std::nullopt;
    }
    return doc;
  } catch (const csv::ParseError& e) {
    report.error(codes::kParseError, e.what(), "line " + std::to_string(e.line()));
    return std::nullopt;
  }
}

void report_missing_regions(const PerRegion<bool>& seen, ValidationReport& report) {
  for (const auto id : RegionId::all()) {
    if (!seen[id.index()]) {
      report.error(codes::kMissingRegion, "region " + std::string(id.code()) + " is absent",
                   "region:" + std::string(id.code()));
    }
  }
}

}  // namespace

Outcome<RegionTable> ingest_region_table(std::string_view text, std::optional<std::string> region_column,
                                         std::string source_name) {
  Outcome<RegionTable> out;
  auto& report = out.report;
  auto doc = read_csv(text, report);
  if (!doc) return out;

  const auto& header = doc->records.front();
  const auto& names = header.fields;
  {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].empty()) {
        report.error(codes::kBadHeader, "column " + std::to_string(i + 1) + " has an empty name", "line 1");
      } else if (!seen.insert(names[i]).second) {
        report.error(codes::kBadHeader, "duplicate column '" + names[i] + "'", "line 1");
      }
    }
  }
  const auto key = find_region_column(names, region_column);
  if (!key) {
    report.error(codes::kBadHeader,
                 region_column ? "region column '" + *region_column + "' not found"
                               : "no region column (expected state, region or id)",
                 "line 1");
  }
  if (!report.ok()) return out;

  std::vector<TableColumn> columns;
  std::vector<std::size_t> source_index;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i == *key) continue;
    columns.push_back(TableColumn{names[i], {}, {}});
    source_index.push_back(i);
  }

  PerRegion<bool> seen{};
  for (std::size_t r = 1; r < doc->records.size(); ++r) {
    const auto& rec = doc->records[r];
    const auto where = "line " + std::to_string(rec.line);
    if (rec.fields.size() != names.size()) {
      report.error(codes::kBadValue,
                   "expected " + std::to_string(names.size()) + " fields, found " + std::to_string(rec.fields.size()),
                   where);
      continue;
    }
    const auto region = try_link_region(rec.fields[*key]);
    if (!region) {
      report.error(codes::kUnknownRegion, "unknown region '" + rec.fields[*key] + "'", where);
      continue;
    }
    if (seen[region->index()]) {
      report.error(codes::kDuplicateRegion, "region " + std::string(region->code()) + " appears more than once",
                   where);
      continue;
    }
    seen[region->index()] = true;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto& cell = rec.fields[source_index[c]];
      if (is_missing_token(cell)) continue;
      if (auto v = parse_number(cell)) {
        columns[c].values[region->index()] = *v;
      } else {
        columns[c].unparsed.push_back(*region);
      }
    }
  }
  report_missing_regions(seen, report);
  if (!report.ok()) return out;

  for (auto& c : columns) std::sort(c.unparsed.begin(), c.unparsed.end());
  out.value.emplace(std::move(source_name), std::move(columns));
  return out;
}

Outcome<TimeSeriesCube> ingest_time_series(std::string_view text, std::string name) {
  Outcome<TimeSeriesCube> out;
  auto& report = out.report;
  auto doc = read_csv(text, report);
  if (!doc) return out;
  for (const auto& comment : doc->comments) {
    if (comment.starts_with("name:")) name = csv::trim(std::string_view(comment).substr(5));
  }

  const auto& names = doc->records.front().fields;
  const auto region_col = find_region_column(names, std::nullopt);
  std::optional<std::size_t> x_col, y_col;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (lower(names[i]) == "x") x_col = i;
    if (lower(names[i]) == "y") y_col = i;
  }
  if (!region_col || !x_col || !y_col) {
    report.error(codes::kBadHeader, "time series csv needs region, x and y columns", "line 1");
    return out;
  }

  PerRegion<std::vector<SeriesPoint>> series;
  PerRegion<bool> seen{};
  for (std::size_t r = 1; r < doc->records.size(); ++r) {
    const auto& rec = doc->records[r];
    const auto where = "line " + std::to_string(rec.line);
    if (rec.fields.size() != names.size()) {
      report.error(codes::kBadValue, "wrong field count", where);
      continue;
    }
    const auto region = try_link_region(rec.fields[*region_col]);
    if (!region) {
      report.error(codes::kUnknownRegion, "unknown region '" + rec.fields[*region_col] + "'", where);
      continue;
    }
    const auto x = parse_number(rec.fields[*x_col]);
    const auto y = parse_number(rec.fields[*y_col]);
    if (!x || !y) {
      report.error(codes::kBadValue, "x and y must be numbers", where);
      continue;
    }
    seen[region->index()] = true;
    series[region->index()].push_back({*x, *y});
  }
  report_missing_regions(seen, report);
  if (!report.ok()) return out;

  // The modal point count is taken as the intended T.
  std::map<std::size_t, std::size_t> counts;
  for (const auto& s : series) ++counts[s.size()];
  const auto expected =
      std::max_element(counts.begin(), counts.end(), [](const auto& a, const auto& b) { return a.second < b.second; })
          ->first;
  for (const auto id : RegionId::all()) {
    const auto& s = series[id.index()];
    const auto loc = "region:" + std::string(id.code());
    if (s.size() != expected) {
      report.error(codes::kRaggedSeries,
                   std::string(id.code()) + " has " + std::to_string(s.size()) + " points, expected " +
                       std::to_string(expected),
                   loc);
    }
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (!(s[i].x > s[i - 1].x)) {
        report.error(codes::kNonMonotoneX, std::string(id.code()) + " x values are not strictly increasing", loc);
        break;
      }
    }
  }
  if (expected < 2) report.error(codes::kRaggedSeries, "each region needs at least 2 points", "x");
  if (!report.ok()) return out;
  out.value.emplace(std::move(name), std::move(series));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Checks one referenced column; returns true when it is usable.
bool check_reference(const RegionTable& table, const std::string& column, const std::string& where,
                     ValidationReport& report, bool warn_missing = true) {
  if (!table.has_column(column)) {
    report.error(codes::kUnknownColumn, "unknown column '" + column + "'", where);
    return false;
  }
  const auto& col = table.column(column);
  if (!col.numeric()) {
    if (col.unparsed.empty()) {
      report.error(codes::kNoFiniteValues, "column '" + column + "' has no values", where);
    } else {
      report.error(codes::kNonNumericColumn, "column '" + column + "' is not numeric", where);
    }
    return false;
  }
  for (const auto id : col.unparsed) {
    report.warn(codes::kNonNumericCell, "non-numeric cell in '" + column + "' treated as missing",
                where + ":region:" + std::string(id.code()));
  }
  if (warn_missing) {
    for (const auto id : RegionId::all()) {
      if (!col.values[id.index()]) {
        report.warn(codes::kMissingValue, std::string(id.code()) + " has no value for '" + column + "'",
                    where + ":region:" + std::string(id.code()));
      }
    }
  }
  return true;
}

}  // namespace

ValidationReport validate(const PanelSpec& spec, const RegionTable& table, const CubeSet& cubes,
                          const ValidateOptions& options) {
  ValidationReport report;

  if (!table.has_column(spec.sort.column)) {
    report.error(codes::kUnknownSortColumn, "sort column '" + spec.sort.column + "' not in dataset", "sort.column");
  } else if (check_reference(table, spec.sort.column, "sort.column", report, false)) {
    const auto& col = table.column(spec.sort.column);
    for (const auto id : RegionId::all()) {
      if (!col.values[id.index()]) {
        report.warn(codes::kMissingSortValue, std::string(id.code()) + " has no sort value; placed last",
                    "sort.column:region:" + std::string(id.code()));
      }
    }
  }

  if (options.profile == Profile::kApp && spec.columns.size() > kAppColumnLimit) {
    report.error(codes::kColumnLimit,
                 "at most 3 glyph columns are allowed, found " + std::to_string(spec.columns.size()), "columns");
  }
  if (!glyph_columns_fit(spec.columns.size(), options.page)) {
    report.error(codes::kWidthExceeded,
                 std::to_string(spec.columns.size()) + " glyph columns do not fit a " +
                     std::to_string(options.page.width_in) + " in page",
                 "columns");
  }

  for (std::size_t i = 0; i < spec.columns.size(); ++i) {
    const auto& c = spec.columns[i];
    check_column_fields(c, i, report);
    if (c.col1) check_reference(table, *c.col1, column_path(i, "col1"), report);
    if (c.col2) check_reference(table, *c.col2, column_path(i, "col2"), report);
    if (c.panel_data && !cubes.contains(*c.panel_data)) {
      report.error(codes::kUnknownPanelData, "no time series named '" + *c.panel_data + "'",
                   column_path(i, "panel_data"));
    }
    if (c.kind == GlyphKind::kBoxplot && c.box_columns) {
      bool all_ok = true;
      for (std::size_t b = 0; b < c.box_columns->size(); ++b) {
        all_ok &= check_reference(table, (*c.box_columns)[b],
                                  column_path(i, "box_columns[" + std::to_string(b) + "]"), report, false);
      }
      if (all_ok && c.box_columns->size() >= kMinBoxColumns) {
        std::size_t usable = 0;
        for (const auto id : RegionId::all()) {
          std::size_t n = 0;
          for (const auto& name : *c.box_columns) n += table.value(id, name).has_value();
          if (n >= kMinBoxColumns) {
            ++usable;
          } else {
            report.warn(codes::kShortSample, std::string(id.code()) + " has fewer than 5 box values",
                        column_path(i, "box_columns") + ":region:" + std::string(id.code()));
          }
        }
        if (usable == 0) {
          report.error(codes::kNoFiniteValues, "no region has 5 box values", column_path(i, "box_columns"));
        }
      }
    }
  }
  return report;
}

namespace {

nlohmann::json diagnostic_json(const Diagnostic& d) {
  return {{"code", d.code}, {"message", d.message}, {"location", d.location}};
}

}  // namespace

nlohmann::json report_json(const ValidationReport& report) {
  auto errors = nlohmann::json::array();
  auto warnings = nlohmann::json::array();
  for (const auto& d : report.errors) errors.push_back(diagnostic_json(d));
  for (const auto& d : report.warnings) warnings.push_back(diagnostic_json(d));
  return {{"errors", std::move(errors)}, {"warnings", std::move(warnings)}};
}

std::string diagnostic_line(const Diagnostic& diagnostic) { return diagnostic_json(diagnostic).dump(); }

}  // namespace micromap
