#include "micromap/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>

namespace micromap {

bool TableColumn::numeric() const {
  return std::any_of(values.begin(), values.end(), [](const auto& v) { return v.has_value(); });
}

std::vector<double> TableColumn::finite_values() const {
  std::vector<double> out;
  for (const auto& v : values) {
    if (v && std::isfinite(*v)) out.push_back(*v);
  }
  return out;
}

RegionTable::RegionTable(std::string source_name, std::vector<TableColumn> columns)
    : source_name_(std::move(source_name)), columns_(std::move(columns)) {
  std::set<std::string_view> seen;
  for (const auto& c : columns_) {
    if (c.name.empty()) throw std::invalid_argument("empty column name");
    if (!seen.insert(c.name).second) throw std::invalid_argument("duplicate column '" + c.name + "'");
    for (const auto& v : c.values) {
      if (v && !std::isfinite(*v)) throw std::invalid_argument("non-finite cell in '" + c.name + "'");
    }
  }
}

std::vector<std::string> RegionTable::column_names() const {
  std::vector<std::string> names;
  names.reserve(columns_.size());
  for (const auto& c : columns_) names.push_back(c.name);
  return names;
}

bool RegionTable::has_column(std::string_view name) const {
  return std::any_of(columns_.begin(), columns_.end(), [&](const auto& c) { return c.name == name; });
}

const TableColumn& RegionTable::column(std::string_view name) const {
  for (const auto& c : columns_) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("unknown column '" + std::string(name) + "'");
}

std::optional<double> RegionTable::value(RegionId region, std::string_view column) const {
  return this->column(column).values[region.index()];
}

TimeSeriesCube::TimeSeriesCube(std::string name, PerRegion<std::vector<SeriesPoint>> series)
    : name_(std::move(name)), series_(std::move(series)) {
  const std::size_t t = series_[0].size();
  if (t < 2) throw std::invalid_argument("time series need at least 2 points");
  for (const auto& s : series_) {
    if (s.size() != t) throw std::invalid_argument("ragged time series");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!std::isfinite(s[i].x) || !std::isfinite(s[i].y)) {
        throw std::invalid_argument("non-finite time series point");
      }
      if (i > 0 && !(s[i].x > s[i - 1].x)) throw std::invalid_argument("x not strictly increasing");
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

template <class E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view text) {
  for (const auto& [value, name] : table) {
    if (name == text) return value;
  }
  return std::nullopt;
}

template <class E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

constexpr std::array<std::pair<GlyphKind, std::string_view>, 5> kGlyphNames{{
    {GlyphKind::kDot, "dot"},
    {GlyphKind::kArrow, "arrow"},
    {GlyphKind::kTimeSeries, "ts"},
    {GlyphKind::kScatDot, "scatdot"},
    {GlyphKind::kBoxplot, "boxplot"},
}};

constexpr std::array<std::pair<ShadingMode, std::string_view>, 4> kShadingNames{{
    {ShadingMode::kMap, "map"},
    {ShadingMode::kMapTail, "maptail"},
    {ShadingMode::kMapCum, "mapcum"},
    {ShadingMode::kMapMedian, "mapmedian"},
}};

constexpr std::array<std::pair<SortDirection, std::string_view>, 2> kDirectionNames{{
    {SortDirection::kAscending, "ascending"},
    {SortDirection::kDescending, "descending"},
}};

constexpr std::array<std::pair<ColorRole, std::string_view>, 15> kRoleNames{{
    {ColorRole::kNone, "none"},
    {ColorRole::kSlot0, "slot0"},
    {ColorRole::kSlot1, "slot1"},
    {ColorRole::kSlot2, "slot2"},
    {ColorRole::kSlot3, "slot3"},
    {ColorRole::kSlot4, "slot4"},
    {ColorRole::kMedian, "median"},
    {ColorRole::kTail, "tail"},
    {ColorRole::kBase, "base"},
    {ColorRole::kAboveBand, "above"},
    {ColorRole::kBelowBand, "below"},
    {ColorRole::kRef, "ref"},
    {ColorRole::kInk, "ink"},
    {ColorRole::kFrame, "frame"},
    {ColorRole::kBackground, "background"},
}};

}  // namespace

std::string_view to_string(GlyphKind kind) { return name_of(kGlyphNames, kind); }
std::string_view to_string(ShadingMode mode) { return name_of(kShadingNames, mode); }
std::string_view to_string(SortDirection direction) { return name_of(kDirectionNames, direction); }
std::string_view to_string(ColorRole role) { return name_of(kRoleNames, role); }
std::optional<GlyphKind> parse_glyph_kind(std::string_view text) { return lookup(kGlyphNames, text); }
std::optional<ShadingMode> parse_shading_mode(std::string_view text) { return lookup(kShadingNames, text); }
std::optional<SortDirection> parse_sort_direction(std::string_view text) {
  return lookup(kDirectionNames, text);
}

ColorRole slot_role(std::size_t slot) {
  static constexpr std::array kSlots{ColorRole::kSlot0, ColorRole::kSlot1, ColorRole::kSlot2,
                                     ColorRole::kSlot3, ColorRole::kSlot4};
  return kSlots.at(slot);
}

const std::string& Palette::resolve(ColorRole role) const {
  switch (role) {
    case ColorRole::kSlot0: return group_colors[0];
    case ColorRole::kSlot1: return group_colors[1];
    case ColorRole::kSlot2: return group_colors[2];
    case ColorRole::kSlot3: return group_colors[3];
    case ColorRole::kSlot4: return group_colors[4];
    case ColorRole::kMedian: return median_color;
    case ColorRole::kTail: return tail_color;
    case ColorRole::kBase: return base_color;
    case ColorRole::kAboveBand: return above_band;
    case ColorRole::kBelowBand: return below_band;
    case ColorRole::kRef: return ref_line_color;
    case ColorRole::kInk: return ink;
    case ColorRole::kFrame: return frame;
    case ColorRole::kBackground: return background;
    case ColorRole::kNone: break;
  }
  throw std::invalid_argument("colour role has no palette entry");
}

std::vector<std::string> Palette::all_colors() const {
  std::vector<std::string> out(group_colors.begin(), group_colors.end());
  for (const auto* c : {&median_color, &tail_color, &base_color, &above_band, &below_band,
                        &ref_line_color, &ink, &frame, &background}) {
    out.push_back(*c);
  }
  return out;
}

bool Palette::valid() const {
  const auto colors = all_colors();
  return std::all_of(colors.begin(), colors.end(), [](const auto& c) { return is_hex_color(c); });
}

bool is_hex_color(std::string_view text) {
  if (text.size() != 7 || text[0] != '#') return false;
  return std::all_of(text.begin() + 1, text.end(),
                     [](char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; });
}

const Palette& default_palette() {
  static const Palette p{
      {"#E41A1C", "#FF7F00", "#4DAF4A", "#377EB8", "#984EA3"},
      "#000000", "#C8C8C8", "#F0F0F0", "#FFF2E6", "#E6F2FF", "#008000",
      "#333333", "#8C8C8C", "#FFFFFF",
  };
  return p;
}

const Palette& color_safe_palette() {
  static const Palette p = [] {
    Palette safe = default_palette();
    safe.group_colors = {"#E69F00", "#56B4E9", "#009E73", "#CC79A7", "#0072B2"};
    return safe;
  }();
  return p;
}

std::size_t GroupPartition::group_of(RegionId region) const {
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (const auto& m : groups[g]) {
      if (m.region == region) return g;
    }
  }
  throw std::out_of_range("region not in partition");
}

std::vector<RegionId> GroupPartition::order() const {
  std::vector<RegionId> out;
  for (const auto& g : groups) {
    for (const auto& m : g) out.push_back(m.region);
  }
  return out;
}

}  // namespace micromap
