#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "micromap/region.hpp"

namespace micromap {

// ---------------------------------------------------------------------------
// Data tables

/// One named numeric column of a RegionTable.
struct TableColumn {
  std::string name;
  PerRegion<std::optional<double>> values{};
  /// Regions whose cell held non-empty text that did not parse as a number.
  std::vector<RegionId> unparsed;

  bool numeric() const;
  std::vector<double> finite_values() const;
};

/// 51-row table keyed by RegionId. Immutable after construction.
class RegionTable {
 public:
  /// Throws std::invalid_argument on empty or duplicate column names or
  /// non-finite cells.
  RegionTable(std::string source_name, std::vector<TableColumn> columns);

  const std::string& source_name() const { return source_name_; }
  std::vector<std::string> column_names() const;
  bool has_column(std::string_view name) const;
  /// Throws std::out_of_range for unknown columns.
  const TableColumn& column(std::string_view name) const;
  std::optional<double> value(RegionId region, std::string_view column) const;

 private:
  std::string source_name_;
  std::vector<TableColumn> columns_;
};

struct SeriesPoint {
  double x = 0;
  double y = 0;
  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

/// Per-region time series with a common point count T >= 2 and strictly
/// increasing x within each region.
class TimeSeriesCube {
 public:
  /// Throws std::invalid_argument when the invariants do not hold.
  TimeSeriesCube(std::string name, PerRegion<std::vector<SeriesPoint>> series);

  const std::string& name() const { return name_; }
  std::size_t point_count() const { return series_[0].size(); }
  const std::vector<SeriesPoint>& series(RegionId region) const { return series_[region.index()]; }

 private:
  std::string name_;
  PerRegion<std::vector<SeriesPoint>> series_;
};

using CubeSet = std::map<std::string, TimeSeriesCube, std::less<>>;

// ---------------------------------------------------------------------------
// Panel specification

enum class GlyphKind { kDot, kArrow, kTimeSeries, kScatDot, kBoxplot };
enum class ShadingMode { kMap, kMapTail, kMapCum, kMapMedian };
enum class SortDirection { kAscending, kDescending };
/// The app profile caps glyph columns at three; the library profile only
/// requires that the columns fit on the page.
enum class Profile { kApp, kLibrary };

std::string_view to_string(GlyphKind kind);
std::string_view to_string(ShadingMode mode);
std::string_view to_string(SortDirection direction);
std::optional<GlyphKind> parse_glyph_kind(std::string_view text);
std::optional<ShadingMode> parse_shading_mode(std::string_view text);
std::optional<SortDirection> parse_sort_direction(std::string_view text);

struct GlyphColumnSpec {
  GlyphKind kind = GlyphKind::kDot;
  std::string lab1;
  std::string lab2;
  std::string lab3;
  std::optional<std::string> lab4;
  std::optional<std::string> col1;
  std::optional<std::string> col2;
  std::optional<double> refval;
  std::optional<std::string> panel_data;
  std::optional<std::vector<std::string>> box_columns;

  friend bool operator==(const GlyphColumnSpec&, const GlyphColumnSpec&) = default;
};

struct SortSpec {
  std::string column;
  SortDirection direction = SortDirection::kAscending;
  friend bool operator==(const SortSpec&, const SortSpec&) = default;
};

/// Whole-graphic description. The map and id columns are implicit; `columns`
/// holds only the additional glyph columns.
struct PanelSpec {
  std::string dataset;
  std::string title1;
  std::string title2;
  ShadingMode shading = ShadingMode::kMap;
  SortSpec sort;
  std::vector<GlyphColumnSpec> columns;
  bool color_safe = false;

  friend bool operator==(const PanelSpec&, const PanelSpec&) = default;
};

inline constexpr std::size_t kAppColumnLimit = 3;
inline constexpr std::size_t kMinBoxColumns = 5;

// ---------------------------------------------------------------------------
// Colour

/// Colours are referenced by role until the emitter resolves them.
enum class ColorRole {
  kNone,
  kSlot0,
  kSlot1,
  kSlot2,
  kSlot3,
  kSlot4,
  kMedian,
  kTail,
  kBase,
  kAboveBand,
  kBelowBand,
  kRef,
  kInk,
  kFrame,
  kBackground,
};

ColorRole slot_role(std::size_t slot);
std::string_view to_string(ColorRole role);

struct Palette {
  std::array<std::string, 5> group_colors;
  std::string median_color;
  std::string tail_color;
  std::string base_color;
  std::string above_band;
  std::string below_band;
  std::string ref_line_color;
  std::string ink;         // text, axes, outlines of glyph marks
  std::string frame;       // panel frames, state borders, grid lines
  std::string background;  // page fill

  /// Throws std::invalid_argument for kNone.
  const std::string& resolve(ColorRole role) const;
  std::vector<std::string> all_colors() const;
  bool valid() const;
};

const Palette& default_palette();
const Palette& color_safe_palette();
bool is_hex_color(std::string_view text);

// ---------------------------------------------------------------------------
// Grouping, scales, summaries

struct RankedRegion {
  std::size_t rank = 0;  // 1-based position in the sorted order
  RegionId region = RegionId::from_index(0);
  friend bool operator==(const RankedRegion&, const RankedRegion&) = default;
};

inline constexpr std::array<std::size_t, 11> kGroupSizes{5, 5, 5, 5, 5, 1, 5, 5, 5, 5, 5};
inline constexpr std::size_t kGroupCount = kGroupSizes.size();
inline constexpr std::size_t kMedianGroup = 5;

struct GroupPartition {
  std::vector<std::vector<RankedRegion>> groups;
  std::size_t median_index = kMedianGroup;

  std::span<const RankedRegion> group(std::size_t i) const { return groups.at(i); }
  /// Group index holding `region`.
  std::size_t group_of(RegionId region) const;
  std::vector<RegionId> order() const;
};

/// Affine map from data domain to pixel range. The range may be descending
/// (y axes in a y-down frame).
struct LinearScale {
  double domain_min = 0;
  double domain_max = 1;
  double range_min = 0;
  double range_max = 1;

  double operator()(double v) const {
    return range_min + (v - domain_min) / (domain_max - domain_min) * (range_max - range_min);
  }
  LinearScale with_range(double lo, double hi) const { return {domain_min, domain_max, lo, hi}; }
  bool contains(double v) const { return v >= domain_min && v <= domain_max; }
};

struct BoxStats {
  double low_whisker = 0;
  double q1 = 0;
  double median = 0;
  double q3 = 0;
  double high_whisker = 0;
  std::vector<double> outliers;
};

}  // namespace micromap
