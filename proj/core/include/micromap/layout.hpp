#pragma once

#include <optional>
#include <span>
#include <vector>

#include "micromap/model.hpp"
#include "micromap/spec_io.hpp"

namespace micromap {

// Page geometry constants, in inches.
namespace layout {
inline constexpr double kMapColumnWidth = 1.5;
inline constexpr double kIdColumnWidth = 0.9;
inline constexpr double kMinGlyphColumnWidth = 1.2;
inline constexpr double kTitleLineHeight = 0.35;
inline constexpr double kHeaderBandHeight = 0.55;
inline constexpr double kFooterBandHeight = 0.25;
inline constexpr double kMedianRowRatio = 0.4;
inline constexpr double kRowGap = 0.05;
inline constexpr double kPanelInset = 0.05;
inline constexpr double kPixelsPerInch = 96.0;
inline constexpr double kScalePad = 0.05;
}  // namespace layout

struct Rect {
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;

  double right() const { return x + w; }
  double bottom() const { return y + h; }
  Rect scaled(double k) const { return {x * k, y * k, w * k, h * k}; }
  bool contains(double px, double py, double eps = 1e-9) const {
    return px >= x - eps && px <= right() + eps && py >= y - eps && py <= bottom() + eps;
  }
  bool contains(const Rect& r, double eps = 1e-9) const {
    return contains(r.x, r.y, eps) && contains(r.right(), r.bottom(), eps);
  }
  /// Interiors intersect; shared edges do not count.
  bool overlaps(const Rect& r) const {
    return x < r.right() && r.x < right() && y < r.bottom() && r.y < bottom();
  }
};

enum class ColumnRole { kMap, kId, kGlyph };

struct ColumnBand {
  ColumnRole role = ColumnRole::kGlyph;
  double x = 0;
  double width = 0;
};

struct RowBand {
  double y = 0;
  double height = 0;
  bool median = false;
};

/// Resolved page grid, in inches: 11 group rows by (2 + K) columns.
struct PageLayout {
  double page_width = 7.5;
  double page_height = 10.0;
  Rect title_band;
  Rect header_band;
  Rect footer_band;
  std::size_t title_lines = 0;
  std::vector<ColumnBand> columns;
  std::vector<RowBand> rows;

  /// Cell of (row, column) inset horizontally by kPanelInset.
  Rect panel(std::size_t row, std::size_t column) const;
  std::vector<double> column_widths() const;
  std::size_t glyph_column_count() const { return columns.size() - 2; }
};

/// Stable sort by the sort column; missing values go last whatever the
/// direction, ties are broken by ascending region code.
std::vector<RegionId> sort_regions(const RegionTable& table, const SortSpec& sort);

/// Splits 51 sorted regions into groups of [5,5,5,5,5,1,5,5,5,5,5].
/// Throws std::invalid_argument for any other length.
GroupPartition perceptual_groups(std::span<const RegionId> order);

/// Domain over the finite values plus `refval`, padded 5% on each side.
/// Throws SpecError(NO_FINITE_VALUES) when nothing finite is given.
LinearScale column_scale(std::span<const double> values, std::optional<double> refval, double range_min,
                         double range_max);

/// Multiples of a step from {1, 2, 2.5, 5} x 10^k inside the domain: the
/// smallest step giving between 2 and `max_ticks` ticks.
std::vector<double> nice_ticks(const LinearScale& scale, int max_ticks);

bool glyph_columns_fit(std::size_t glyph_columns, const PageSize& page);

/// Throws SpecError(WIDTH_EXCEEDED) when the glyph columns cannot each get 1.2 in.
PageLayout layout_page(const PanelSpec& spec, const PageSize& page = {});

}  // namespace micromap
