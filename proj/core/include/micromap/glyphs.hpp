#pragma once

#include <optional>
#include <span>
#include <string>

#include "micromap/geometry.hpp"

namespace micromap {

using RegionValues = PerRegion<std::optional<double>>;

/// One perceptual group as seen by a panel builder.
struct GroupView {
  std::span<const RankedRegion> members;
  bool median = false;

  /// Colour of the i-th member: its slot, or the median colour.
  ColorRole role(std::size_t i) const { return median ? ColorRole::kMedian : slot_role(i); }
  /// Vertical centre of member i's row inside `panel`.
  double row_center(const Rect& panel, std::size_t i) const;
  double row_height(const Rect& panel) const;
};

GroupView group_view(const GroupPartition& partition, std::size_t group);

// Inner plot area conventions shared by the pipeline and the builders (pixels).
inline constexpr double kPlotInset = 4.0;
inline constexpr double kAxisLabelStrip = 11.0;

/// Horizontal pixel range for data in a glyph panel; leaves room for the
/// rotated y-axis label when the kind carries one.
std::pair<double, double> plot_x_range(const Rect& panel, bool has_axis_label);
std::pair<double, double> plot_y_range(const Rect& panel);

/// Dots at (scale(value), row centre); missing values are skipped with a warning.
GlyphPanelGeometry build_dot_panel(const GroupView& group, const Rect& panel, const LinearScale& scale,
                                   const RegionValues& values, std::optional<double> refval = {});

/// Tail-to-head arrows; tail == head falls back to a dot with a warning.
GlyphPanelGeometry build_arrow_panel(const GroupView& group, const Rect& panel, const LinearScale& scale,
                                     const RegionValues& tails, const RegionValues& heads,
                                     std::optional<double> refval = {});

/// One polyline per member. Only the domain of `y_scale` is used; its range is
/// fitted to the panel so the domain stays shared across rows.
GlyphPanelGeometry build_ts_panel(const GroupView& group, const Rect& panel, const TimeSeriesCube& cube,
                                  const LinearScale& x_scale, const LinearScale& y_scale,
                                  const std::optional<std::string>& axis_label = {});

/// All 51 points in the base colour with the group's members overdrawn.
GlyphPanelGeometry build_scatdot_panel(const GroupView& group, const Rect& panel, const RegionValues& xs,
                                       const RegionValues& ys, const LinearScale& x_scale,
                                       const LinearScale& y_scale,
                                       const std::optional<std::string>& axis_label = {});

/// Quartiles by linear interpolation at p(n-1); whiskers at the most extreme
/// data inside the 1.5 IQR fences (never inside the box); the rest are outliers.
/// Throws std::invalid_argument for fewer than 5 values or non-finite input.
BoxStats five_number_summary(std::span<const double> sample);

GlyphPanelGeometry build_box_panel(const GroupView& group, const Rect& panel,
                                   const PerRegion<std::optional<BoxStats>>& stats, const LinearScale& scale,
                                   std::optional<double> refval = {});

/// Frame and tick gridlines drawn under a glyph panel.
std::vector<Primitive> panel_decorations(const Rect& panel, const LinearScale& x_scale,
                                         std::span<const double> ticks);

/// Dashed full-height reference line at scale(value).
Primitive reference_line(const Rect& panel, const LinearScale& scale, double value);

}  // namespace micromap
