#include "micromap/glyphs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace micromap {
namespace {

constexpr double kMarkStroke = 1.2;
constexpr double kRefStroke = 1.0;
constexpr double kFrameStroke = 0.5;
constexpr double kArrowHeadLength = 5.0;
constexpr double kArrowHeadHalfWidth = 2.5;
constexpr double kMaxAxisFont = 7.0;

std::string region_location(RegionId id) { return "region:" + std::string(id.code()); }

Primitive tag(Primitive p, RegionId region) {
  p.region = region;
  return p;
}

double dot_radius(double row_h) { return std::min(3.2, 0.35 * row_h); }

// Rotated axis label centred on the panel's left strip, shrunk to fit its height.
Primitive vertical_axis_label(const Rect& panel, const std::string& text) {
  const double fit = (panel.h - 2) / (std::max<std::size_t>(text.size(), 1) * kCharWidthEm);
  const double size = std::max(1.0, std::min(kMaxAxisFont, fit));
  auto p = make_text({panel.x + 0.8 * size + 1.0, panel.y + panel.h / 2}, text, size, TextAnchor::kMiddle);
  p.vertical = true;
  return p;
}

double quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

double GroupView::row_height(const Rect& panel) const {
  return panel.h / static_cast<double>(std::max<std::size_t>(members.size(), 1));
}

double GroupView::row_center(const Rect& panel, std::size_t i) const {
  return panel.y + (static_cast<double>(i) + 0.5) * row_height(panel);
}

GroupView group_view(const GroupPartition& partition, std::size_t group) {
  return {partition.group(group), group == partition.median_index};
}

std::pair<double, double> plot_x_range(const Rect& panel, bool has_axis_label) {
  const double left = panel.x + kPlotInset + (has_axis_label ? kAxisLabelStrip : 0.0);
  return {left, panel.right() - kPlotInset};
}

std::pair<double, double> plot_y_range(const Rect& panel) {
  const double inset = std::min(kPlotInset, panel.h * 0.1);
  return {panel.bottom() - inset, panel.y + inset};
}

Primitive reference_line(const Rect& panel, const LinearScale& scale, double value) {
  const double x = scale(value);
  auto p = make_line({x, panel.y + kRefStroke / 2}, {x, panel.bottom() - kRefStroke / 2}, ColorRole::kRef,
                     kRefStroke, MarkRole::kReference);
  p.dashed = true;
  return p;
}

std::vector<Primitive> panel_decorations(const Rect& panel, const LinearScale& x_scale,
                                         std::span<const double> ticks) {
  std::vector<Primitive> out;
  const double h = kFrameStroke / 2;
  out.push_back(make_rect({panel.x + h, panel.y + h, panel.w - 2 * h, panel.h - 2 * h}, ColorRole::kBackground,
                          ColorRole::kFrame, kFrameStroke, MarkRole::kDecoration));
  for (const double t : ticks) {
    const double x = x_scale(t);
    out.push_back(make_line({x, panel.y + h}, {x, panel.bottom() - h}, ColorRole::kBase, kFrameStroke));
  }
  return out;
}

GlyphPanelGeometry build_dot_panel(const GroupView& group, const Rect& panel, const LinearScale& scale,
                                   const RegionValues& values, std::optional<double> refval) {
  GlyphPanelGeometry g{panel, {}, {}};
  if (refval) g.primitives.push_back(reference_line(panel, scale, *refval));
  const double r = dot_radius(group.row_height(panel));
  for (std::size_t i = 0; i < group.members.size(); ++i) {
    const auto id = group.members[i].region;
    const auto& v = values[id.index()];
    if (!v) {
      g.warnings.push_back({codes::kMissingValue, "no dot for " + std::string(id.code()), region_location(id)});
      continue;
    }
    g.primitives.push_back(tag(make_circle({scale(*v), group.row_center(panel, i)}, r, group.role(i)), id));
  }
  return g;
}

GlyphPanelGeometry build_arrow_panel(const GroupView& group, const Rect& panel, const LinearScale& scale,
                                     const RegionValues& tails, const RegionValues& heads,
                                     std::optional<double> refval) {
  GlyphPanelGeometry g{panel, {}, {}};
  if (refval) g.primitives.push_back(reference_line(panel, scale, *refval));
  const double half = std::min(kArrowHeadHalfWidth, 0.3 * group.row_height(panel));
  for (std::size_t i = 0; i < group.members.size(); ++i) {
    const auto id = group.members[i].region;
    const auto& tail = tails[id.index()];
    const auto& head = heads[id.index()];
    if (!tail || !head) {
      g.warnings.push_back({codes::kMissingValue, "no arrow for " + std::string(id.code()), region_location(id)});
      continue;
    }
    const double y = group.row_center(panel, i);
    const double x0 = scale(*tail);
    const double x1 = scale(*head);
    if (*tail == *head) {
      g.warnings.push_back(
          {codes::kZeroLengthArrow, std::string(id.code()) + " arrow has zero length", region_location(id)});
      g.primitives.push_back(tag(make_circle({x1, y}, half, group.role(i)), id));
      continue;
    }
    const double dir = x1 > x0 ? 1.0 : -1.0;
    const double len = std::min(kArrowHeadLength, std::abs(x1 - x0));
    const double neck = x1 - dir * len;
    auto shaft = make_line({x0, y}, {neck, y}, group.role(i), kMarkStroke, MarkRole::kMark);
    g.primitives.push_back(tag(std::move(shaft), id));
    Primitive headp;
    headp.shape = Shape::kPolygon;
    headp.role = MarkRole::kMark;
    headp.points = {{x1, y}, {neck, y - half}, {neck, y + half}};
    headp.fill = group.role(i);
    g.primitives.push_back(tag(std::move(headp), id));
  }
  return g;
}

GlyphPanelGeometry build_ts_panel(const GroupView& group, const Rect& panel, const TimeSeriesCube& cube,
                                  const LinearScale& x_scale, const LinearScale& y_scale,
                                  const std::optional<std::string>& axis_label) {
  GlyphPanelGeometry g{panel, {}, {}};
  const auto [bottom, top] = plot_y_range(panel);
  const auto ys = y_scale.with_range(bottom, top);
  const double stroke = group.median ? kMarkStroke * 0.8 : kMarkStroke;
  for (std::size_t i = 0; i < group.members.size(); ++i) {
    const auto id = group.members[i].region;
    Primitive line;
    line.shape = Shape::kPolyline;
    line.role = MarkRole::kMark;
    line.stroke = group.role(i);
    line.stroke_width = stroke;
    for (const auto& pt : cube.series(id)) line.points.push_back({x_scale(pt.x), ys(pt.y)});
    g.primitives.push_back(tag(std::move(line), id));
  }
  if (axis_label) g.primitives.push_back(vertical_axis_label(panel, *axis_label));
  return g;
}

GlyphPanelGeometry build_scatdot_panel(const GroupView& group, const Rect& panel, const RegionValues& xs,
                                       const RegionValues& ys, const LinearScale& x_scale,
                                       const LinearScale& y_scale, const std::optional<std::string>& axis_label) {
  GlyphPanelGeometry g{panel, {}, {}};
  const auto [bottom, top] = plot_y_range(panel);
  const auto yscale = y_scale.with_range(bottom, top);
  // Points stay inside the vertical inset; background circles are 0.8 r plus a 0.4 stroke.
  const double inset = panel.bottom() - bottom;
  const double r = std::max(0.1, std::min({2.0, inset, (inset - 0.2) / 0.8}));
  auto point = [&](RegionId id) -> std::optional<Point> {
    const auto& x = xs[id.index()];
    const auto& y = ys[id.index()];
    if (!x || !y) return std::nullopt;
    return Point{x_scale(*x), yscale(*y)};
  };
  for (const auto id : RegionId::all()) {
    if (auto p = point(id)) {
      auto c = make_circle(*p, r * 0.8, ColorRole::kBase, MarkRole::kBackground);
      c.stroke = ColorRole::kFrame;
      c.stroke_width = 0.4;
      g.primitives.push_back(tag(std::move(c), id));
    }
  }
  for (std::size_t i = 0; i < group.members.size(); ++i) {
    const auto id = group.members[i].region;
    if (auto p = point(id)) {
      g.primitives.push_back(tag(make_circle(*p, r, group.role(i)), id));
    } else {
      g.warnings.push_back({codes::kMissingValue, "no point for " + std::string(id.code()), region_location(id)});
    }
  }
  if (axis_label) g.primitives.push_back(vertical_axis_label(panel, *axis_label));
  return g;
}

BoxStats five_number_summary(std::span<const double> sample) {
  if (sample.size() < kMinBoxColumns) throw std::invalid_argument("five-number summary needs at least 5 values");
  std::vector<double> s(sample.begin(), sample.end());
  if (!std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("five-number summary needs finite values");
  }
  std::sort(s.begin(), s.end());
  BoxStats b;
  b.q1 = quantile(s, 0.25);
  b.median = quantile(s, 0.5);
  b.q3 = quantile(s, 0.75);
  const double iqr = b.q3 - b.q1;
  const double lo_fence = b.q1 - 1.5 * iqr;
  const double hi_fence = b.q3 + 1.5 * iqr;
  b.low_whisker = b.q1;
  b.high_whisker = b.q3;
  for (const double v : s) {
    if (v < lo_fence || v > hi_fence) {
      b.outliers.push_back(v);
      continue;
    }
    b.low_whisker = std::min(b.low_whisker, v);
    b.high_whisker = std::max(b.high_whisker, v);
  }
  return b;
}

GlyphPanelGeometry build_box_panel(const GroupView& group, const Rect& panel,
                                   const PerRegion<std::optional<BoxStats>>& stats, const LinearScale& scale,
                                   std::optional<double> refval) {
  GlyphPanelGeometry g{panel, {}, {}};
  if (refval) g.primitives.push_back(reference_line(panel, scale, *refval));
  const double row_h = group.row_height(panel);
  const double half = std::min(4.0, 0.3 * row_h);
  const double outlier_r = std::min(1.6, 0.25 * row_h);
  for (std::size_t i = 0; i < group.members.size(); ++i) {
    const auto id = group.members[i].region;
    const auto& b = stats[id.index()];
    if (!b) {
      g.warnings.push_back({codes::kShortSample, "no box for " + std::string(id.code()), region_location(id)});
      continue;
    }
    const double y = group.row_center(panel, i);
    const auto role = group.role(i);
    g.primitives.push_back(
        tag(make_line({scale(b->low_whisker), y}, {scale(b->q1), y}, role, kFrameStroke * 2, MarkRole::kMark), id));
    g.primitives.push_back(
        tag(make_line({scale(b->q3), y}, {scale(b->high_whisker), y}, role, kFrameStroke * 2, MarkRole::kMark), id));
    const Rect box{scale(b->q1), y - half, scale(b->q3) - scale(b->q1), 2 * half};
    g.primitives.push_back(tag(make_rect(box, role, ColorRole::kNone, 0, MarkRole::kMark), id));
    const double m = scale(b->median);
    const double tick = std::max(0.0, std::min(half, 0.5 * row_h - kMarkStroke / 2));
    g.primitives.push_back(tag(make_line({m, y - tick}, {m, y + tick}, ColorRole::kBackground, kMarkStroke), id));
    for (const double o : b->outliers) {
      g.primitives.push_back(tag(make_circle({scale(o), y}, outlier_r, role), id));
    }
  }
  return g;
}

}  // namespace micromap
