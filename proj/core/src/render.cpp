#include "micromap/render.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "micromap/glyphs.hpp"
#include "micromap/map.hpp"

namespace micromap {
namespace {

constexpr double kPx = layout::kPixelsPerInch;
constexpr double kTickSpacingPx = 30.0;

int max_ticks_for(double width_px) {
  return std::clamp(static_cast<int>(width_px / kTickSpacingPx), 3, 6);
}

std::string tick_label(double value, double step) {
  int decimals = 0;
  while (decimals < 6) {
    const double scaled = step * std::pow(10.0, decimals);
    if (std::abs(scaled - std::round(scaled)) < 1e-6 * std::max(1.0, std::abs(scaled))) break;
    ++decimals;
  }
  auto s = fmt::format("{:.{}f}", value, decimals);
  if (s.find_first_not_of("-0.") == std::string::npos && s.starts_with('-')) s.erase(0, 1);
  return s;
}

ColumnAxis make_axis(const LinearScale& scale, const std::vector<double>& ticks) {
  ColumnAxis axis;
  const double step = ticks.size() >= 2 ? ticks[1] - ticks[0] : 1.0;
  for (const double t : ticks) {
    axis.positions.push_back(scale(t));
    axis.labels.push_back(tick_label(t, step));
  }
  return axis;
}

std::vector<double> finite(const RegionValues& values) {
  std::vector<double> out;
  for (const auto& v : values) {
    if (v) out.push_back(*v);
  }
  return out;
}

std::string column_location(std::size_t index) { return "columns[" + std::to_string(index) + "]"; }

class GridBuilder {
 public:
  GridBuilder(const PanelSpec& spec, const RegionTable& table, const CubeSet& cubes, const PageLayout& layout,
              const GroupPartition& partition, ValidationReport& report)
      : spec_(spec), table_(table), cubes_(cubes), layout_(layout), partition_(partition), report_(report) {}

  GridGeometry build() {
    GridGeometry grid;
    grid.cells.resize(kGroupCount);
    for (auto& row : grid.cells) row.resize(layout_.columns.size());
    grid.axes.resize(layout_.columns.size());

    const auto& geometry = state_geometry();
    for (std::size_t r = 0; r < kGroupCount; ++r) {
      grid.cells[r][0] =
          build_map_panel(shaded_sets(spec_.shading, r, partition_), geometry, panel(r, 0));
      grid.cells[r][1] = build_id_panel(group_view(partition_, r), panel(r, 1));
    }
    for (std::size_t i = 0; i < spec_.columns.size(); ++i) build_column(grid, i);
    return grid;
  }

 private:
  Rect panel(std::size_t row, std::size_t column) const { return layout_.panel(row, column).scaled(kPx); }

  const RegionValues& values(const std::optional<std::string>& name) const { return table_.column(*name).values; }

  void collect(std::size_t index, const GlyphPanelGeometry& g) {
    for (const auto& w : g.warnings) {
      if (w.code == codes::kMissingValue || w.code == codes::kShortSample) continue;  // validation reports these
      report_.warn(w.code, w.message, column_location(index) + ":" + w.location);
    }
  }

  void build_column(GridGeometry& grid, std::size_t index) {
    const auto& col = spec_.columns[index];
    const std::size_t c = index + 2;
    const Rect first = panel(0, c);
    const bool axis_label = col.lab4.has_value() &&
                            (col.kind == GlyphKind::kTimeSeries || col.kind == GlyphKind::kScatDot);
    const auto [x0, x1] = plot_x_range(first, axis_label);
    const int max_ticks = max_ticks_for(x1 - x0);

    LinearScale x_scale;
    LinearScale y_scale;
    PerRegion<std::optional<BoxStats>> boxes;
    std::optional<const TimeSeriesCube*> cube;
    switch (col.kind) {
      case GlyphKind::kDot:
        x_scale = column_scale(finite(values(col.col1)), col.refval, x0, x1);
        break;
      case GlyphKind::kArrow: {
        auto all = finite(values(col.col1));
        const auto heads = finite(values(col.col2));
        all.insert(all.end(), heads.begin(), heads.end());
        x_scale = column_scale(all, col.refval, x0, x1);
        break;
      }
      case GlyphKind::kTimeSeries: {
        cube = &cubes_.find(*col.panel_data)->second;
        std::vector<double> xs;
        std::vector<double> ys;
        for (const auto id : RegionId::all()) {
          for (const auto& p : (*cube)->series(id)) {
            xs.push_back(p.x);
            ys.push_back(p.y);
          }
        }
        x_scale = column_scale(xs, std::nullopt, x0, x1);
        y_scale = column_scale(ys, std::nullopt, 1, 0);
        break;
      }
      case GlyphKind::kScatDot:
        x_scale = column_scale(finite(values(col.col1)), std::nullopt, x0, x1);
        y_scale = column_scale(finite(values(col.col2)), std::nullopt, 1, 0);
        break;
      case GlyphKind::kBoxplot: {
        std::vector<double> all;
        for (const auto id : RegionId::all()) {
          std::vector<double> sample;
          for (const auto& name : *col.box_columns) {
            if (auto v = table_.value(id, name)) sample.push_back(*v);
          }
          if (sample.size() < kMinBoxColumns) continue;
          boxes[id.index()] = five_number_summary(sample);
          all.insert(all.end(), sample.begin(), sample.end());
        }
        x_scale = column_scale(all, col.refval, x0, x1);
        break;
      }
    }

    const auto ticks = nice_ticks(x_scale, max_ticks);
    grid.axes[c] = make_axis(x_scale, ticks);
    for (std::size_t r = 0; r < kGroupCount; ++r) {
      const auto group = group_view(partition_, r);
      const Rect p = panel(r, c);
      GlyphPanelGeometry g;
      switch (col.kind) {
        case GlyphKind::kDot:
          g = build_dot_panel(group, p, x_scale, values(col.col1), col.refval);
          break;
        case GlyphKind::kArrow:
          g = build_arrow_panel(group, p, x_scale, values(col.col1), values(col.col2), col.refval);
          break;
        case GlyphKind::kTimeSeries:
          g = build_ts_panel(group, p, **cube, x_scale, y_scale, col.lab4);
          break;
        case GlyphKind::kScatDot:
          g = build_scatdot_panel(group, p, values(col.col1), values(col.col2), x_scale, y_scale, col.lab4);
          break;
        case GlyphKind::kBoxplot:
          g = build_box_panel(group, p, boxes, x_scale, col.refval);
          break;
      }
      collect(index, g);
      auto decorations = panel_decorations(p, x_scale, ticks);
      g.primitives.insert(g.primitives.begin(), decorations.begin(), decorations.end());
      grid.cells[r][c] = std::move(g);
    }
  }

  const PanelSpec& spec_;
  const RegionTable& table_;
  const CubeSet& cubes_;
  const PageLayout& layout_;
  const GroupPartition& partition_;
  ValidationReport& report_;
};

}  // namespace

const Palette& palette_for(const PanelSpec& spec) {
  return spec.color_safe ? color_safe_palette() : default_palette();
}

Outcome<RenderedDocument> render_micromap(const PanelSpec& spec, const RegionTable& table, const CubeSet& cubes,
                                          const RenderOptions& options) {
  Outcome<RenderedDocument> out;
  out.report = validate(spec, table, cubes, {options.profile, options.page});
  if (!out.report.ok()) return out;

  RenderedDocument doc;
  doc.partition = perceptual_groups(sort_regions(table, spec.sort));
  doc.layout = layout_page(spec, options.page);
  doc.grid = GridBuilder(spec, table, cubes, doc.layout, doc.partition, out.report).build();
  doc.svg = render_svg(doc.layout, doc.grid, palette_for(spec), spec);
  out.value = std::move(doc);
  return out;
}

}  // namespace micromap
