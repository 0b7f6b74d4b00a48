#include "micromap/map.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "state_data.hpp"

namespace micromap {
namespace {

constexpr double kMapInset = 2.0;
constexpr double kBorderStroke = 0.3;
constexpr double kMaxIdFont = 8.0;

StateGeometry load_geometry() {
  StateGeometry g;
  PerRegion<bool> seen{};
  for (std::size_t i = 0; i < detail::kStateCount; ++i) {
    const auto& s = detail::kStates[i];
    const auto id = RegionId::parse(s.usps);
    if (seen[id.index()]) throw std::logic_error("duplicate state in geometry asset");
    seen[id.index()] = true;
    auto& shape = g.shapes[id.index()];
    shape.anchor = {s.anchor_x, s.anchor_y};
    shape.asset_name = s.name;
    shape.asset_fips = s.fips;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw std::logic_error("geometry asset does not cover all 51 regions");
  }

  double x0 = std::numeric_limits<double>::infinity();
  double y0 = x0;
  double x1 = -x0;
  double y1 = -x0;
  for (std::size_t r = 0; r < detail::kStateRingCount; ++r) {
    const auto& ring = detail::kStateRings[r];
    std::vector<Point> pts;
    pts.reserve(ring.count);
    for (std::size_t k = 0; k < ring.count; ++k) {
      const Point p{detail::kStateCoords[ring.offset + 2 * k], detail::kStateCoords[ring.offset + 2 * k + 1]};
      x0 = std::min(x0, p.x);
      y0 = std::min(y0, p.y);
      x1 = std::max(x1, p.x);
      y1 = std::max(y1, p.y);
      pts.push_back(p);
    }
    g.shapes[RegionId::parse(ring.usps).index()].rings.push_back(std::move(pts));
  }
  g.frame = {x0, y0, x1 - x0, y1 - y0};
  return g;
}

}  // namespace

const StateGeometry& state_geometry() {
  static const StateGeometry geometry = load_geometry();
  return geometry;
}

ColorRole color_role(ShadingClass c) {
  switch (c) {
    case ShadingClass::kSlot0: return ColorRole::kSlot0;
    case ShadingClass::kSlot1: return ColorRole::kSlot1;
    case ShadingClass::kSlot2: return ColorRole::kSlot2;
    case ShadingClass::kSlot3: return ColorRole::kSlot3;
    case ShadingClass::kSlot4: return ColorRole::kSlot4;
    case ShadingClass::kMedian: return ColorRole::kMedian;
    case ShadingClass::kTail: return ColorRole::kTail;
    case ShadingClass::kBase: return ColorRole::kBase;
    case ShadingClass::kAboveBand: return ColorRole::kAboveBand;
    case ShadingClass::kBelowBand: return ColorRole::kBelowBand;
  }
  return ColorRole::kBase;
}

bool highlighted(ShadingClass c) {
  return c == ShadingClass::kSlot0 || c == ShadingClass::kSlot1 || c == ShadingClass::kSlot2 ||
         c == ShadingClass::kSlot3 || c == ShadingClass::kSlot4 || c == ShadingClass::kMedian;
}

PerRegion<ShadingClass> shaded_sets(ShadingMode mode, std::size_t group_index, const GroupPartition& partition) {
  if (group_index >= partition.groups.size()) throw std::out_of_range("group index out of range");
  const auto median = partition.median_index;
  PerRegion<ShadingClass> classes;
  classes.fill(ShadingClass::kBase);

  auto mark_group = [&](std::size_t g, ShadingClass c) {
    for (const auto& m : partition.groups[g]) classes[m.region.index()] = c;
  };
  auto tail_range = [&](std::size_t first, std::size_t last) {  // inclusive, skips the median group
    for (std::size_t g = first; g <= last && g < partition.groups.size(); ++g) {
      if (g != median) mark_group(g, ShadingClass::kTail);
    }
  };

  switch (mode) {
    case ShadingMode::kMap:
      break;
    case ShadingMode::kMapTail:
      if (group_index < median && group_index > 0) tail_range(0, group_index - 1);
      if (group_index > median) tail_range(group_index + 1, partition.groups.size() - 1);
      break;
    case ShadingMode::kMapCum:
      if (group_index > 0) tail_range(0, group_index - 1);
      break;
    case ShadingMode::kMapMedian:
      for (std::size_t g = 0; g < partition.groups.size(); ++g) {
        if (g < median) mark_group(g, ShadingClass::kAboveBand);
        if (g > median) mark_group(g, ShadingClass::kBelowBand);
      }
      break;
  }

  const auto& current = partition.groups[group_index];
  for (std::size_t i = 0; i < current.size(); ++i) {
    static constexpr std::array kSlots{ShadingClass::kSlot0, ShadingClass::kSlot1, ShadingClass::kSlot2,
                                       ShadingClass::kSlot3, ShadingClass::kSlot4};
    classes[current[i].region.index()] = group_index == median ? ShadingClass::kMedian : kSlots.at(i);
  }
  return classes;
}

GlyphPanelGeometry build_map_panel(const PerRegion<ShadingClass>& classes, const StateGeometry& geometry,
                                   const Rect& panel) {
  GlyphPanelGeometry g{panel, {}, {}};
  const double avail_w = panel.w - 2 * kMapInset;
  const double avail_h = panel.h - 2 * kMapInset;
  const double k = std::min(avail_w / geometry.frame.w, avail_h / geometry.frame.h);
  const double ox = panel.x + (panel.w - geometry.frame.w * k) / 2 - geometry.frame.x * k;
  const double oy = panel.y + (panel.h - geometry.frame.h * k) / 2 - geometry.frame.y * k;

  // Unhighlighted regions first so highlighted borders stay on top.
  for (const bool pass_highlighted : {false, true}) {
    for (const auto id : RegionId::all()) {
      const auto c = classes[id.index()];
      if (highlighted(c) != pass_highlighted) continue;
      for (const auto& ring : geometry.shapes[id.index()].rings) {
        Primitive p;
        p.shape = Shape::kPolygon;
        p.role = pass_highlighted ? MarkRole::kMark : MarkRole::kBackground;
        p.region = id;
        p.fill = color_role(c);
        p.stroke = ColorRole::kFrame;
        p.stroke_width = kBorderStroke;
        p.points.reserve(ring.size());
        for (const auto& pt : ring) p.points.push_back({ox + pt.x * k, oy + pt.y * k});
        g.primitives.push_back(std::move(p));
      }
    }
  }
  return g;
}

GlyphPanelGeometry build_id_panel(const GroupView& group, const Rect& panel) {
  GlyphPanelGeometry g{panel, {}, {}};
  const double row_h = group.row_height(panel);
  const double side = std::min(7.0, 0.6 * row_h);
  const double text_x = panel.x + 2 + side + 4;
  const double avail = panel.right() - 1 - text_x;
  for (std::size_t i = 0; i < group.members.size(); ++i) {
    const auto id = group.members[i].region;
    const double y = group.row_center(panel, i);
    auto square = make_rect({panel.x + 2, y - side / 2, side, side}, group.role(i), ColorRole::kNone, 0,
                            MarkRole::kMark);
    square.region = id;
    g.primitives.push_back(std::move(square));

    const std::string name(id.display_name());
    const double size = std::min({kMaxIdFont, 0.8 * row_h, avail / (kCharWidthEm * static_cast<double>(name.size()))});
    auto label = make_text({text_x, y + 0.35 * size}, name, size);
    label.region = id;
    g.primitives.push_back(std::move(label));
  }
  return g;
}

}  // namespace micromap
