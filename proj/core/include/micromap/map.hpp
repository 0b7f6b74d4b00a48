#pragma once

#include <string>
#include <vector>

#include "micromap/geometry.hpp"
#include "micromap/glyphs.hpp"

namespace micromap {

/// Simplified state outlines in a fixed pre-projected frame (Albers USA with
/// Alaska/Hawaii insets, unitless, y-down). DC, DE and RI carry an extra
/// enlarged offshore disc so they stay visible at micromap scale.
struct StateShape {
  std::vector<std::vector<Point>> rings;
  Point anchor;
  std::string asset_name;  // name recorded in the source asset
  std::string asset_fips;
};

struct StateGeometry {
  PerRegion<StateShape> shapes;
  Rect frame;  // bounding box of all rings
};

/// Built once from the embedded asset.
const StateGeometry& state_geometry();

enum class ShadingClass { kSlot0, kSlot1, kSlot2, kSlot3, kSlot4, kMedian, kTail, kBase, kAboveBand, kBelowBand };

ColorRole color_role(ShadingClass c);
bool highlighted(ShadingClass c);

/// Class of every region in the map panel of `group_index`. The median region
/// is never tail-shaded: tails grow from the ends towards it.
PerRegion<ShadingClass> shaded_sets(ShadingMode mode, std::size_t group_index, const GroupPartition& partition);

GlyphPanelGeometry build_map_panel(const PerRegion<ShadingClass>& classes, const StateGeometry& geometry,
                                   const Rect& panel);

/// Coloured square plus display name per member, in rank order.
GlyphPanelGeometry build_id_panel(const GroupView& group, const Rect& panel);

}  // namespace micromap
