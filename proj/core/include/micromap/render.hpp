#pragma once

#include <string>

#include "micromap/layout.hpp"
#include "micromap/report.hpp"
#include "micromap/spec_io.hpp"
#include "micromap/svg.hpp"

namespace micromap {

struct RenderOptions {
  Profile profile = Profile::kApp;
  PageSize page;
};

struct RenderedDocument {
  std::string svg;
  PageLayout layout;
  GroupPartition partition;
  GridGeometry grid;
};

/// Validate, sort, group, lay out, build every panel and emit SVG. Returns no
/// value when validation fails; warnings from validation and panel building
/// are carried in the report either way.
Outcome<RenderedDocument> render_micromap(const PanelSpec& spec, const RegionTable& table, const CubeSet& cubes,
                                          const RenderOptions& options = {});

const Palette& palette_for(const PanelSpec& spec);

}  // namespace micromap
