#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "micromap/geometry.hpp"
#include "micromap/layout.hpp"

namespace micromap {

/// Tick marks and labels drawn below a glyph column.
struct ColumnAxis {
  std::vector<double> positions;  // pixels
  std::vector<std::string> labels;
};

/// Everything drawn inside the grid: cells[row][column] plus per-column axes
/// (absent for the map and id columns).
struct GridGeometry {
  std::vector<std::vector<GlyphPanelGeometry>> cells;
  std::vector<std::optional<ColumnAxis>> axes;
};

/// Deterministic SVG 1.1 at 96 px/in. Colour roles resolve through `palette`;
/// numbers are written with two decimals.
std::string render_svg(const PageLayout& layout, const GridGeometry& grid, const Palette& palette,
                       const PanelSpec& spec);

enum class ImageFormat { kSvg, kPng };
std::optional<ImageFormat> parse_image_format(std::string_view text);
std::string_view file_extension(ImageFormat format);
std::string_view mime_type(ImageFormat format);

/// Rasterizes an SVG produced by render_svg to 8-bit RGBA bytes in the given
/// format. Pixel size is the page size in inches times `dpi`.
/// Throws SpecError(UNSUPPORTED_FORMAT) for formats other than png, and
/// SpecError(BAD_VALUE) for a dpi outside [1, 1200] or unreadable SVG.
std::vector<std::uint8_t> rasterize(std::string_view svg, int dpi, std::string_view format = "png");

/// Two-decimal fixed formatting with "-0.00" folded to "0.00".
std::string format_coord(double v);
std::string xml_escape(std::string_view text);

}  // namespace micromap
