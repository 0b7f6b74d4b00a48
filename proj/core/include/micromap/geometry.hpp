#pragma once

#include <optional>
#include <string>
#include <vector>

#include "micromap/layout.hpp"
#include "micromap/model.hpp"
#include "micromap/report.hpp"

namespace micromap {

struct Point {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

enum class Shape { kLine, kCircle, kPolyline, kRect, kPolygon, kText };

/// What a primitive means; the emitter writes it as the element class and the
/// linking checks key off it.
enum class MarkRole {
  kMark,        // region-linked mark in the region's group colour
  kBackground,  // region-linked context mark (scatterplot background, map fill)
  kReference,   // refval line
  kDecoration,  // frames, whisker caps, gridlines
  kLabel,       // text
};

enum class TextAnchor { kStart, kMiddle, kEnd };

/// Geometry in page pixels (96 px/in), colours by role.
struct Primitive {
  Shape shape = Shape::kLine;
  MarkRole role = MarkRole::kDecoration;
  std::vector<Point> points;  // line: 2; rect: top-left + bottom-right; text: anchor
  double radius = 0;
  ColorRole fill = ColorRole::kNone;
  ColorRole stroke = ColorRole::kNone;
  double stroke_width = 0;
  bool dashed = false;
  std::string text;
  double font_size = 0;
  bool vertical = false;  // text rotated -90 degrees about its anchor
  TextAnchor anchor = TextAnchor::kStart;
  std::optional<RegionId> region;
};

/// Reference-line dash pattern, in pixels.
inline constexpr double kDashOn = 4.0;
inline constexpr double kDashOff = 3.0;
/// Width estimate per character, as a fraction of the font size.
inline constexpr double kCharWidthEm = 0.6;

struct GlyphPanelGeometry {
  Rect panel;  // pixels
  std::vector<Primitive> primitives;
  std::vector<Diagnostic> warnings;
};

double text_width(const std::string& text, double font_size);
/// Axis-aligned bounds, including stroke half-width and estimated text extent.
Rect bounds(const Primitive& p);
/// True when every primitive lies inside the panel rectangle.
bool clip_check(const GlyphPanelGeometry& geometry, double eps = 1e-6);

// Convenience constructors used by the panel builders.
Primitive make_line(Point a, Point b, ColorRole stroke, double width, MarkRole role = MarkRole::kDecoration);
Primitive make_circle(Point c, double r, ColorRole fill, MarkRole role = MarkRole::kMark);
Primitive make_rect(const Rect& r, ColorRole fill, ColorRole stroke, double width, MarkRole role);
Primitive make_text(Point anchor, std::string text, double font_size, TextAnchor align = TextAnchor::kStart);

}  // namespace micromap
