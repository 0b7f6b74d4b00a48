#include "micromap/geometry.hpp"

#include <algorithm>
#include <limits>

namespace micromap {

double text_width(const std::string& text, double font_size) {
  // Count code points, not bytes.
  std::size_t n = 0;
  for (const unsigned char c : text) n += (c & 0xC0) != 0x80;
  return static_cast<double>(n) * font_size * kCharWidthEm;
}

Rect bounds(const Primitive& p) {
  if (p.shape == Shape::kCircle) {
    const auto& c = p.points.front();
    const double r = p.radius + p.stroke_width / 2;
    return {c.x - r, c.y - r, 2 * r, 2 * r};
  }
  if (p.shape == Shape::kText) {
    const auto& a = p.points.front();
    const double len = text_width(p.text, p.font_size);
    const double before = p.anchor == TextAnchor::kStart ? 0 : p.anchor == TextAnchor::kMiddle ? len / 2 : len;
    // Baseline anchor: ascent ~0.8 em above, descent ~0.2 em below.
    if (!p.vertical) return {a.x - before, a.y - 0.8 * p.font_size, len, p.font_size};
    // Rotated -90: text runs upward from the anchor.
    return {a.x - 0.8 * p.font_size, a.y - (len - before), p.font_size, len};
  }
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = x0;
  double x1 = -x0;
  double y1 = -x0;
  for (const auto& pt : p.points) {
    x0 = std::min(x0, pt.x);
    y0 = std::min(y0, pt.y);
    x1 = std::max(x1, pt.x);
    y1 = std::max(y1, pt.y);
  }
  const double h = p.stroke == ColorRole::kNone ? 0 : p.stroke_width / 2;
  return {x0 - h, y0 - h, x1 - x0 + 2 * h, y1 - y0 + 2 * h};
}

bool clip_check(const GlyphPanelGeometry& geometry, double eps) {
  return std::all_of(geometry.primitives.begin(), geometry.primitives.end(),
                     [&](const Primitive& p) { return geometry.panel.contains(bounds(p), eps); });
}

Primitive make_line(Point a, Point b, ColorRole stroke, double width, MarkRole role) {
  Primitive p;
  p.shape = Shape::kLine;
  p.role = role;
  p.points = {a, b};
  p.stroke = stroke;
  p.stroke_width = width;
  return p;
}

Primitive make_circle(Point c, double r, ColorRole fill, MarkRole role) {
  Primitive p;
  p.shape = Shape::kCircle;
  p.role = role;
  p.points = {c};
  p.radius = r;
  p.fill = fill;
  return p;
}

Primitive make_rect(const Rect& r, ColorRole fill, ColorRole stroke, double width, MarkRole role) {
  Primitive p;
  p.shape = Shape::kRect;
  p.role = role;
  p.points = {{r.x, r.y}, {r.right(), r.bottom()}};
  p.fill = fill;
  p.stroke = stroke;
  p.stroke_width = width;
  return p;
}

Primitive make_text(Point anchor, std::string text, double font_size, TextAnchor align) {
  Primitive p;
  p.shape = Shape::kText;
  p.role = MarkRole::kLabel;
  p.points = {anchor};
  p.text = std::move(text);
  p.font_size = font_size;
  p.fill = ColorRole::kInk;
  p.anchor = align;
  return p;
}

}  // namespace micromap
