#include "micromap/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>

namespace micromap {
namespace {

constexpr double kPx = layout::kPixelsPerInch;
constexpr double kTitleFont = 13.0;
constexpr double kSubtitleFont = 11.0;
constexpr double kHeaderFont = 9.0;
constexpr double kTickFont = 7.0;
constexpr double kFooterFont = 8.0;

class SvgWriter {
 public:
  explicit SvgWriter(const Palette& palette) : palette_(palette) {}

  std::string& out() { return out_; }

  std::string color(ColorRole role) const { return role == ColorRole::kNone ? "none" : palette_.resolve(role); }

  void text(double x, double y, std::string_view cls, const std::string& content, double size, TextAnchor anchor,
            bool vertical = false, std::string_view extra_class = {}) {
    static constexpr std::string_view kAnchors[] = {"start", "middle", "end"};
    out_ += fmt::format("<text class=\"{}{}{}\" x=\"{}\" y=\"{}\" font-size=\"{}\" text-anchor=\"{}\" fill=\"{}\"",
                        cls, extra_class.empty() ? "" : " ", extra_class, format_coord(x), format_coord(y),
                        format_coord(size), kAnchors[static_cast<int>(anchor)], color(ColorRole::kInk));
    if (vertical) out_ += fmt::format(" transform=\"rotate(-90 {} {})\"", format_coord(x), format_coord(y));
    out_ += ">" + xml_escape(content) + "</text>\n";
  }

  void primitive(const Primitive& p) {
    const auto cls = class_of(p);
    switch (p.shape) {
      case Shape::kLine:
        out_ += fmt::format("<line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"{}/>\n", cls,
                            format_coord(p.points[0].x), format_coord(p.points[0].y), format_coord(p.points[1].x),
                            format_coord(p.points[1].y), stroke_attrs(p));
        break;
      case Shape::kCircle:
        out_ += fmt::format("<circle class=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"{}/>\n", cls,
                            format_coord(p.points[0].x), format_coord(p.points[0].y), format_coord(p.radius),
                            color(p.fill), stroke_attrs(p));
        break;
      case Shape::kRect:
        out_ += fmt::format("<rect class=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"{}/>\n", cls,
                            format_coord(p.points[0].x), format_coord(p.points[0].y),
                            format_coord(p.points[1].x - p.points[0].x), format_coord(p.points[1].y - p.points[0].y),
                            color(p.fill), stroke_attrs(p));
        break;
      case Shape::kPolyline:
      case Shape::kPolygon: {
        const bool poly = p.shape == Shape::kPolygon;
        out_ += fmt::format("<{} class=\"{}\" points=\"", poly ? "polygon" : "polyline", cls);
        for (std::size_t i = 0; i < p.points.size(); ++i) {
          if (i) out_ += ' ';
          out_ += format_coord(p.points[i].x) + "," + format_coord(p.points[i].y);
        }
        out_ += fmt::format("\" fill=\"{}\"{}{}/>\n", poly ? color(p.fill) : "none", stroke_attrs(p),
                            poly ? "" : " stroke-linejoin=\"round\"");
        break;
      }
      case Shape::kText:
        text(p.points[0].x, p.points[0].y, cls, p.text, p.font_size, p.anchor, p.vertical);
        break;
    }
  }

 private:
  static std::string class_of(const Primitive& p) {
    static constexpr std::string_view kRoles[] = {"mark", "bg", "ref", "deco", "label"};
    std::string cls(kRoles[static_cast<int>(p.role)]);
    if (p.region) cls += " r-" + std::string(p.region->code());
    return cls;
  }

  std::string stroke_attrs(const Primitive& p) const {
    if (p.stroke == ColorRole::kNone || p.stroke_width <= 0) return {};
    std::string s = fmt::format(" stroke=\"{}\" stroke-width=\"{}\"", color(p.stroke), format_coord(p.stroke_width));
    if (p.dashed) s += fmt::format(" stroke-dasharray=\"{},{}\"", format_coord(kDashOn), format_coord(kDashOff));
    return s;
  }

  const Palette& palette_;
  std::string out_;
};

double fitted(double preferred, const std::string& text, double width) {
  if (text.empty()) return preferred;
  return std::min(preferred, 0.95 * width / (kCharWidthEm * static_cast<double>(text.size())));
}

std::string_view kind_class(ColumnRole role, const PanelSpec& spec, std::size_t column) {
  if (role == ColumnRole::kMap) return "map";
  if (role == ColumnRole::kId) return "id";
  return to_string(spec.columns.at(column - 2).kind);
}

}  // namespace

std::string format_coord(double v) {
  auto s = fmt::format("{:.2f}", v);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_svg(const PageLayout& layout, const GridGeometry& grid, const Palette& palette,
                       const PanelSpec& spec) {
  SvgWriter w(palette);
  auto& out = w.out();
  const double width = layout.page_width * kPx;
  const double height = layout.page_height * kPx;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"DejaVu Sans, Arial, sans-serif\">\n",
      format_coord(width), format_coord(height));
  out += fmt::format("<rect class=\"page\" x=\"0.00\" y=\"0.00\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
                     format_coord(width), format_coord(height), w.color(ColorRole::kBackground));

  // Titles, one band line each, centred.
  out += "<g class=\"titles\">\n";
  std::size_t line = 0;
  for (const auto* title : {&spec.title1, &spec.title2}) {
    if (title->empty()) continue;
    const double size = fitted(line == 0 ? kTitleFont : kSubtitleFont, *title, width);
    const double y = (layout.title_band.y + (static_cast<double>(line) + 0.5) * layout::kTitleLineHeight) * kPx;
    w.text(width / 2, y + 0.35 * size, "title", *title, size, TextAnchor::kMiddle);
    ++line;
  }
  out += "</g>\n";

  // Column headers (lab1, lab2) above, footers (ticks, lab3) below.
  const double grid_bottom = layout.rows.back().y + layout.rows.back().height;
  for (std::size_t c = 2; c < layout.columns.size(); ++c) {
    const auto& band = layout.columns[c];
    const auto& col = spec.columns[c - 2];
    const double cx = (band.x + band.width / 2) * kPx;
    const double cw = band.width * kPx;
    out += fmt::format("<g class=\"header\" id=\"header-c{}\">\n", c);
    const double hy = layout.header_band.y * kPx;
    const double hh = layout.header_band.h * kPx;
    if (!col.lab1.empty()) {
      w.text(cx, hy + hh * 0.40, "lab1", col.lab1, fitted(kHeaderFont, col.lab1, cw), TextAnchor::kMiddle);
    }
    if (!col.lab2.empty()) {
      w.text(cx, hy + hh * 0.70, "lab2", col.lab2, fitted(kHeaderFont, col.lab2, cw), TextAnchor::kMiddle);
    }
    out += "</g>\n";
  }

  for (std::size_t r = 0; r < grid.cells.size(); ++r) {
    for (std::size_t c = 0; c < grid.cells[r].size(); ++c) {
      out += fmt::format("<g class=\"panel {}\" id=\"panel-r{}-c{}\">\n",
                         kind_class(layout.columns[c].role, spec, c), r, c);
      for (const auto& p : grid.cells[r][c].primitives) w.primitive(p);
      out += "</g>\n";
    }
  }

  for (std::size_t c = 2; c < layout.columns.size(); ++c) {
    const auto& band = layout.columns[c];
    const auto& col = spec.columns[c - 2];
    const double cx = (band.x + band.width / 2) * kPx;
    const double fy = grid_bottom * kPx;
    out += fmt::format("<g class=\"footer\" id=\"footer-c{}\">\n", c);
    if (c < grid.axes.size() && grid.axes[c]) {
      const auto& axis = *grid.axes[c];
      for (std::size_t t = 0; t < axis.positions.size(); ++t) {
        const double x = axis.positions[t];
        out += fmt::format("<line class=\"tick\" x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"{3}\" "
                           "stroke-width=\"0.50\"/>\n",
                           format_coord(x), format_coord(fy), format_coord(fy + 3), w.color(ColorRole::kFrame));
        w.text(x, fy + 10, "tick-label", axis.labels[t], kTickFont, TextAnchor::kMiddle);
      }
    }
    if (!col.lab3.empty()) {
      w.text(cx, fy + 20, "lab3", col.lab3, fitted(kFooterFont, col.lab3, band.width * kPx), TextAnchor::kMiddle);
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return std::move(out);
}

std::optional<ImageFormat> parse_image_format(std::string_view text) {
  auto is = [&](std::string_view name) {
    return std::equal(text.begin(), text.end(), name.begin(), name.end(),
                      [](char a, char b) { return std::tolower(static_cast<unsigned char>(a)) == b; });
  };
  if (is("svg")) return ImageFormat::kSvg;
  if (is("png")) return ImageFormat::kPng;
  return std::nullopt;
}

std::string_view file_extension(ImageFormat format) { return format == ImageFormat::kSvg ? "svg" : "png"; }
std::string_view mime_type(ImageFormat format) {
  return format == ImageFormat::kSvg ? "image/svg+xml" : "image/png";
}

}  // namespace micromap
