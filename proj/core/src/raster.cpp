// PNG output for the SVG subset written by render_svg: rect, circle, line,
// polyline, polygon and text (optionally rotated -90). Drawing is delegated to
// OpenCV's anti-aliased primitives and Hershey fonts.

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include <charconv>
#include <cmath>
#include <map>
#include <string>

#include "micromap/report.hpp"
#include "micromap/svg.hpp"

namespace micromap {
namespace {

constexpr int kShift = 8;  // sub-pixel bits for OpenCV drawing
constexpr double kSubpixel = 1 << kShift;
constexpr int kMaxDpi = 1200;

struct Element {
  std::string name;
  std::map<std::string, std::string, std::less<>> attrs;
  std::string text;

  std::string_view attr(std::string_view key) const {
    const auto it = attrs.find(key);
    return it == attrs.end() ? std::string_view{} : std::string_view(it->second);
  }
  double number(std::string_view key, double fallback = 0) const {
    const auto v = attr(key);
    double out = fallback;
    if (!v.empty()) std::from_chars(v.data(), v.data() + v.size(), out);
    return out;
  }
};

[[noreturn]] void bad_svg(const std::string& what) { throw SpecError(codes::kBadValue, "svg: " + what, "svg"); }

std::string unescape(std::string_view s) {
  static constexpr std::pair<std::string_view, char> kEntities[] = {
      {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&apos;", '\''}};
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    bool matched = false;
    if (s[i] == '&') {
      for (const auto& [entity, c] : kEntities) {
        if (s.substr(i).starts_with(entity)) {
          out += c;
          i += entity.size();
          matched = true;
          break;
        }
      }
    }
    if (!matched) out += s[i++];
  }
  return out;
}

// Flat list of elements in document order; nesting is irrelevant to drawing.
std::vector<Element> read_elements(std::string_view svg) {
  std::vector<Element> out;
  std::size_t pos = 0;
  while ((pos = svg.find('<', pos)) != std::string_view::npos) {
    if (svg.substr(pos).starts_with("<?") || svg.substr(pos).starts_with("<!")) {
      pos = svg.find('>', pos);
      if (pos == std::string_view::npos) bad_svg("unterminated declaration");
      continue;
    }
    if (svg.substr(pos).starts_with("</")) {
      pos = svg.find('>', pos);
      if (pos == std::string_view::npos) bad_svg("unterminated end tag");
      continue;
    }
    ++pos;
    Element e;
    while (pos < svg.size() && !std::isspace(static_cast<unsigned char>(svg[pos])) && svg[pos] != '>' &&
           svg[pos] != '/') {
      e.name += svg[pos++];
    }
    bool self_closing = false;
    for (;;) {
      while (pos < svg.size() && std::isspace(static_cast<unsigned char>(svg[pos]))) ++pos;
      if (pos >= svg.size()) bad_svg("unterminated tag");
      if (svg[pos] == '/') {
        self_closing = true;
        ++pos;
        continue;
      }
      if (svg[pos] == '>') {
        ++pos;
        break;
      }
      const auto eq = svg.find('=', pos);
      if (eq == std::string_view::npos || eq + 1 >= svg.size() || svg[eq + 1] != '"') bad_svg("bad attribute");
      const auto close = svg.find('"', eq + 2);
      if (close == std::string_view::npos) bad_svg("unterminated attribute");
      e.attrs.emplace(std::string(svg.substr(pos, eq - pos)), unescape(svg.substr(eq + 2, close - eq - 2)));
      pos = close + 1;
    }
    if (!self_closing && e.name == "text") {
      const auto end = svg.find("</text>", pos);
      if (end == std::string_view::npos) bad_svg("unterminated text");
      e.text = unescape(svg.substr(pos, end - pos));
      pos = end + 7;
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::optional<cv::Scalar> parse_color(std::string_view hex) {
  if (!is_hex_color(hex)) return std::nullopt;
  auto channel = [&](std::size_t i) {
    int v = 0;
    std::from_chars(hex.data() + i, hex.data() + i + 2, v, 16);
    return v;
  };
  return cv::Scalar(channel(5), channel(3), channel(1), 255);  // BGRA
}

std::vector<cv::Point> parse_points(std::string_view text, double k) {
  std::vector<cv::Point> pts;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto sep = text.find(' ', pos);
    const auto pair = text.substr(pos, sep == std::string_view::npos ? text.size() - pos : sep - pos);
    const auto comma = pair.find(',');
    if (comma != std::string_view::npos) {
      double x = 0;
      double y = 0;
      std::from_chars(pair.data(), pair.data() + comma, x);
      std::from_chars(pair.data() + comma + 1, pair.data() + pair.size(), y);
      pts.emplace_back(static_cast<int>(std::lround(x * k * kSubpixel)),
                       static_cast<int>(std::lround(y * k * kSubpixel)));
    }
    if (sep == std::string_view::npos) break;
    pos = sep + 1;
  }
  return pts;
}

cv::Point sub(double x, double y, double k) {
  return {static_cast<int>(std::lround(x * k * kSubpixel)), static_cast<int>(std::lround(y * k * kSubpixel))};
}

int thickness(double width, double k) { return std::max(1, static_cast<int>(std::lround(width * k))); }

class Canvas {
 public:
  Canvas(int w, int h, double k) : image_(h, w, CV_8UC4, cv::Scalar(0, 0, 0, 0)), k_(k) {}

  cv::Mat& image() { return image_; }

  void draw(const Element& e) {
    const auto fill = parse_color(e.attr("fill"));
    const auto stroke = parse_color(e.attr("stroke"));
    const int sw = thickness(e.number("stroke-width", 1), k_);
    if (e.name == "rect") {
      const double x = e.number("x");
      const double y = e.number("y");
      const double w = e.number("width");
      const double h = e.number("height");
      const std::vector<cv::Point> pts{sub(x, y, k_), sub(x + w, y, k_), sub(x + w, y + h, k_), sub(x, y + h, k_)};
      polygon(pts, fill, stroke, sw);
    } else if (e.name == "circle") {
      const auto c = sub(e.number("cx"), e.number("cy"), k_);
      const int r = static_cast<int>(std::lround(e.number("r") * k_ * kSubpixel));
      if (fill) cv::circle(image_, c, r, *fill, cv::FILLED, cv::LINE_AA, kShift);
      if (stroke) cv::circle(image_, c, r, *stroke, sw, cv::LINE_AA, kShift);
    } else if (e.name == "line" && stroke) {
      line(e, *stroke, sw);
    } else if (e.name == "polyline" && stroke) {
      const auto pts = parse_points(e.attr("points"), k_);
      cv::polylines(image_, pts, false, *stroke, sw, cv::LINE_AA, kShift);
    } else if (e.name == "polygon") {
      polygon(parse_points(e.attr("points"), k_), fill, stroke, sw);
    } else if (e.name == "text" && fill) {
      text(e, *fill);
    }
  }

 private:
  void polygon(const std::vector<cv::Point>& pts, const std::optional<cv::Scalar>& fill,
               const std::optional<cv::Scalar>& stroke, int sw) {
    if (pts.size() < 2) return;
    if (fill) cv::fillPoly(image_, std::vector<std::vector<cv::Point>>{pts}, *fill, cv::LINE_AA, kShift);
    if (stroke) cv::polylines(image_, pts, true, *stroke, sw, cv::LINE_AA, kShift);
  }

  void line(const Element& e, const cv::Scalar& color, int sw) {
    const double x1 = e.number("x1");
    const double y1 = e.number("y1");
    const double x2 = e.number("x2");
    const double y2 = e.number("y2");
    const auto dash = e.attr("stroke-dasharray");
    if (dash.empty()) {
      cv::line(image_, sub(x1, y1, k_), sub(x2, y2, k_), color, sw, cv::LINE_AA, kShift);
      return;
    }
    double on = kDashOn;
    double off = kDashOff;
    if (const auto comma = dash.find(','); comma != std::string_view::npos) {
      std::from_chars(dash.data(), dash.data() + comma, on);
      std::from_chars(dash.data() + comma + 1, dash.data() + dash.size(), off);
    }
    const double len = std::hypot(x2 - x1, y2 - y1);
    if (len <= 0 || on <= 0) return;
    const double ux = (x2 - x1) / len;
    const double uy = (y2 - y1) / len;
    for (double t = 0; t < len; t += on + off) {
      const double e2 = std::min(len, t + on);
      cv::line(image_, sub(x1 + ux * t, y1 + uy * t, k_), sub(x1 + ux * e2, y1 + uy * e2, k_), color, sw,
               cv::LINE_AA, kShift);
    }
  }

  // Text is drawn into a coverage mask, optionally rotated, then blended.
  void text(const Element& e, const cv::Scalar& color) {
    if (e.text.empty()) return;
    const double size_px = e.number("font-size", 10) * k_;
    const double scale = 0.72 * size_px / 22.0;  // Hershey simplex cap height is ~22 units
    const int weight = std::max(1, static_cast<int>(std::lround(scale * 1.4)));
    int baseline = 0;
    const auto extent = cv::getTextSize(e.text, cv::FONT_HERSHEY_SIMPLEX, scale, weight, &baseline);
    const int pad = weight + 2;
    cv::Mat mask(extent.height + baseline + 2 * pad, extent.width + 2 * pad, CV_8UC1, cv::Scalar(0));
    cv::putText(mask, e.text, {pad, pad + extent.height}, cv::FONT_HERSHEY_SIMPLEX, scale, cv::Scalar(255), weight,
                cv::LINE_AA);

    const auto anchor = e.attr("text-anchor");
    const double before = anchor == "middle" ? extent.width / 2.0 : anchor == "end" ? extent.width : 0.0;
    const double ax = e.number("x") * k_;
    const double ay = e.number("y") * k_;
    int left = 0;
    int top = 0;
    if (e.attr("transform").starts_with("rotate(-90")) {
      cv::Mat rotated;
      cv::rotate(mask, rotated, cv::ROTATE_90_COUNTERCLOCKWISE);
      // Baseline start (pad, pad + h) lands at (pad + h, cols - 1 - pad) after rotation.
      left = static_cast<int>(std::lround(ax)) - (pad + extent.height);
      top = static_cast<int>(std::lround(ay + before)) - (mask.cols - 1 - pad);
      blend(rotated, left, top, color);
    } else {
      left = static_cast<int>(std::lround(ax - before)) - pad;
      top = static_cast<int>(std::lround(ay)) - (pad + extent.height);
      blend(mask, left, top, color);
    }
  }

  void blend(const cv::Mat& mask, int left, int top, const cv::Scalar& color) {
    for (int y = 0; y < mask.rows; ++y) {
      const int cy = top + y;
      if (cy < 0 || cy >= image_.rows) continue;
      const auto* m = mask.ptr<std::uint8_t>(y);
      auto* px = image_.ptr<cv::Vec4b>(cy);
      for (int x = 0; x < mask.cols; ++x) {
        const int cx = left + x;
        if (cx < 0 || cx >= image_.cols || m[x] == 0) continue;
        const int a = m[x];
        for (int ch = 0; ch < 3; ++ch) {
          px[cx][ch] = static_cast<std::uint8_t>((color[ch] * a + px[cx][ch] * (255 - a) + 127) / 255);
        }
        px[cx][3] = static_cast<std::uint8_t>(std::min(255, px[cx][3] + a));
      }
    }
  }

  cv::Mat image_;
  double k_;
};

}  // namespace

std::vector<std::uint8_t> rasterize(std::string_view svg, int dpi, std::string_view format) {
  const auto fmt = parse_image_format(format);
  if (!fmt || *fmt != ImageFormat::kPng) {
    throw SpecError(codes::kUnsupportedFormat, "unsupported raster format '" + std::string(format) + "'", "format");
  }
  if (dpi < 1 || dpi > kMaxDpi) throw SpecError(codes::kBadValue, "dpi must be in [1, 1200]", "dpi");

  const auto elements = read_elements(svg);
  if (elements.empty() || elements.front().name != "svg") bad_svg("missing <svg> root");
  const double k = dpi / layout::kPixelsPerInch;
  const double width_px = elements.front().number("width");
  const double height_px = elements.front().number("height");
  if (!(width_px > 0) || !(height_px > 0)) bad_svg("missing page size");
  // Page inches times dpi, rounded to whole pixels.
  const int w = static_cast<int>(std::lround(width_px / layout::kPixelsPerInch * dpi));
  const int h = static_cast<int>(std::lround(height_px / layout::kPixelsPerInch * dpi));

  Canvas canvas(w, h, k);
  for (std::size_t i = 1; i < elements.size(); ++i) canvas.draw(elements[i]);

  std::vector<std::uint8_t> png;
  if (!cv::imencode(".png", canvas.image(), png, {cv::IMWRITE_PNG_COMPRESSION, 6})) {
    throw SpecError(codes::kBadValue, "png encoding failed", "format");
  }
  return png;
}

}  // namespace micromap
