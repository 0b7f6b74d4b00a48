#include "micromap/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace micromap {

std::vector<RegionId> sort_regions(const RegionTable& table, const SortSpec& sort) {
  const auto& values = table.column(sort.column).values;
  std::vector<RegionId> order(RegionId::all().begin(), RegionId::all().end());
  const bool descending = sort.direction == SortDirection::kDescending;
  std::stable_sort(order.begin(), order.end(), [&](RegionId a, RegionId b) {
    const auto& va = values[a.index()];
    const auto& vb = values[b.index()];
    if (!va || !vb) return va.has_value() && !vb.has_value();
    return descending ? *va > *vb : *va < *vb;
  });
  return order;
}

GroupPartition perceptual_groups(std::span<const RegionId> order) {
  if (order.size() != kRegionCount) {
    throw std::invalid_argument("perceptual grouping needs 51 regions, got " + std::to_string(order.size()));
  }
  GroupPartition partition;
  std::size_t rank = 0;
  for (const auto size : kGroupSizes) {
    auto& group = partition.groups.emplace_back();
    for (std::size_t i = 0; i < size; ++i, ++rank) group.push_back({rank + 1, order[rank]});
  }
  partition.median_index = kMedianGroup;
  return partition;
}

LinearScale column_scale(std::span<const double> values, std::optional<double> refval, double range_min,
                         double range_max) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const double v : values) {
    if (!std::isfinite(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!std::isfinite(lo)) throw SpecError(codes::kNoFiniteValues, "scale needs at least one finite value");
  if (refval && std::isfinite(*refval)) {
    lo = std::min(lo, *refval);
    hi = std::max(hi, *refval);
  }
  if (lo == hi) {
    const double pad = std::max(1.0, std::abs(lo) * layout::kScalePad);
    return {lo - pad, hi + pad, range_min, range_max};
  }
  const double pad = (hi - lo) * layout::kScalePad;
  return {lo - pad, hi + pad, range_min, range_max};
}

namespace {

struct TickStep {
  double mantissa;
  int exponent;

  double value() const { return mantissa * std::pow(10.0, exponent); }
  // i * step computed without accumulating error.
  double at(long long i) const {
    const double scaled = static_cast<double>(i) * mantissa;
    return exponent >= 0 ? scaled * std::pow(10.0, exponent) : scaled / std::pow(10.0, -exponent);
  }
};

struct TickRange {
  long long first = 0;
  long long last = -1;
  long long count() const { return last - first + 1; }
};

TickRange tick_range(const TickStep& step, double lo, double hi) {
  const double s = step.value();
  const double tol = 1e-9;
  return {static_cast<long long>(std::ceil(lo / s - tol)), static_cast<long long>(std::floor(hi / s + tol))};
}

}  // namespace

std::vector<double> nice_ticks(const LinearScale& scale, int max_ticks) {
  max_ticks = std::max(max_ticks, 2);
  const double lo = scale.domain_min;
  const double hi = scale.domain_max;
  const double span = hi - lo;
  if (!(span > 0) || !std::isfinite(span)) return {lo, hi};

  constexpr std::array kMantissas{1.0, 2.0, 2.5, 5.0};
  const int top = static_cast<int>(std::floor(std::log10(span))) + 1;
  const int bottom = static_cast<int>(std::floor(std::log10(span / max_ticks))) - 1;

  std::optional<TickStep> best;
  std::optional<TickStep> fallback;  // fewest ticks >= 2, if no step fits
  long long fallback_count = std::numeric_limits<long long>::max();
  for (int e = bottom; e <= top && !best; ++e) {
    for (const double m : kMantissas) {
      const TickStep step{m, e};
      const auto n = tick_range(step, lo, hi).count();
      if (n >= 2 && n <= max_ticks) {
        best = step;
        break;
      }
      if (n >= 2 && n < fallback_count) {
        fallback = step;
        fallback_count = n;
      }
    }
  }
  const auto step = best ? best : fallback;
  if (!step) return {lo, hi};

  const auto range = tick_range(*step, lo, hi);
  std::vector<double> ticks;
  for (auto i = range.first; i <= range.last; ++i) {
    double t = step->at(i);
    if (t == 0) t = 0;  // no negative zero
    ticks.push_back(std::clamp(t, lo, hi));
  }
  return ticks;
}

bool glyph_columns_fit(std::size_t glyph_columns, const PageSize& page) {
  if (glyph_columns == 0) return layout::kMapColumnWidth + layout::kIdColumnWidth <= page.width_in + 1e-9;
  const double remaining = page.width_in - layout::kMapColumnWidth - layout::kIdColumnWidth;
  return remaining / static_cast<double>(glyph_columns) >= layout::kMinGlyphColumnWidth - 1e-9;
}

PageLayout layout_page(const PanelSpec& spec, const PageSize& page) {
  using namespace layout;
  const auto k = spec.columns.size();
  if (!glyph_columns_fit(k, page)) {
    throw SpecError(codes::kWidthExceeded,
                    std::to_string(k) + " glyph columns need at least " +
                        std::to_string(kMinGlyphColumnWidth * static_cast<double>(k)) + " in",
                    "columns");
  }

  PageLayout out;
  out.page_width = page.width_in;
  out.page_height = page.height_in;
  out.title_lines = static_cast<std::size_t>(!spec.title1.empty()) + static_cast<std::size_t>(!spec.title2.empty());

  const double title_h = kTitleLineHeight * static_cast<double>(out.title_lines);
  out.title_band = {0, 0, page.width_in, title_h};
  out.header_band = {0, title_h, page.width_in, kHeaderBandHeight};
  out.footer_band = {0, page.height_in - kFooterBandHeight, page.width_in, kFooterBandHeight};

  const double glyph_w =
      k == 0 ? 0.0 : (page.width_in - kMapColumnWidth - kIdColumnWidth) / static_cast<double>(k);
  const double grid_w = kMapColumnWidth + kIdColumnWidth + glyph_w * static_cast<double>(k);
  double x = (page.width_in - grid_w) / 2;
  out.columns.push_back({ColumnRole::kMap, x, kMapColumnWidth});
  x += kMapColumnWidth;
  out.columns.push_back({ColumnRole::kId, x, kIdColumnWidth});
  x += kIdColumnWidth;
  for (std::size_t i = 0; i < k; ++i, x += glyph_w) out.columns.push_back({ColumnRole::kGlyph, x, glyph_w});

  const double grid_top = out.header_band.bottom();
  const double grid_h = out.footer_band.y - grid_top;
  const double gaps = kRowGap * static_cast<double>(kGroupCount - 1);
  const double row_h = (grid_h - gaps) / (static_cast<double>(kGroupCount - 1) + kMedianRowRatio);
  if (!(row_h > 0)) throw SpecError(codes::kWidthExceeded, "page too short for the panel grid", "page");
  double y = grid_top;
  for (std::size_t g = 0; g < kGroupCount; ++g) {
    const bool median = g == kMedianGroup;
    const double h = median ? row_h * kMedianRowRatio : row_h;
    out.rows.push_back({y, h, median});
    y += h + kRowGap;
  }
  // Absorb rounding so the last row never reaches into the footer.
  auto& last = out.rows.back();
  last.height = std::min(last.height, out.footer_band.y - last.y);
  return out;
}

Rect PageLayout::panel(std::size_t row, std::size_t column) const {
  const auto& c = columns.at(column);
  const auto& r = rows.at(row);
  return {c.x + layout::kPanelInset, r.y, c.width - 2 * layout::kPanelInset, r.height};
}

std::vector<double> PageLayout::column_widths() const {
  std::vector<double> out;
  for (const auto& c : columns) out.push_back(c.width);
  return out;
}

}  // namespace micromap
