#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "micromap/glyphs.hpp"
#include "micromap/layout.hpp"
#include "oracles.hpp"

using namespace micromap;

namespace {

const GroupPartition& code_order_partition() {
  static const GroupPartition p = [] {
    std::vector<RegionId> order(RegionId::all().begin(), RegionId::all().end());
    return perceptual_groups(order);
  }();
  return p;
}

const Rect kPanel{300, 120, 150, 72};

std::size_t count(const GlyphPanelGeometry& g, Shape shape, MarkRole role) {
  return static_cast<std::size_t>(std::count_if(g.primitives.begin(), g.primitives.end(), [&](const Primitive& p) {
    return p.shape == shape && p.role == role;
  }));
}

RegionValues constant_values(double v) {
  RegionValues out;
  out.fill(v);
  return out;
}

void expect_box(const BoxStats& got, const oracle::Box& want, double tol) {
  EXPECT_NEAR(got.low_whisker, want.low_whisker, tol);
  EXPECT_NEAR(got.q1, want.q1, tol);
  EXPECT_NEAR(got.median, want.median, tol);
  EXPECT_NEAR(got.q3, want.q3, tol);
  EXPECT_NEAR(got.high_whisker, want.high_whisker, tol);
  ASSERT_EQ(got.outliers.size(), want.outliers.size());
  auto sorted = got.outliers;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) EXPECT_NEAR(sorted[i], want.outliers[i], tol);
}

// Calls f on every non-decreasing sequence of length n over {0..9}.
template <class F>
void for_each_multiset(std::size_t n, F&& f) {
  std::vector<double> s(n, 0);
  std::vector<int> idx(n, 0);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) s[i] = idx[i];
    f(s);
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == 9) --k;
    if (k == 0) return;
    const int v = idx[k - 1] + 1;
    for (std::size_t i = k - 1; i < n; ++i) idx[i] = v;
  }
}

}  // namespace

TEST(FiveNumber, Examples) {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const auto s = five_number_summary(a);
  EXPECT_DOUBLE_EQ(s.q1, 2);
  EXPECT_DOUBLE_EQ(s.median, 3);
  EXPECT_DOUBLE_EQ(s.q3, 4);
  EXPECT_DOUBLE_EQ(s.low_whisker, 1);
  EXPECT_DOUBLE_EQ(s.high_whisker, 5);
  EXPECT_TRUE(s.outliers.empty());

  const std::vector<double> flat{5, 5, 5, 5, 5};
  const auto f = five_number_summary(flat);
  for (const double v : {f.low_whisker, f.q1, f.median, f.q3, f.high_whisker}) EXPECT_DOUBLE_EQ(v, 5);
  EXPECT_TRUE(f.outliers.empty());

  const std::vector<double> out{1, 2, 3, 4, 100};
  const auto o = five_number_summary(out);
  EXPECT_EQ(o.outliers, std::vector<double>{100});
  EXPECT_DOUBLE_EQ(o.high_whisker, 4);

  const std::vector<double> shuffled{100, 3, 1, 4, 2};
  const auto sh = five_number_summary(shuffled);
  EXPECT_DOUBLE_EQ(sh.median, 3);
  EXPECT_EQ(sh.outliers, std::vector<double>{100});
}

TEST(FiveNumber, RejectsShortOrNonFinite) {
  const std::vector<double> four{1, 2, 3, 4};
  EXPECT_THROW(five_number_summary(four), std::invalid_argument);
  const std::vector<double> nan{1, 2, 3, 4, std::nan("")};
  EXPECT_THROW(five_number_summary(nan), std::invalid_argument);
}

TEST(FiveNumber, ExhaustiveSmallMultisets) {
  std::size_t checked = 0;
  for (std::size_t n = 5; n <= 8; ++n) {
    for_each_multiset(n, [&](const std::vector<double>& s) {
      // Present the values out of order to exercise the sort.
      std::vector<double> rotated(s.rbegin(), s.rend());
      std::rotate(rotated.begin(), rotated.begin() + static_cast<long>(n / 2), rotated.end());
      const auto got = five_number_summary(rotated);
      expect_box(got, oracle::five_numbers(s), 1e-12);
      ASSERT_LE(got.low_whisker, got.q1);
      ASSERT_LE(got.q1, got.median);
      ASSERT_LE(got.median, got.q3);
      ASSERT_LE(got.q3, got.high_whisker);
      const double iqr = got.q3 - got.q1;
      for (const double o : got.outliers) ASSERT_TRUE(o < got.q1 - 1.5 * iqr || o > got.q3 + 1.5 * iqr);
      ++checked;
    });
  }
  EXPECT_EQ(checked, 2002u + 5005u + 11440u + 24310u);
}

TEST(DotPanel, RefLineAndCircles) {
  const auto group = group_view(code_order_partition(), 0);
  const LinearScale scale{-31.75, 6.75, kPanel.x + 4, kPanel.right() - 4};
  RegionValues v = constant_values(-3.0);
  const auto g = build_dot_panel(group, kPanel, scale, v, 0.0);
  EXPECT_EQ(count(g, Shape::kCircle, MarkRole::kMark), 5u);
  ASSERT_EQ(count(g, Shape::kLine, MarkRole::kReference), 1u);
  const auto& ref = g.primitives.front();
  EXPECT_TRUE(ref.dashed);
  EXPECT_EQ(ref.stroke, ColorRole::kRef);
  EXPECT_DOUBLE_EQ(ref.points[0].x, scale(0.0));
  EXPECT_DOUBLE_EQ(ref.points[0].x, ref.points[1].x);
  EXPECT_NEAR(ref.points[1].y - ref.points[0].y, kPanel.h, 1.0 + 1e-9);
  // Equal values share an x coordinate.
  std::set<double> xs;
  for (const auto& p : g.primitives) {
    if (p.shape == Shape::kCircle) xs.insert(p.points[0].x);
  }
  EXPECT_EQ(xs.size(), 1u);
  EXPECT_TRUE(clip_check(g));
}

TEST(DotPanel, MissingValueDropsCircle) {
  const auto group = group_view(code_order_partition(), 0);
  RegionValues v = constant_values(1.0);
  v[group.members[2].region.index()] = std::nullopt;
  const auto g = build_dot_panel(group, kPanel, {0, 2, kPanel.x + 4, kPanel.right() - 4}, v);
  EXPECT_EQ(count(g, Shape::kCircle, MarkRole::kMark), 4u);
  ASSERT_EQ(g.warnings.size(), 1u);
  EXPECT_EQ(g.warnings[0].code, codes::kMissingValue);
}

TEST(DotPanel, SlotRolesFollowRank) {
  const auto group = group_view(code_order_partition(), 3);
  const auto g = build_dot_panel(group, kPanel, {0, 2, kPanel.x + 4, kPanel.right() - 4}, constant_values(1.0));
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(g.primitives[i].fill, slot_role(i));
    EXPECT_EQ(g.primitives[i].region, group.members[i].region);
  }
  const auto median = group_view(code_order_partition(), 5);
  const auto m = build_dot_panel(median, kPanel, {0, 2, kPanel.x + 4, kPanel.right() - 4}, constant_values(1.0));
  ASSERT_EQ(m.primitives.size(), 1u);
  EXPECT_EQ(m.primitives[0].fill, ColorRole::kMedian);
}

TEST(ArrowPanel, DirectionAndZeroLength) {
  const auto group = group_view(code_order_partition(), 1);
  const LinearScale scale{-10, 10, kPanel.x + 4, kPanel.right() - 4};
  RegionValues tails = constant_values(0);
  RegionValues heads = constant_values(0);
  const double deltas[] = {5, -5, 0, 9, -9};
  for (std::size_t i = 0; i < 5; ++i) heads[group.members[i].region.index()] = deltas[i];
  const auto g = build_arrow_panel(group, kPanel, scale, tails, heads);
  EXPECT_EQ(count(g, Shape::kLine, MarkRole::kMark), 4u);
  EXPECT_EQ(count(g, Shape::kPolygon, MarkRole::kMark), 4u);
  EXPECT_EQ(count(g, Shape::kCircle, MarkRole::kMark), 1u);
  ASSERT_EQ(g.warnings.size(), 1u);
  EXPECT_EQ(g.warnings[0].code, codes::kZeroLengthArrow);
  for (const auto& p : g.primitives) {
    if (p.shape != Shape::kPolygon) continue;
    const auto i = static_cast<std::size_t>(
        std::find_if(group.members.begin(), group.members.end(),
                     [&](const RankedRegion& m) { return m.region == *p.region; }) -
        group.members.begin());
    // The tip points away from the tail.
    const double tip = p.points[0].x;
    const double base = p.points[1].x;
    EXPECT_EQ(tip > base, deltas[i] > 0);
    EXPECT_DOUBLE_EQ(tip, scale(deltas[i]));
  }
  EXPECT_TRUE(clip_check(g));
}

TEST(TsPanel, PolylinesPerRegion) {
  PerRegion<std::vector<SeriesPoint>> series;
  for (const auto id : RegionId::all()) {
    for (int q = 0; q < 9; ++q) series[id.index()].push_back({2020 + 0.25 * q, id.code() == "AZ" ? 3.0 : q * 1.0});
  }
  const TimeSeriesCube cube("TSd", series);
  const LinearScale x{2019.9, 2022.1, kPanel.x + 15, kPanel.right() - 4};
  const LinearScale y{-1, 9, 1, 0};
  const auto group = group_view(code_order_partition(), 0);  // AK AL AR AZ CA
  const auto g = build_ts_panel(group, kPanel, cube, x, y, std::string("% Change"));
  EXPECT_EQ(count(g, Shape::kPolyline, MarkRole::kMark), 5u);
  for (const auto& p : g.primitives) {
    if (p.shape == Shape::kPolyline) {
      EXPECT_EQ(p.points.size(), 9u);
      if (p.region->code() == "AZ") {
        for (const auto& pt : p.points) EXPECT_DOUBLE_EQ(pt.y, p.points[0].y);
      }
    }
  }
  ASSERT_EQ(count(g, Shape::kText, MarkRole::kLabel), 1u);
  const auto label = std::find_if(g.primitives.begin(), g.primitives.end(),
                                  [](const Primitive& p) { return p.shape == Shape::kText; });
  EXPECT_EQ(label->text, "% Change");
  EXPECT_TRUE(label->vertical);
  EXPECT_TRUE(clip_check(g));

  const auto median = build_ts_panel(group_view(code_order_partition(), 5), kPanel, cube, x, y);
  ASSERT_EQ(count(median, Shape::kPolyline, MarkRole::kMark), 1u);
  EXPECT_EQ(median.primitives[0].stroke, ColorRole::kMedian);
}

TEST(ScatDotPanel, BackgroundAndHighlights) {
  RegionValues xs;
  RegionValues ys;
  for (const auto id : RegionId::all()) {
    xs[id.index()] = static_cast<double>(id.index());
    ys[id.index()] = static_cast<double>(id.index() % 7);
  }
  const LinearScale x{-3, 53, kPanel.x + 15, kPanel.right() - 4};
  const LinearScale y{-1, 7, 1, 0};
  for (const std::size_t gi : {std::size_t{2}, std::size_t{5}}) {
    const auto group = group_view(code_order_partition(), gi);
    const auto g = build_scatdot_panel(group, kPanel, xs, ys, x, y, std::string("MSA"));
    EXPECT_EQ(count(g, Shape::kCircle, MarkRole::kBackground), 51u);
    EXPECT_EQ(count(g, Shape::kCircle, MarkRole::kMark), gi == 5 ? 1u : 5u);
    std::set<std::pair<double, double>> background;
    for (const auto& p : g.primitives) {
      if (p.role == MarkRole::kBackground) {
        EXPECT_EQ(p.fill, ColorRole::kBase);
        background.insert({p.points[0].x, p.points[0].y});
      }
    }
    for (const auto& p : g.primitives) {
      if (p.role == MarkRole::kMark) {
        EXPECT_TRUE(background.contains({p.points[0].x, p.points[0].y}));
        if (gi == 5) EXPECT_EQ(p.fill, ColorRole::kMedian);
      }
    }
    EXPECT_TRUE(clip_check(g));
  }
  // Constant x works through the degenerate scale rule.
  RegionValues flat;
  flat.fill(4.0);
  const std::vector<double> fv(51, 4.0);
  const auto xs_scale = column_scale(fv, std::nullopt, kPanel.x + 4, kPanel.right() - 4);
  const auto g = build_scatdot_panel(group_view(code_order_partition(), 0), kPanel, flat, ys, xs_scale, y);
  EXPECT_TRUE(clip_check(g));
}

TEST(BoxPanel, BoxesOutliersAndRefLine) {
  PerRegion<std::optional<BoxStats>> stats;
  const std::vector<double> plain{1, 2, 3, 4, 5};
  const std::vector<double> spread{1, 2, 3, 4, 100};
  for (const auto id : RegionId::all()) {
    stats[id.index()] = five_number_summary(id.index() % 2 ? spread : plain);
  }
  const LinearScale scale{-5, 105, kPanel.x + 4, kPanel.right() - 4};
  const auto group = group_view(code_order_partition(), 0);  // indices 0..4
  const auto g = build_box_panel(group, kPanel, stats, scale, 50.0);
  EXPECT_EQ(count(g, Shape::kRect, MarkRole::kMark), 5u);
  EXPECT_EQ(count(g, Shape::kCircle, MarkRole::kMark), 2u);  // regions 1 and 3 carry the outlier
  EXPECT_EQ(count(g, Shape::kLine, MarkRole::kReference), 1u);
  EXPECT_TRUE(clip_check(g));

  const auto median = build_box_panel(group_view(code_order_partition(), 5), kPanel, stats, scale);
  EXPECT_EQ(count(median, Shape::kRect, MarkRole::kMark), 1u);
  for (const auto& p : median.primitives) {
    if (p.role == MarkRole::kMark) EXPECT_TRUE(p.fill == ColorRole::kMedian || p.stroke == ColorRole::kMedian);
  }
}

TEST(GlyphPanels, ClipCheckOnRandomData) {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(-1000, 1000);
  std::uniform_real_distribution<double> panel_w(60, 300);
  std::uniform_real_distribution<double> panel_h(8, 90);
  const auto& partition = code_order_partition();
  for (int trial = 0; trial < 200; ++trial) {
    const Rect panel{50, 40, panel_w(gen), panel_h(gen)};
    RegionValues a;
    RegionValues b;
    std::vector<double> all;
    for (const auto id : RegionId::all()) {
      a[id.index()] = u(gen);
      b[id.index()] = u(gen);
      all.push_back(*a[id.index()]);
      all.push_back(*b[id.index()]);
    }
    const std::optional<double> ref = trial % 2 ? std::optional<double>(u(gen)) : std::nullopt;
    const auto [x0, x1] = plot_x_range(panel, true);
    const auto scale = column_scale(all, ref, x0, x1);
    const auto y_scale = column_scale(all, std::nullopt, 1, 0);
    const auto gi = static_cast<std::size_t>(trial % 11);
    const auto group = group_view(partition, gi);
    EXPECT_TRUE(clip_check(build_dot_panel(group, panel, scale, a, ref)));
    EXPECT_TRUE(clip_check(build_arrow_panel(group, panel, scale, a, b, ref)));
    EXPECT_TRUE(clip_check(build_scatdot_panel(group, panel, a, b, scale, y_scale, std::string("label"))));
    PerRegion<std::optional<BoxStats>> stats;
    for (const auto id : RegionId::all()) {
      std::vector<double> sample;
      for (int k = 0; k < 7; ++k) sample.push_back(all[(id.index() * 7 + static_cast<std::size_t>(k)) % all.size()]);
      stats[id.index()] = five_number_summary(sample);
    }
    EXPECT_TRUE(clip_check(build_box_panel(group, panel, stats, scale, ref)));
    const auto ticks = nice_ticks(scale, 5);
    GlyphPanelGeometry deco{panel, panel_decorations(panel, scale, ticks), {}};
    EXPECT_TRUE(clip_check(deco));
  }
}
