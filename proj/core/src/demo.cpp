#include "micromap/demo.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace micromap {
namespace {

constexpr std::uint32_t kSeed = 20240927;

// Portable uniform draw; std::uniform_real_distribution is not specified
// bit-for-bit across standard libraries.
class Draw {
 public:
  explicit Draw(std::uint32_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(gen_()) / 4294967296.0); }

 private:
  std::mt19937 gen_;
};

double round_to(double v, int decimals) {
  const double k = std::pow(10.0, decimals);
  return std::round(v * k) / k;
}

// ---------------------------------------------------------------------------
// QCEW: over-the-year percent change in leisure & hospitality employment,
// quarterly 2020 Q1 .. 2022 Q1 (X1..X9). All values synthetic.

struct QuarterRange {
  double lo;
  double hi;
};

constexpr std::array<QuarterRange, 9> kQuarterRanges{{
    {-4.0, 5.0},    // 2020 Q1
    {-52.0, -25.0}, // 2020 Q2
    {-36.0, -14.0}, // 2020 Q3
    {-31.0, -11.0}, // 2020 Q4
    {-28.0, -9.0},  // 2021 Q1
    {18.0, 72.0},   // 2021 Q2
    {5.0, 32.0},    // 2021 Q3
    {4.0, 26.0},    // 2021 Q4
    {6.0, 34.0},    // 2022 Q1
}};

PerRegion<std::array<double, 9>> qcew_values() {
  Draw draw(kSeed);
  PerRegion<std::array<double, 9>> out{};
  for (const auto id : RegionId::all()) {
    for (std::size_t q = 0; q < 9; ++q) {
      out[id.index()][q] = round_to(draw.uniform(kQuarterRanges[q].lo, kQuarterRanges[q].hi), 1);
    }
  }
  // DC shows the largest change over the period; Arizona swings hardest.
  auto& dc = out[RegionId::parse("DC").index()];
  dc[8] = 41.3;
  dc[1] = -55.8;
  auto& az = out[RegionId::parse("AZ").index()];
  az[1] = -54.2;
  az[5] = 78.4;
  return out;
}

DemoBundle qcew() {
  DemoBundle b;
  b.name = "qcew";
  b.spec.dataset = "temprates";
  b.spec.title1 = "Effects of COVID: QCEW % Change in One-Year Employment";
  b.spec.title2 = "Leisure & Hospitality 2020 Q1 to 2022 Q1";
  b.spec.shading = ShadingMode::kMapTail;
  b.spec.sort = {"X1", SortDirection::kDescending};

  GlyphColumnSpec ts;
  ts.kind = GlyphKind::kTimeSeries;
  ts.lab1 = "Over-the-Year Change";
  ts.lab2 = "2020 to 2022";
  ts.lab3 = "Year.Quarter";
  ts.lab4 = "% Change";
  ts.panel_data = "TSd";

  GlyphColumnSpec dot;
  dot.kind = GlyphKind::kDot;
  dot.lab1 = "Over-the-Year Change";
  dot.lab2 = "2020 Q1";
  dot.lab3 = "% Change";
  dot.col1 = "X1";
  dot.refval = 0.0;

  GlyphColumnSpec arrow;
  arrow.kind = GlyphKind::kArrow;
  arrow.lab1 = "Over-the-year Change";
  arrow.lab2 = "2020 to 2022";
  arrow.lab3 = "Percentage Point Change";
  arrow.col1 = "X1";
  arrow.col2 = "X9";

  b.spec.columns = {ts, dot, arrow};

  const auto values = qcew_values();
  b.table_csv =
      "# Synthetic demo data (deterministic, seed 20240927): QCEW-style over-the-year percent change\n"
      "# in leisure & hospitality employment, X1 = 2020 Q1 .. X9 = 2022 Q1. Not BLS published values.\n"
      "state,X1,X2,X3,X4,X5,X6,X7,X8,X9\n";
  b.ts_name = "TSd";
  b.ts_csv =
      "# name: TSd\n"
      "# Synthetic demo data: the X1..X9 columns of qcew.csv in long form, x = year + (quarter - 1) / 4.\n"
      "region,x,y\n";
  for (const auto id : RegionId::all()) {
    b.table_csv += std::string(id.code());
    for (std::size_t q = 0; q < 9; ++q) {
      b.table_csv += fmt::format(",{:.1f}", values[id.index()][q]);
      b.ts_csv += fmt::format("{},{:.2f},{:.1f}\n", id.code(), 2020.0 + 0.25 * static_cast<double>(q),
                              values[id.index()][q]);
    }
    b.table_csv += "\n";
  }
  return b;
}

// ---------------------------------------------------------------------------
// OEWS: police and sheriff's patrol officers, 2023. The first 18 rows are the
// published values; the rest are synthetic within the same observed ranges.

struct OewsRow {
  std::string_view state;
  double tot_emp, emp_err, jobs_1000, lq, h_mean, a_mean, mean_err, p10, p25, p50, p75, p90;
};

constexpr std::array<OewsRow, 18> kPublished{{
    {"AK", 1280, 4.4, 4.11, 0.96, 45.51, 94660, 2.2, 27.88, 36.8, 43.3, 52.98, 64.3},
    {"AL", 12770, 1.8, 6.22, 1.46, 25.13, 52270, 0.6, 16.7, 19.62, 24.53, 30.42, 33.5},
    {"AR", 5270, 2.9, 4.15, 0.97, 22.54, 46880, 0.8, 15.99, 18.27, 21.3, 25.94, 33.78},
    {"AZ", 12580, 0.8, 4.02, 0.94, 36.73, 76390, 0.4, 26.89, 31.51, 36.76, 41.98, 44.65},
    {"CA", 68010, 0.6, 3.79, 0.89, 53.74, 111770, 0.6, 34.31, 43.74, 54.55, 64.84, 69.06},
    {"CO", 9950, 1.2, 3.51, 0.83, 41.75, 86840, 0.6, 29.84, 36.29, 42.5, 48.81, 50.89},
    {"CT", 6660, 1.2, 4.01, 0.94, 39.04, 81190, 0.4, 28.66, 33.54, 41.03, 44.69, 48.79},
    {"DC", 5010, 0, 7.14, 1.68, 39.82, 82820, 0, 28.94, 34.18, 38.48, 44.55, 52.64},
    {"DE", 1730, 2.3, 3.69, 0.87, 39.51, 82180, 0.6, 28.62, 31.99, 39.62, 46.88, 49.88},
    {"FL", 48030, 0.6, 5.02, 1.18, 37.73, 78480, 0.5, 22.67, 25.71, 32.81, 43.31, 53.46},
    {"GA", 23370, 5.4, 4.91, 1.15, 27.02, 56200, 1.6, 19.28, 22.68, 25.83, 30.69, 36.57},
    {"HI", 2380, 0, 3.86, 0.91, 43.2, 89850, 1.4, 35.5, 41.41, 42.42, 42.7, 53.51},
    {"IA", 4920, 1.7, 3.18, 0.75, 33.91, 70530, 0.6, 24.3, 29.63, 33.3, 38.93, 43.69},
    {"ID", 2980, 4.5, 3.62, 0.85, 31.81, 66170, 1.5, 23.23, 24.93, 30.34, 36.71, 43.05},
    {"IL", 30550, 2.5, 5.08, 1.19, 42.13, 87630, 0.8, 25, 34.27, 47.32, 49.29, 52.69},
    {"IN", 12430, 1.8, 3.94, 0.93, 32.5, 67590, 0.5, 24.24, 28.29, 31.89, 37.46, 40.07},
    {"KS", 5840, 2.7, 4.14, 0.97, 27.38, 56950, 0.8, 19, 22.32, 25.56, 30.89, 40.03},
    {"KY", 7180, 5.4, 3.66, 0.86, 24.78, 51540, 1.9, 17.14, 20.04, 24.27, 28.57, 33.41},
}};

OewsRow synthesize(std::string_view state, Draw& draw) {
  OewsRow r{};
  r.state = state;
  r.h_mean = round_to(draw.uniform(22.54, 53.74), 2);
  r.a_mean = std::round(r.h_mean * 2080.0 / 10.0) * 10.0;
  r.tot_emp = std::round(draw.uniform(1280, 68010) / 10.0) * 10.0;
  r.emp_err = round_to(draw.uniform(0, 5.4), 1);
  r.jobs_1000 = round_to(draw.uniform(3.18, 7.14), 2);
  r.lq = round_to(std::clamp(r.jobs_1000 / 4.25, 0.75, 1.68), 2);
  r.mean_err = round_to(draw.uniform(0, 2.2), 1);
  // Percentiles as fractions of the mean, clamped to the published ranges.
  r.p10 = round_to(std::clamp(r.h_mean * draw.uniform(0.62, 0.78), 15.99, 35.5), 2);
  r.p25 = round_to(std::clamp(r.h_mean * draw.uniform(0.78, 0.90), 18.27, 43.74), 2);
  r.p50 = round_to(std::clamp(r.h_mean * draw.uniform(0.94, 1.04), 21.3, 54.55), 2);
  r.p75 = round_to(std::clamp(r.h_mean * draw.uniform(1.08, 1.20), 25.94, 64.84), 2);
  r.p90 = round_to(std::clamp(r.h_mean * draw.uniform(1.22, 1.40), 33.41, 69.06), 2);
  r.p25 = std::max(r.p25, r.p10);
  r.p50 = std::max(r.p50, r.p25);
  r.p75 = std::max(r.p75, r.p50);
  r.p90 = std::max(r.p90, r.p75);
  return r;
}

DemoBundle oews() {
  DemoBundle b;
  b.name = "oews";
  b.spec.dataset = "PolData";
  b.spec.title1 = "Police & Sheriff Patrol Officers";
  b.spec.title2 = "Occupational Employment & Wage Statistics 2023";
  b.spec.shading = ShadingMode::kMapTail;
  b.spec.sort = {"StMean", SortDirection::kDescending};

  GlyphColumnSpec msa;
  msa.kind = GlyphKind::kArrow;
  msa.lab1 = "Hourly Wage";
  msa.lab2 = "Range-MSA";
  msa.lab3 = "Dollars";
  msa.col1 = "Mmin";
  msa.col2 = "Mmax";

  GlyphColumnSpec bos = msa;
  bos.lab2 = "Range-BOS";
  bos.col1 = "Bmin";
  bos.col2 = "Bmax";

  GlyphColumnSpec scatter;
  scatter.kind = GlyphKind::kScatDot;
  scatter.lab1 = "Hourly Wage";
  scatter.lab2 = "MSA vs. BOS";
  scatter.lab3 = "BOS";
  scatter.lab4 = "MSA";
  scatter.col1 = "Bmean";
  scatter.col2 = "Mmean";

  b.spec.columns = {msa, bos, scatter};

  Draw draw(kSeed + 1);
  b.table_csv =
      "# Police & sheriff's patrol officers, OEWS 2023. Rows AK..KY in the state-level columns are\n"
      "# published values; all other rows and the Mmin..Bmean columns are synthetic (seed 20240928).\n"
      "state,TOT_EMP,EMP_PCT_ERR,JOBS_1000,LQ,StMean,A_MEAN,MEAN_PCT_ERR,H_PCT10,H_PCT25,H_MEDIAN,H_PCT75,"
      "H_PCT90,Mmin,Mmax,Mmean,Bmin,Bmax,Bmean\n";
  for (const auto id : RegionId::all()) {
    const auto* published = std::find_if(kPublished.begin(), kPublished.end(),
                                         [&](const OewsRow& r) { return r.state == id.code(); });
    const OewsRow r = published != kPublished.end() ? *published : synthesize(id.code(), draw);
    const double mmean = round_to(r.h_mean * draw.uniform(1.00, 1.06), 2);
    const double bmean = round_to(r.h_mean * draw.uniform(0.80, 0.95), 2);
    const double mmin = round_to(mmean - draw.uniform(6, 12), 2);
    const double mmax = round_to(mmean + draw.uniform(6, 16), 2);
    const double bmin = round_to(bmean - draw.uniform(4, 9), 2);
    const double bmax = round_to(bmean + draw.uniform(3, 10), 2);
    b.table_csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{:.2f},{:.2f},{:.2f},{:.2f},{:.2f},{:.2f}\n",
                               id.code(), r.tot_emp, r.emp_err, r.jobs_1000, r.lq, r.h_mean, r.a_mean, r.mean_err,
                               r.p10, r.p25, r.p50, r.p75, r.p90, mmin, mmax, mmean, bmin, bmax, bmean);
  }
  return b;
}

}  // namespace

std::vector<std::string> demo_names() { return {"oews", "qcew"}; }

std::optional<DemoBundle> make_demo(std::string_view name) {
  if (name == "qcew") return qcew();
  if (name == "oews") return oews();
  return std::nullopt;
}

}  // namespace micromap
