// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "micromap/demo.hpp"
#include "micromap/glyphs.hpp"
#include "micromap/layout.hpp"
#include "micromap/map.hpp"
#include "micromap/render.hpp"
#include "micromap/spec_io.hpp"
#include "oracles.hpp"
#include "service_harness.hpp"
#include "svg_scan.hpp"

namespace fs = std::filesystem;
using namespace micromap;

namespace {

// Collects the first few reasons a criterion failed.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
};

// Parses the spec and CSVs from scratch, as a user-facing render would.
Outcome<RenderedDocument> render_from_text(const DemoBundle& demo) {
  auto spec = parse_panel_spec(serialize_panel_spec(demo.spec));
  auto table = ingest_region_table(demo.table_csv, {}, demo.spec.dataset);
  CubeSet cubes;
  if (!demo.ts_csv.empty()) {
    auto cube = ingest_time_series(demo.ts_csv, demo.ts_name);
    cubes.insert_or_assign(demo.ts_name, std::move(*cube.value));
  }
  return render_micromap(*spec.value, *table.value, cubes);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::map<std::string, std::set<std::string>> panels_by_kind(const svgscan::Document& doc) {
  std::map<std::string, std::set<std::string>> out;
  for (const auto& e : doc.elements) {
    if (!e.panel_id.empty()) out[e.panel_kind].insert(e.panel_id);
  }
  return out;
}

void qcew_fixture(Check& c) {
  const auto demo = *make_demo("qcew");
  const auto t0 = std::chrono::steady_clock::now();
  const auto first = render_from_text(demo);
  const double elapsed = seconds_since(t0);
  c.expect(first.report.ok() && first.value.has_value(), "validation errors");
  if (!first) return;
  const auto second = render_from_text(demo);
  c.expect(second.value && second.value->svg == first.value->svg, "not byte-identical across runs");
  c.expect(elapsed < 2.0, "runtime " + std::to_string(elapsed) + " s");

  const auto& svg = first.value->svg;
  const auto doc = svgscan::parse(svg);
  std::vector<std::string> titles;
  for (const auto& e : doc.elements) {
    if (e.has_class("title")) titles.push_back(e.text);
  }
  c.expect(titles == std::vector<std::string>{demo.spec.title1, demo.spec.title2}, "titles");
  c.expect(demo.spec.title1 == "Effects of COVID: QCEW % Change in One-Year Employment", "title1 text");
  c.expect(demo.spec.title2 == "Leisure & Hospitality 2020 Q1 to 2022 Q1", "title2 text");

  const auto kinds = panels_by_kind(doc);
  c.expect(kinds.count("map") && kinds.at("map").size() == 11, "11 map panels");
  std::map<std::string, int> refs;
  for (const auto& e : doc.elements) {
    if (e.panel_kind == "dot" && e.has_class("ref") && !e.attr("stroke-dasharray").empty()) ++refs[e.panel_id];
  }
  c.expect(kinds.count("dot") && kinds.at("dot").size() == 11, "11 dot panels");
  if (kinds.count("dot")) {
    for (const auto& id : kinds.at("dot")) c.expect(refs[id] == 1, "dashed ref line in " + id);
  }
}

void oews_fixture(Check& c) {
  const auto demo = *make_demo("oews");
  const auto t0 = std::chrono::steady_clock::now();
  const auto doc_out = render_from_text(demo);
  const double elapsed = seconds_since(t0);
  c.expect(doc_out.value.has_value(), "render failed");
  if (!doc_out) return;
  c.expect(elapsed < 2.0, "runtime " + std::to_string(elapsed) + " s");
  const auto doc = svgscan::parse(doc_out.value->svg);
  std::map<std::string, std::pair<int, int>> counts;  // background, highlighted
  std::map<std::string, int> rows;
  for (const auto& e : doc.elements) {
    if (e.panel_kind != "scatdot" || e.tag != "circle") continue;
    rows[e.panel_id] = e.row;
    if (e.has_class("bg")) ++counts[e.panel_id].first;
    if (e.has_class("mark")) ++counts[e.panel_id].second;
  }
  c.expect(counts.size() == 11, "11 scatdot panels");
  for (const auto& [id, n] : counts) {
    const int want = rows[id] == 5 ? 1 : 5;
    c.expect(n.first == 51, id + " background " + std::to_string(n.first));
    c.expect(n.second == want, id + " highlighted " + std::to_string(n.second));
  }
  bool msa = false;
  for (const auto& e : doc.elements) msa |= e.panel_kind == "scatdot" && e.text == "MSA";
  c.expect(msa, "y-axis label MSA");
}

void sort_oracle(Check& c) {
  std::mt19937 gen(20240101);
  for (int trial = 0; trial < 1000; ++trial) {
    const double missing = (trial % 4) * 0.1;
    const int distinct = 1 + trial % 60;
    const auto rows = fixtures::random_column(gen, missing, distinct);
    const auto table = fixtures::table_of(rows);
    const bool desc = trial % 2 == 1;
    const auto got = sort_regions(table, {"v", desc ? SortDirection::kDescending : SortDirection::kAscending});
    const auto want = oracle::sort_codes(rows, desc);
    std::vector<std::string> got_codes;
    for (const auto id : got) got_codes.emplace_back(id.code());
    c.expect(got_codes == want, "trial " + std::to_string(trial));
  }
}

void grouping(Check& c) {
  std::mt19937 gen(77);
  std::vector<RegionId> order(RegionId::all().begin(), RegionId::all().end());
  for (int trial = 0; trial < 100; ++trial) {
    std::shuffle(order.begin(), order.end(), gen);
    const auto p = perceptual_groups(order);
    c.expect(p.groups.size() == 11, "group count");
    std::vector<RegionId> joined;
    std::size_t rank = 1;
    for (std::size_t g = 0; g < p.groups.size(); ++g) {
      c.expect(p.groups[g].size() == static_cast<std::size_t>(oracle::kSizes[g]), "size of group " + std::to_string(g));
      for (const auto& m : p.groups[g]) {
        c.expect(m.rank == rank++, "rank");
        joined.push_back(m.region);
      }
    }
    c.expect(joined == order, "concatenation differs from input");
  }
}

void shading(Check& c) {
  std::mt19937 gen(5);
  std::vector<RegionId> order(RegionId::all().begin(), RegionId::all().end());
  std::shuffle(order.begin(), order.end(), gen);
  const auto p = perceptual_groups(order);
  for (const auto mode : {ShadingMode::kMap, ShadingMode::kMapTail, ShadingMode::kMapCum, ShadingMode::kMapMedian}) {
    for (int g = 0; g < 11; ++g) {
      const auto classes = shaded_sets(mode, static_cast<std::size_t>(g), p);
      // A partition: each region in exactly one class, and the classes are
      // the current group, the tail/band sets and the rest.
      std::map<ShadingClass, int> n;
      for (const auto cl : classes) ++n[cl];
      int total = 0;
      int lit = 0;
      for (const auto& [cl, k] : n) {
        total += k;
        if (highlighted(cl)) lit += k;
      }
      const std::string where = std::string(to_string(mode)) + " group " + std::to_string(g);
      c.expect(total == 51, where + " total");
      c.expect(lit == oracle::kSizes[static_cast<std::size_t>(g)], where + " highlighted");
      for (const auto& m : p.groups[static_cast<std::size_t>(g)]) {
        c.expect(highlighted(classes[m.region.index()]), where + " member not highlighted");
      }
      const int tail = n[ShadingClass::kTail];
      if (mode == ShadingMode::kMapTail) c.expect(tail == oracle::maptail_tail_count(g), where + " tail count");
      if (mode == ShadingMode::kMapCum) c.expect(tail == oracle::mapcum_tail_count(g), where + " tail count");
      if (mode == ShadingMode::kMap || mode == ShadingMode::kMapMedian) c.expect(tail == 0, where + " tail");
    }
  }
  c.expect(oracle::mapcum_tail_count(10) == 45, "closed form for group 10");
  const auto last = shaded_sets(ShadingMode::kMapCum, 10, p);
  c.expect(std::count(last.begin(), last.end(), ShadingClass::kTail) == 45, "mapcum group 10 tail = 45");
}

void boxplot_oracle(Check& c) {
  std::size_t cases = 0;
  for (std::size_t n = 5; n <= 8; ++n) {
    std::vector<int> idx(n, 0);
    while (true) {
      std::vector<double> s(idx.begin(), idx.end());
      std::vector<double> scrambled(s.rbegin(), s.rend());
      const auto got = five_number_summary(scrambled);
      const auto want = oracle::five_numbers(s);
      auto near = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
      bool ok = near(got.low_whisker, want.low_whisker) && near(got.q1, want.q1) && near(got.median, want.median) &&
                near(got.q3, want.q3) && near(got.high_whisker, want.high_whisker) &&
                got.outliers.size() == want.outliers.size();
      if (ok) {
        auto o = got.outliers;
        std::sort(o.begin(), o.end());
        for (std::size_t i = 0; i < o.size(); ++i) ok &= near(o[i], want.outliers[i]);
      }
      c.expect(ok, "sample of size " + std::to_string(n));
      ++cases;
      std::size_t k = n;
      while (k > 0 && idx[k - 1] == 9) --k;
      if (k == 0) break;
      const int v = idx[k - 1] + 1;
      for (std::size_t i = k - 1; i < n; ++i) idx[i] = v;
    }
  }
  c.expect(cases == 42757, "multiset count " + std::to_string(cases));
}

void linking(Check& c) {
  for (const std::string name : {"qcew", "oews"}) {
    for (const bool safe : {false, true}) {
      auto in = fixtures::demo(name);
      in.spec.color_safe = safe;
      const auto out = render_micromap(in.spec, in.table, in.cubes);
      if (!out) {
        c.expect(false, name + " render");
        continue;
      }
      const auto& palette = safe ? color_safe_palette() : default_palette();
      const std::vector<std::string> slots(palette.group_colors.begin(), palette.group_colors.end());
      const auto violations = svgscan::linking_violations(
          svgscan::parse(out.value->svg), fixtures::oracle_groups(in.table, in.spec.sort), slots, palette.median_color);
      const std::string tag = name + (safe ? " color-safe" : " default");
      c.expect(violations.empty(), tag + ": " + (violations.empty() ? "" : violations.front()));
    }
  }
}

// Runs the CLI binary; stderr goes to `err_path`. Returns the exit status.
int run_cli(const std::string& args, const fs::path& err_path) {
  const std::string cmd = std::string("\"") + MMST_BINARY + "\" " + args + " >/dev/null 2>\"" + err_path.string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

std::string inputs_for(const fs::path& dir, const std::string& name) {
  std::string args = "--spec " + q(dir / (name + ".spec.json")) + " --data " + q(dir / (name + ".csv"));
  if (fs::exists(dir / (name + "_ts.csv"))) args += " --ts " + q(dir / (name + "_ts.csv"));
  return args;
}

void determinism(Check& c, const fs::path& dir) {
  const auto err = dir / "stderr.txt";
  for (const std::string name : {"qcew", "oews"}) {
    c.expect(run_cli("demo " + name + " --out " + q(dir), err) == 0, "demo " + name);
    for (const std::string ext : {"svg", "png"}) {
      std::vector<std::string> outputs;
      for (int i = 0; i < 2; ++i) {
        const auto out = dir / (name + "_" + std::to_string(i) + "." + ext);
        const int code = run_cli("render " + inputs_for(dir, name) + " --dpi 96 --out " + q(out), err);
        c.expect(code == 0, name + "." + ext + " exit " + std::to_string(code));
        outputs.push_back(fs::exists(out) ? fixtures::read_file(out) : std::string());
      }
      c.expect(!outputs[0].empty() && outputs[0] == outputs[1], name + "." + ext + " differs between runs");
    }
  }
}

void raster(Check& c, const fs::path& dir) {
  const auto out = dir / "page600.png";
  const int code = run_cli("render " + inputs_for(dir, "qcew") + " --dpi 600 --out " + q(out), dir / "stderr.txt");
  c.expect(code == 0, "render exit " + std::to_string(code));
  if (!fs::exists(out)) return;
  const auto png = fixtures::read_file(out);
  auto be32 = [&](std::size_t at) {
    return (static_cast<unsigned char>(png[at]) << 24) | (static_cast<unsigned char>(png[at + 1]) << 16) |
           (static_cast<unsigned char>(png[at + 2]) << 8) | static_cast<unsigned char>(png[at + 3]);
  };
  c.expect(png.size() > 24 && png.substr(1, 3) == "PNG", "not a PNG");
  if (png.size() > 24) {
    c.expect(be32(16) == 4500 && be32(20) == 6000,
             "size " + std::to_string(be32(16)) + "x" + std::to_string(be32(20)));
  }
}

bool has_code(const nlohmann::json& report, const std::string& code) {
  for (const auto& e : report.at("errors")) {
    if (e.at("code") == code) return true;
  }
  return false;
}

void validation_suite(Check& c, const fs::path& dir) {
  const std::string data = MICROMAP_TEST_DATA;
  const auto err = dir / "stderr.txt";
  struct Case {
    std::string label;
    std::string args;
    std::string code;
  };
  const std::string ts = " --ts " + q(dir / "qcew_ts.csv");
  const std::vector<Case> cases{
      {"missing state", "--spec " + q(dir / "qcew.spec.json") + " --data " + q(data + "/missing_state.csv") + ts,
       codes::kMissingRegion},
      {"unknown sort column", "--spec " + q(data + "/unknown_sort.spec.json") + " --data " + q(dir / "qcew.csv") + ts,
       codes::kUnknownSortColumn},
      {"four columns", "--spec " + q(data + "/four_columns.spec.json") + " --data " + q(dir / "qcew.csv") + ts,
       codes::kColumnLimit},
  };
  for (const auto& k : cases) {
    for (const std::string sub : {"validate", "render"}) {
      const std::string extra = sub == "render" ? " --out " + q(dir / "rejected.svg") : "";
      const int code = run_cli(sub + " " + k.args + extra, err);
      c.expect(code == 1, "CLI " + sub + " " + k.label + " exit " + std::to_string(code));
      c.expect(fixtures::read_file(err).find(k.code) != std::string::npos, "CLI " + sub + " " + k.label + " code");
    }
  }

  const auto data_dir = fixtures::temp_dir("acceptance-http");
  {
    fixtures::RunningService server(data_dir);
    auto client = server.client();
    const auto demo = *make_demo("qcew");
    const auto gap = fixtures::upload(client, fixtures::read_file(data + "/missing_state.csv"), "temprates.csv");
    c.expect(gap && gap->status == 422 && has_code(nlohmann::json::parse(gap->body), codes::kMissingRegion),
             "HTTP missing state");
    const auto t = fixtures::upload(client, demo.table_csv, "temprates.csv");
    const auto s = fixtures::upload(client, demo.ts_csv, "ts.csv", "timeseries");
    c.expect(t && t->status == 201 && s && s->status == 201, "HTTP uploads");
    for (const auto& [file, code] : std::vector<std::pair<std::string, std::string>>{
             {"unknown_sort.spec.json", codes::kUnknownSortColumn}, {"four_columns.spec.json", codes::kColumnLimit}}) {
      const auto res = client.Post("/api/render", fixtures::read_file(data + "/" + file), "application/json");
      c.expect(res && res->status == 422 && has_code(nlohmann::json::parse(res->body), code), "HTTP " + file);
    }
  }
  fs::remove_all(data_dir);
}

}  // namespace

int main() {
  const auto work = fixtures::temp_dir("acceptance");
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"qcew_fixture", qcew_fixture},
      {"oews_fixture", oews_fixture},
      {"sort_oracle", sort_oracle},
      {"grouping_property", grouping},
      {"shading_properties", shading},
      {"boxplot_oracle", boxplot_oracle},
      {"linking_invariant", linking},
      {"determinism", [&](Check& c) { determinism(c, work); }},
      {"raster_arithmetic", [&](Check& c) { raster(c, work); }},
      {"validation_suite", [&](Check& c) { validation_suite(c, work); }},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Check c;
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    if (c.ok()) {
      std::cout << "PASS " << name << '\n';
    } else {
      ++failed;
      std::cout << "FAIL " << name;
      for (const auto& f : c.failures) std::cout << " | " << f;
      std::cout << '\n';
    }
  }
  fs::remove_all(work);
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
