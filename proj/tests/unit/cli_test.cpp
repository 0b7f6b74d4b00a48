#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "micromap/demo.hpp"
#include "micromap/spec_io.hpp"
#include "mmst/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run mmst_run(std::vector<std::string> args) {
  args.insert(args.begin(), "mmst");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = mmst::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fixtures::temp_dir("cli");
    const auto r = mmst_run({"demo", "qcew", "--out", dir_.string()});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::vector<std::string> qcew_inputs(const std::string& spec) const {
    return {"--spec", spec, "--data", path("qcew.csv"), "--ts", path("qcew_ts.csv")};
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, DemoWritesFiles) {
  for (const auto* f : {"qcew.spec.json", "qcew.csv", "qcew_ts.csv", "qcew.svg"}) {
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  }
  const auto r = mmst_run({"demo", "oews", "--out", dir_.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("oews.svg"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "oews_ts.csv"));
  EXPECT_EQ(mmst_run({"demo", "nonesuch", "--out", dir_.string()}).code, 2);
}

TEST_F(CliTest, ValidateClean) {
  auto args = qcew_inputs(path("qcew.spec.json"));
  args.insert(args.begin(), "validate");
  const auto r = mmst_run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0 errors\n");
  EXPECT_TRUE(r.err.empty());
}

TEST_F(CliTest, ValidateReportsEachErrorAsJsonLine) {
  auto spec = micromap::make_demo("qcew")->spec;
  spec.sort.column = "Z9";
  spec.columns[1].col1 = "nope";
  fixtures::write_file(dir_ / "bad.spec.json", micromap::serialize_panel_spec(spec));
  auto args = qcew_inputs(path("bad.spec.json"));
  args.insert(args.begin(), "validate");
  const auto r = mmst_run(args);
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "2 errors\n");
  const auto lines = json_lines(r.err);
  ASSERT_EQ(lines.size(), 2u);
  std::set<std::string> codes;
  for (const auto& l : lines) {
    codes.insert(l.at("code").get<std::string>());
    EXPECT_TRUE(l.contains("message"));
    EXPECT_TRUE(l.contains("location"));
  }
  EXPECT_EQ(codes, (std::set<std::string>{"UNKNOWN_SORT_COLUMN", "UNKNOWN_COLUMN"}));
}

TEST_F(CliTest, RenderSvgMatchesDemoAndIsStable) {
  auto args = qcew_inputs(path("qcew.spec.json"));
  args.insert(args.begin(), "render");
  args.insert(args.end(), {"--out", path("a.svg")});
  ASSERT_EQ(mmst_run(args).code, 0);
  args.back() = path("b.svg");
  ASSERT_EQ(mmst_run(args).code, 0);
  const auto a = fixtures::read_file(dir_ / "a.svg");
  EXPECT_EQ(a, fixtures::read_file(dir_ / "b.svg"));
  EXPECT_EQ(a, fixtures::read_file(dir_ / "qcew.svg"));
}

TEST_F(CliTest, RenderPngByExtensionOrFlag) {
  auto args = qcew_inputs(path("qcew.spec.json"));
  args.insert(args.begin(), "render");
  args.insert(args.end(), {"--out", path("page.png")});
  ASSERT_EQ(mmst_run(args).code, 0);
  const auto png = fixtures::read_file(dir_ / "page.png");
  EXPECT_EQ(png.substr(1, 3), "PNG");

  args.insert(args.end(), {"--format", "gif"});
  const auto gif = mmst_run(args);
  EXPECT_EQ(gif.code, 2);
  EXPECT_NE(gif.err.find("UNSUPPORTED_FORMAT"), std::string::npos);
}

TEST_F(CliTest, RenderExitCodes) {
  auto args = qcew_inputs(MICROMAP_TEST_DATA "/four_columns.spec.json");
  args.insert(args.begin(), "render");
  args.insert(args.end(), {"--out", path("x.svg")});
  const auto limit = mmst_run(args);
  EXPECT_EQ(limit.code, 1);
  EXPECT_NE(limit.err.find("COLUMN_LIMIT"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "x.svg"));

  // The library profile lifts the three-column cap.
  args.insert(args.end(), {"--profile", "library"});
  EXPECT_EQ(mmst_run(args).code, 0);

  const auto missing = mmst_run({"render", "--spec", path("qcew.spec.json"), "--data",
                                 MICROMAP_TEST_DATA "/missing_state.csv", "--ts", path("qcew_ts.csv"), "--out",
                                 path("y.svg")});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("MISSING_REGION"), std::string::npos);

  EXPECT_EQ(mmst_run({"render", "--spec", path("qcew.spec.json"), "--out", path("z.svg")}).code, 2);
  EXPECT_EQ(mmst_run({"render", "--spec", path("nope.json"), "--data", path("qcew.csv"), "--out", path("z.svg")}).code,
            2);
  auto bad_dpi = qcew_inputs(path("qcew.spec.json"));
  bad_dpi.insert(bad_dpi.begin(), "render");
  bad_dpi.insert(bad_dpi.end(), {"--out", path("z.png"), "--dpi", "0"});
  EXPECT_EQ(mmst_run(bad_dpi).code, 2);
  EXPECT_EQ(mmst_run({}).code, 2);
  EXPECT_EQ(mmst_run({"frobnicate"}).code, 2);
}

TEST_F(CliTest, NamedTimeSeriesArgument) {
  auto args = qcew_inputs(path("qcew.spec.json"));
  args[5] = "TSd=" + path("qcew_ts.csv");
  args.insert(args.begin(), "validate");
  EXPECT_EQ(mmst_run(args).code, 0);
  args[6] = "Other=" + path("qcew_ts.csv");
  const auto r = mmst_run(args);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("UNKNOWN_PANEL_DATA"), std::string::npos);
}
