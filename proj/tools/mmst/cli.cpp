#include "mmst/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "micromap/demo.hpp"
#include "micromap/render.hpp"
#include "micromap/service.hpp"
#include "micromap/spec_io.hpp"
#include "micromap/svg.hpp"

namespace mmst {
namespace {

namespace fs = std::filesystem;
using namespace micromap;

// Raised for missing or unwritable files; maps to exit 2.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

struct Inputs {
  std::string spec_path;
  std::string data_path;
  std::vector<std::string> ts_args;
  std::optional<std::string> region_column;
  std::string profile = "app";
};

void add_input_options(CLI::App& cmd, Inputs& in) {
  cmd.add_option("--spec", in.spec_path, "Panel spec JSON")->required();
  cmd.add_option("--data", in.data_path, "Region table CSV")->required();
  cmd.add_option("--ts", in.ts_args, "Time-series CSV as NAME=PATH or PATH (repeatable)");
  cmd.add_option("--region-column", in.region_column, "Region column in the table (default: auto-detect)");
  cmd.add_option("--profile", in.profile, "Column limit profile")->check(CLI::IsMember({"app", "library"}));
}

struct Loaded {
  std::optional<PanelSpec> spec;
  std::optional<RegionTable> table;
  CubeSet cubes;
  ValidationReport report;
  RenderOptions options;
};

Loaded load(const Inputs& in) {
  Loaded l;
  l.options.profile = in.profile == "library" ? Profile::kLibrary : Profile::kApp;

  auto spec = parse_panel_spec(read_file(in.spec_path));
  l.report.merge(spec.report);
  l.spec = std::move(spec.value);

  auto table = ingest_region_table(read_file(in.data_path), in.region_column, fs::path(in.data_path).stem().string());
  l.report.merge(table.report);
  l.table = std::move(table.value);

  for (const auto& arg : in.ts_args) {
    std::string name;
    std::string path = arg;
    if (const auto eq = arg.find('='); eq != std::string::npos && !fs::exists(arg)) {
      name = arg.substr(0, eq);
      path = arg.substr(eq + 1);
    }
    const bool named = !name.empty();
    auto cube = ingest_time_series(read_file(path), named ? name : fs::path(path).stem().string());
    l.report.merge(cube.report);
    if (!cube) continue;
    const std::string key = named ? name : cube.value->name();
    l.cubes.insert_or_assign(key, std::move(*cube.value));
  }
  return l;
}

void print_report(const ValidationReport& report, std::ostream& err) {
  for (const auto& d : report.errors) err << diagnostic_line(d) << '\n';
  for (const auto& d : report.warnings) err << diagnostic_line(d) << '\n';
}

int run_validate(const Inputs& in, std::ostream& out, std::ostream& err) {
  auto l = load(in);
  if (l.spec && l.table) l.report.merge(validate(*l.spec, *l.table, l.cubes, {l.options.profile, l.options.page}));
  print_report(l.report, err);
  fmt::print(out, "{} errors\n", l.report.errors.size());
  if (!l.report.warnings.empty()) fmt::print(out, "{} warnings\n", l.report.warnings.size());
  return l.report.ok() ? kOk : kValidationFailed;
}

int run_render(const Inputs& in, const std::string& out_path, std::optional<std::string> format_text, int dpi,
               std::ostream& err) {
  if (!format_text) {
    const auto ext = fs::path(out_path).extension().string();
    format_text = ext.empty() ? std::string("svg") : ext.substr(1);
  }
  const auto format = parse_image_format(*format_text);
  if (!format) {
    err << diagnostic_line({codes::kUnsupportedFormat, "unsupported format \"" + *format_text + "\"", "--format"})
        << '\n';
    return kUsageOrIo;
  }

  auto l = load(in);
  if (!l.report.ok()) {
    print_report(l.report, err);
    return kValidationFailed;
  }
  auto doc = render_micromap(*l.spec, *l.table, l.cubes, l.options);
  l.report.merge(doc.report);
  print_report(l.report, err);
  if (!doc) return kValidationFailed;

  if (*format == ImageFormat::kPng) {
    std::vector<std::uint8_t> png;
    try {
      png = rasterize(doc.value->svg, dpi, "png");
    } catch (const SpecError& e) {
      print_report(e.report(), err);
      return kUsageOrIo;
    }
    write_file(out_path, std::string_view(reinterpret_cast<const char*>(png.data()), png.size()));
  } else {
    write_file(out_path, doc.value->svg);
  }
  return kOk;
}

int run_demo(const std::string& name, const fs::path& dir, std::ostream& out, std::ostream& err) {
  const auto demo = make_demo(name);
  if (!demo) {
    fmt::print(err, "unknown demo \"{}\"; choose one of: {}\n", name, fmt::join(demo_names(), ", "));
    return kUsageOrIo;
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string());

  auto table = ingest_region_table(demo->table_csv, {}, demo->spec.dataset);
  CubeSet cubes;
  if (!demo->ts_csv.empty()) {
    auto cube = ingest_time_series(demo->ts_csv, demo->ts_name);
    cubes.insert_or_assign(demo->ts_name, std::move(*cube.value));
  }
  auto doc = render_micromap(demo->spec, *table.value, cubes);
  if (!doc) {
    print_report(doc.report, err);
    return kValidationFailed;
  }

  std::vector<fs::path> written{dir / (name + ".spec.json"), dir / (name + ".csv")};
  write_file(written[0], serialize_panel_spec(demo->spec));
  write_file(written[1], demo->table_csv);
  if (!demo->ts_csv.empty()) {
    written.push_back(dir / (name + "_ts.csv"));
    write_file(written.back(), demo->ts_csv);
  }
  written.push_back(dir / (name + ".svg"));
  write_file(written.back(), doc.value->svg);
  for (const auto& p : written) out << p.string() << '\n';
  return kOk;
}

std::atomic<Service*> g_running{nullptr};

extern "C" void on_signal(int) {
  if (auto* s = g_running.load()) s->stop();
}

int run_serve(const std::string& addr_text, const std::string& data_dir, const std::optional<std::string>& static_dir,
              std::ostream& out, std::ostream& err) {
  const auto addr = parse_listen_address(addr_text);
  if (!addr) {
    fmt::print(err, "bad listen address \"{}\"\n", addr_text);
    return kUsageOrIo;
  }
  ServiceOptions options;
  options.data_dir = data_dir;
  if (static_dir) options.static_dir = *static_dir;
  Service service(options);
  const int port = service.bind(*addr);
  if (port < 0) {
    fmt::print(err, "cannot bind {}:{}\n", addr->host, addr->port);
    return kUsageOrIo;
  }
  fmt::print(out, "listening on http://{}:{}\n", addr->host, port);
  out.flush();
  g_running = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  service.listen();
  g_running = nullptr;
  return kOk;
}

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v != nullptr && *v != '\0' ? std::string(v) : fallback;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linked micromaps for the US states and DC", "mmst"};
  app.require_subcommand(1);

  Inputs render_in;
  std::string out_path;
  std::optional<std::string> format;
  int dpi = 96;
  auto* render = app.add_subcommand("render", "Render a panel spec to SVG or PNG");
  add_input_options(*render, render_in);
  render->add_option("--out", out_path, "Output file")->required();
  render->add_option("--format", format, "svg or png (default: from --out extension)");
  render->add_option("--dpi", dpi, "Raster resolution for png")->check(CLI::Range(1, 1200));

  Inputs validate_in;
  auto* validate_cmd = app.add_subcommand("validate", "Check a panel spec against its data");
  add_input_options(*validate_cmd, validate_in);

  std::string demo_name;
  std::string demo_dir = ".";
  auto* demo = app.add_subcommand("demo", "Write a worked example: spec, data and SVG");
  demo->add_option("name", demo_name, "qcew or oews")->required();
  demo->add_option("--out", demo_dir, "Output directory");

  std::string addr = env_or("MMST_ADDR", "127.0.0.1:8787");
  std::string data_dir = env_or("MMST_DATA_DIR", "data");
  std::optional<std::string> static_dir;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--addr", addr, "host:port (env MMST_ADDR)");
  serve->add_option("--data-dir", data_dir, "Dataset directory (env MMST_DATA_DIR)");
  serve->add_option("--static", static_dir, "Directory of UI assets to serve at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageOrIo;
  }

  try {
    if (*render) return run_render(render_in, out_path, format, dpi, err);
    if (*validate_cmd) return run_validate(validate_in, out, err);
    if (*demo) return run_demo(demo_name, demo_dir, out, err);
    if (*serve) return run_serve(addr, data_dir, static_dir, out, err);
  } catch (const IoError& e) {
    err << "mmst: " << e.what() << '\n';
    return kUsageOrIo;
  } catch (const fs::filesystem_error& e) {
    err << "mmst: " << e.what() << '\n';
    return kUsageOrIo;
  }
  return kUsageOrIo;
}

}  // namespace mmst
