#include "micromap/service.hpp"

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <httplib.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "micromap/render.hpp"
#include "micromap/spec_io.hpp"
#include "micromap/svg.hpp"

namespace micromap {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(DatasetKind kind) { return kind == DatasetKind::kTable ? "table" : "timeseries"; }

std::optional<DatasetKind> parse_dataset_kind(std::string_view text) {
  if (text == "table") return DatasetKind::kTable;
  if (text == "timeseries") return DatasetKind::kTimeSeries;
  return std::nullopt;
}

namespace {

json entry_json(const DatasetEntry& e) {
  return {{"id", e.id},
          {"name", e.name},
          {"column_names", e.column_names},
          {"kind", to_string(e.kind)},
          {"uploaded_at", e.uploaded_at}};
}

std::string now_utc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(t));
}

std::string new_id() {
  static std::mutex m;
  static std::mt19937_64 gen{std::random_device{}()};
  std::lock_guard lock(m);
  return fmt::format("ds-{:016x}", gen());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write to a sibling temp file and rename over the target.
void write_atomically(const fs::path& path, std::string_view content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string unique_name(std::string base, const auto& taken) {
  if (!taken(base)) return base;
  for (int i = 2;; ++i) {
    auto candidate = fmt::format("{}-{}", base, i);
    if (!taken(candidate)) return candidate;
  }
}

}  // namespace

struct DatasetRegistry::Record {
  DatasetEntry entry;
  std::optional<std::string> region_column;
  std::shared_ptr<const RegionTable> table;
  std::shared_ptr<const TimeSeriesCube> cube;
};

struct DatasetRegistry::State {
  std::vector<Record> records;  // sorted by name

  const Record* find(std::string_view id_or_name) const {
    for (const auto& r : records) {
      if (r.entry.id == id_or_name) return &r;
    }
    for (const auto& r : records) {
      if (r.entry.name == id_or_name) return &r;
    }
    return nullptr;
  }
};

namespace {

struct Ingested {
  std::vector<std::string> columns;
  std::shared_ptr<const RegionTable> table;
  std::shared_ptr<const TimeSeriesCube> cube;
  std::string suggested_name;
};

Outcome<Ingested> ingest(std::string_view csv, DatasetKind kind, const std::string& name,
                         const std::optional<std::string>& region_column) {
  Outcome<Ingested> out;
  Ingested in;
  if (kind == DatasetKind::kTable) {
    auto t = ingest_region_table(csv, region_column, name);
    out.report = std::move(t.report);
    if (!t) return out;
    in.columns = t.value->column_names();
    in.table = std::make_shared<const RegionTable>(std::move(*t.value));
    in.suggested_name = name;
  } else {
    auto c = ingest_time_series(csv, name);
    out.report = std::move(c.report);
    if (!c) return out;
    in.columns = {"region", "x", "y"};
    in.suggested_name = c.value->name();
    in.cube = std::make_shared<const TimeSeriesCube>(std::move(*c.value));
  }
  out.value = std::move(in);
  return out;
}

}  // namespace

DatasetRegistry::DatasetRegistry(fs::path dir) : dir_(std::move(dir)) {
  auto state = std::make_shared<State>();
  const auto index = dir_ / "index.json";
  if (fs::exists(index)) {
    const auto doc = json::parse(read_file(index));
    for (const auto& item : doc) {
      Record r;
      r.entry.id = item.at("id").get<std::string>();
      r.entry.name = item.at("name").get<std::string>();
      r.entry.uploaded_at = item.at("uploaded_at").get<std::string>();
      r.entry.kind = parse_dataset_kind(item.at("kind").get<std::string>()).value_or(DatasetKind::kTable);
      if (item.contains("region_column") && !item["region_column"].is_null()) {
        r.region_column = item["region_column"].get<std::string>();
      }
      const auto path = dir_ / (r.entry.id + ".csv");
      if (!fs::exists(path)) continue;
      auto in = ingest(read_file(path), r.entry.kind, r.entry.name, r.region_column);
      if (!in) continue;
      r.entry.column_names = in.value->columns;
      r.table = in.value->table;
      r.cube = in.value->cube;
      state->records.push_back(std::move(r));
    }
    std::sort(state->records.begin(), state->records.end(),
              [](const Record& a, const Record& b) { return a.entry.name < b.entry.name; });
  }
  state_ = std::move(state);
}

std::shared_ptr<const DatasetRegistry::State> DatasetRegistry::snapshot() const {
  std::lock_guard lock(state_mutex_);
  return state_;
}

std::vector<DatasetEntry> DatasetRegistry::list() const {
  const auto state = snapshot();
  std::vector<DatasetEntry> out;
  for (const auto& r : state->records) out.push_back(r.entry);
  return out;
}

std::optional<DatasetEntry> DatasetRegistry::find(std::string_view id_or_name) const {
  const auto state = snapshot();
  if (const auto* r = state->find(id_or_name)) return r->entry;
  return std::nullopt;
}

void DatasetRegistry::persist_index(const State& state) const {
  json doc = json::array();
  for (const auto& r : state.records) {
    auto item = entry_json(r.entry);
    item["region_column"] = r.region_column ? json(*r.region_column) : json(nullptr);
    doc.push_back(std::move(item));
  }
  write_atomically(dir_ / "index.json", doc.dump(2) + "\n");
}

Outcome<DatasetEntry> DatasetRegistry::add(std::string_view csv, DatasetKind kind, std::string name,
                                           std::optional<std::string> region_column) {
  Outcome<DatasetEntry> out;
  auto in = ingest(csv, kind, name, region_column);
  out.report = std::move(in.report);
  if (!in) return out;

  std::lock_guard writer(write_mutex_);
  const auto current = snapshot();
  auto next = std::make_shared<State>(*current);

  Record r;
  r.entry.id = new_id();
  std::string base = in.value->suggested_name.empty() ? std::string("dataset") : in.value->suggested_name;
  r.entry.name = unique_name(base, [&](const std::string& n) {
    return std::any_of(current->records.begin(), current->records.end(),
                       [&](const Record& x) { return x.entry.name == n; });
  });
  r.entry.kind = kind;
  r.entry.column_names = in.value->columns;
  r.entry.uploaded_at = now_utc();
  r.region_column = std::move(region_column);
  r.table = in.value->table;
  r.cube = in.value->cube;
  next->records.push_back(r);
  std::sort(next->records.begin(), next->records.end(),
            [](const Record& a, const Record& b) { return a.entry.name < b.entry.name; });

  const auto csv_path = dir_ / (r.entry.id + ".csv");
  try {
    fs::create_directories(dir_);
    write_atomically(csv_path, csv);
    persist_index(*next);
  } catch (const std::exception& e) {
    std::error_code ignored;
    fs::remove(csv_path, ignored);
    out.report.error(codes::kBadValue, std::string("could not persist dataset: ") + e.what(), "registry");
    return out;
  }

  {
    std::lock_guard lock(state_mutex_);
    state_ = std::move(next);
  }
  out.value = std::move(r.entry);
  return out;
}

Outcome<ResolvedInputs> DatasetRegistry::resolve(const PanelSpec& spec) const {
  Outcome<ResolvedInputs> out;
  const auto state = snapshot();
  const auto* table = state->find(spec.dataset);
  if (table == nullptr || !table->table) {
    out.report.error(codes::kUnknownDataset, "no table dataset named \"" + spec.dataset + "\"", "dataset");
    return out;
  }
  ResolvedInputs inputs;
  inputs.table = table->table;
  for (const auto& col : spec.columns) {
    if (!col.panel_data) continue;
    const auto* r = state->find(*col.panel_data);
    if (r != nullptr && r->cube) inputs.cubes.insert_or_assign(*col.panel_data, *r->cube);
  }
  out.value = std::move(inputs);
  return out;
}

std::optional<ListenAddress> parse_listen_address(std::string_view text) {
  ListenAddress addr;
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos) {
    if (!text.empty()) addr.host = std::string(text);
    return addr;
  }
  if (colon > 0) addr.host = std::string(text.substr(0, colon));
  const auto port = text.substr(colon + 1);
  int value = -1;
  const auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (ec != std::errc() || ptr != port.data() + port.size() || value < 0 || value > 65535) return std::nullopt;
  addr.port = value;
  return addr;
}

// ---------------------------------------------------------------------------

namespace {

constexpr const char* kJson = "application/json";

void reply_report(httplib::Response& res, const ValidationReport& report, int status = 422) {
  res.status = status;
  res.set_content(report_json(report).dump(), kJson);
}

ValidationReport single(std::string code, std::string message, std::string location) {
  ValidationReport r;
  r.error(std::move(code), std::move(message), std::move(location));
  return r;
}

std::string sanitize_filename(std::string name) {
  std::erase_if(name, [](char c) {
    return c == '/' || c == '\\' || c == '"' || static_cast<unsigned char>(c) < 0x20;
  });
  while (!name.empty() && name.front() == '.') name.erase(0, 1);
  return name.empty() ? std::string("micromap") : name;
}

std::string stem_of(const std::string& filename) {
  return filename.empty() ? std::string() : fs::path(filename).stem().string();
}

}  // namespace

struct Service::Impl {
  explicit Impl(ServiceOptions opts) : options(std::move(opts)), registry(options.data_dir) { routes(); }

  // Parses and renders; the outcome's report carries every failure.
  Outcome<std::string> render(std::string_view spec_text) const {
    Outcome<std::string> out;
    auto parsed = parse_panel_spec(spec_text);
    out.report = parsed.report;
    if (!parsed) return out;
    auto inputs = registry.resolve(*parsed.value);
    out.report.merge(inputs.report);
    if (!inputs) return out;
    auto doc = render_micromap(*parsed.value, *inputs.value->table, inputs.value->cubes);
    out.report = doc.report;
    if (!doc) return out;
    out.value = std::move(doc.value->svg);
    return out;
  }

  void routes() {
    server.set_payload_max_length(options.max_body_bytes);
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Expose-Headers", "Content-Disposition"}});
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get("/api/datasets", [this](const httplib::Request&, httplib::Response& res) {
      json out = json::array();
      for (const auto& e : registry.list()) out.push_back(entry_json(e));
      res.set_content(out.dump(), kJson);
    });

    server.Post("/api/datasets", [this](const httplib::Request& req, httplib::Response& res) {
      if (!req.is_multipart_form_data() || !req.has_file("file")) {
        reply_report(res, single(codes::kFieldRequired, "multipart field \"file\" is required", "file"));
        return;
      }
      const auto file = req.get_file_value("file");
      const auto kind_text = req.has_file("kind") ? req.get_file_value("kind").content : std::string("table");
      const auto kind = parse_dataset_kind(kind_text);
      if (!kind) {
        reply_report(res, single(codes::kBadValue, "kind must be table or timeseries", "kind"));
        return;
      }
      std::string name = req.has_file("name") ? req.get_file_value("name").content : std::string();
      if (name.empty()) name = stem_of(file.filename);
      std::optional<std::string> region_column;
      if (req.has_file("region_column") && !req.get_file_value("region_column").content.empty()) {
        region_column = req.get_file_value("region_column").content;
      }
      auto added = registry.add(file.content, *kind, name, region_column);
      if (!added) {
        reply_report(res, added.report);
        return;
      }
      auto body = entry_json(*added.value);
      body["warnings"] = report_json(added.report)["warnings"];
      res.status = 201;
      res.set_content(body.dump(), kJson);
    });

    server.Post("/api/render", [this](const httplib::Request& req, httplib::Response& res) {
      auto out = render(req.body);
      if (!out) {
        reply_report(res, out.report);
        return;
      }
      res.set_content(*out.value, std::string(mime_type(ImageFormat::kSvg)));
    });

    server.Post("/api/export", [this](const httplib::Request& req, httplib::Response& res) {
      json body;
      try {
        body = json::parse(req.body);
      } catch (const json::exception& e) {
        reply_report(res, single(codes::kParseError, e.what(), "body"));
        return;
      }
      if (!body.is_object() || !body.contains("spec")) {
        reply_report(res, single(codes::kFieldRequired, "spec is required", "spec"));
        return;
      }
      const auto format_text = body.value("format", std::string("svg"));
      const auto format = parse_image_format(format_text);
      if (!format) {
        reply_report(res, single(codes::kUnsupportedFormat, "unsupported format \"" + format_text + "\"", "format"));
        return;
      }
      const auto& dpi_field = body.contains("dpi") ? body["dpi"] : json(96);
      if (!dpi_field.is_number_integer()) {
        reply_report(res, single(codes::kBadValue, "dpi must be an integer", "dpi"));
        return;
      }
      const int dpi = dpi_field.get<int>();
      auto out = render(body["spec"].dump());
      if (!out) {
        reply_report(res, out.report);
        return;
      }
      auto filename = sanitize_filename(body.value("filename", std::string("micromap")));
      const auto ext = std::string(".") + std::string(file_extension(*format));
      if (!filename.ends_with(ext)) filename += ext;
      try {
        if (*format == ImageFormat::kPng) {
          const auto bytes = rasterize(*out.value, dpi, "png");
          res.set_content(std::string(bytes.begin(), bytes.end()), std::string(mime_type(*format)));
        } else {
          res.set_content(*out.value, std::string(mime_type(*format)));
        }
      } catch (const SpecError& e) {
        reply_report(res, e.report());
        return;
      }
      res.set_header("Content-Disposition", "attachment; filename=\"" + filename + "\"");
    });

    if (options.static_dir) server.set_mount_point("/", options.static_dir->string());
  }

  ServiceOptions options;
  DatasetRegistry registry;
  httplib::Server server;
};

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}
Service::~Service() { stop(); }

int Service::bind(const ListenAddress& address) {
  if (address.port == 0) return impl_->server.bind_to_any_port(address.host);
  return impl_->server.bind_to_port(address.host, address.port) ? address.port : -1;
}

bool Service::listen() { return impl_->server.listen_after_bind(); }
void Service::stop() { impl_->server.stop(); }
void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }
DatasetRegistry& Service::registry() { return impl_->registry; }

}  // namespace micromap
