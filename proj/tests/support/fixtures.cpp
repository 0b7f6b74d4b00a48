#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "micromap/demo.hpp"
#include "micromap/spec_io.hpp"

namespace fixtures {

using namespace micromap;

Inputs demo(const std::string& name) {
  const auto bundle = make_demo(name);
  if (!bundle) throw std::invalid_argument("no demo " + name);
  auto table = ingest_region_table(bundle->table_csv, {}, bundle->spec.dataset);
  if (!table) throw std::runtime_error("demo table does not ingest");
  CubeSet cubes;
  if (!bundle->ts_csv.empty()) {
    auto cube = ingest_time_series(bundle->ts_csv, bundle->ts_name);
    if (!cube) throw std::runtime_error("demo series does not ingest");
    cubes.insert_or_assign(bundle->ts_name, std::move(*cube.value));
  }
  return {bundle->spec, std::move(*table.value), std::move(cubes)};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::filesystem::path temp_dir(const std::string& tag) {
  static std::mt19937_64 gen{std::random_device{}()};
  auto dir = std::filesystem::temp_directory_path() / ("micromap-" + tag + "-" + std::to_string(gen()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<oracle::Keyed> random_column(std::mt19937& gen, double missing_rate, int distinct_values) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, distinct_values - 1);
  std::vector<oracle::Keyed> rows;
  for (const auto id : RegionId::all()) {
    oracle::Keyed k{std::string(id.code()), std::nullopt};
    if (coin(gen) >= missing_rate) k.value = -50.0 + 0.75 * pick(gen);
    rows.push_back(k);
  }
  return rows;
}

RegionTable table_of(const std::vector<oracle::Keyed>& rows) {
  TableColumn col;
  col.name = "v";
  for (const auto& r : rows) col.values[RegionId::parse(r.code).index()] = r.value;
  return RegionTable("random", {col});
}

std::vector<std::vector<std::string>> oracle_groups(const RegionTable& table, const SortSpec& sort) {
  std::vector<oracle::Keyed> rows;
  for (const auto id : RegionId::all()) rows.push_back({std::string(id.code()), table.value(id, sort.column)});
  const auto order = oracle::sort_codes(rows, sort.direction == SortDirection::kDescending);
  std::vector<std::vector<std::string>> groups;
  std::size_t at = 0;
  for (const int size : oracle::kSizes) {
    groups.emplace_back(order.begin() + static_cast<long>(at), order.begin() + static_cast<long>(at + size));
    at += static_cast<std::size_t>(size);
  }
  return groups;
}

}  // namespace fixtures
