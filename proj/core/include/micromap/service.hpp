#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "micromap/model.hpp"
#include "micromap/report.hpp"

namespace micromap {

enum class DatasetKind { kTable, kTimeSeries };
std::string_view to_string(DatasetKind kind);
std::optional<DatasetKind> parse_dataset_kind(std::string_view text);

struct DatasetEntry {
  std::string id;
  std::string name;
  std::vector<std::string> column_names;
  DatasetKind kind = DatasetKind::kTable;
  std::string uploaded_at;  // ISO 8601, UTC
};

/// What a panel spec resolves to against the registry.
struct ResolvedInputs {
  std::shared_ptr<const RegionTable> table;
  CubeSet cubes;
};

/// Uploaded datasets, persisted as one CSV per entry plus index.json in a data
/// directory. Mutations are serialized and replace an immutable snapshot, so
/// readers never observe a half-applied upload.
class DatasetRegistry {
 public:
  /// Loads an existing index if present; entries whose CSV no longer ingests are dropped.
  explicit DatasetRegistry(std::filesystem::path dir);

  /// Sorted by name.
  std::vector<DatasetEntry> list() const;
  std::optional<DatasetEntry> find(std::string_view id_or_name) const;

  /// Ingests and persists. A name already in use gets "-2", "-3", ... appended.
  /// On any error the registry and the data directory are left unchanged.
  Outcome<DatasetEntry> add(std::string_view csv, DatasetKind kind, std::string name,
                            std::optional<std::string> region_column = {});

  /// UNKNOWN_DATASET when spec.dataset names no table. Time-series columns
  /// are resolved by id or name; unresolved ones are left for validation.
  Outcome<ResolvedInputs> resolve(const PanelSpec& spec) const;

  const std::filesystem::path& directory() const { return dir_; }

 private:
  struct Record;
  struct State;

  std::shared_ptr<const State> snapshot() const;
  void persist_index(const State& state) const;

  std::filesystem::path dir_;
  mutable std::mutex state_mutex_;
  std::mutex write_mutex_;
  std::shared_ptr<const State> state_;
};

struct ServiceOptions {
  std::filesystem::path data_dir = "data";
  std::optional<std::filesystem::path> static_dir;
  std::size_t max_body_bytes = 10 * 1024 * 1024;
};

struct ListenAddress {
  std::string host = "127.0.0.1";
  int port = 8787;
};

/// "host:port", "host" or ":port"; nullopt when the port is not a number in [0, 65535].
std::optional<ListenAddress> parse_listen_address(std::string_view text);

/// The HTTP API over a registry: /api/datasets, /api/render, /api/export.
class Service {
 public:
  explicit Service(ServiceOptions options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds without serving; port 0 picks an ephemeral port. Returns the bound port or -1.
  int bind(const ListenAddress& address);
  /// Blocks until stop().
  bool listen();
  void stop();
  void wait_until_ready() const;

  DatasetRegistry& registry();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace micromap
