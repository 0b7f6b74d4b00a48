#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "micromap/model.hpp"
#include "oracles.hpp"

namespace fixtures {

struct Inputs {
  micromap::PanelSpec spec;
  micromap::RegionTable table;
  micromap::CubeSet cubes;
};

/// The embedded worked example, ingested through the public CSV path.
Inputs demo(const std::string& name);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

/// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& tag);

/// Values with a chance of being missing and of repeating (to force ties).
std::vector<oracle::Keyed> random_column(std::mt19937& gen, double missing_rate, int distinct_values);

/// One-column table "v" built from keyed values in region order.
micromap::RegionTable table_of(const std::vector<oracle::Keyed>& rows);

/// Expected group membership by code, from the oracle sort.
std::vector<std::vector<std::string>> oracle_groups(const micromap::RegionTable& table,
                                                    const micromap::SortSpec& sort);

}  // namespace fixtures
