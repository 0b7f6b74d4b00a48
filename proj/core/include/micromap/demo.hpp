#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "micromap/model.hpp"

namespace micromap {

/// Embedded worked example: a panel spec plus its data files.
struct DemoBundle {
  std::string name;         // "qcew" or "oews"
  PanelSpec spec;
  std::string table_csv;
  std::string ts_name;      // empty when the example has no time series
  std::string ts_csv;
};

std::vector<std::string> demo_names();
/// Deterministic for a given name; nullopt for unknown names.
std::optional<DemoBundle> make_demo(std::string_view name);

}  // namespace micromap
