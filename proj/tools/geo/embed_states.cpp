// Converts the state boundary GeoJSON asset into C++ tables.
//
//   embed_states <in.geojson> <out.cpp>
//
// Each feature needs "usps", "name", "fips" and "anchor" properties and a
// Polygon or MultiPolygon geometry. Only exterior rings are kept; the closing
// point is dropped.

#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Ring {
  std::string usps;
  std::vector<std::pair<double, double>> points;
};

std::vector<std::pair<double, double>> exterior(const nlohmann::json& polygon) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : polygon.at(0)) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
  return pts;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: embed_states <in.geojson> <out.cpp>\n";
    return 2;
  }
  std::ifstream in(argv[1]);
  if (!in) {
    std::cerr << "cannot open " << argv[1] << "\n";
    return 2;
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    std::cerr << argv[1] << ": " << e.what() << "\n";
    return 1;
  }

  std::vector<Ring> rings;
  std::ostringstream states;
  std::size_t state_count = 0;
  for (const auto& f : doc.at("features")) {
    const auto& props = f.at("properties");
    const auto usps = props.at("usps").get<std::string>();
    const auto& geom = f.at("geometry");
    const auto type = geom.at("type").get<std::string>();
    if (type == "Polygon") {
      rings.push_back({usps, exterior(geom.at("coordinates"))});
    } else if (type == "MultiPolygon") {
      for (const auto& poly : geom.at("coordinates")) rings.push_back({usps, exterior(poly)});
    } else {
      std::cerr << usps << ": unsupported geometry " << type << "\n";
      return 1;
    }
    const auto& anchor = props.at("anchor");
    states << fmt::format("    {{{}, {}, {}, {:.2f}, {:.2f}}},\n", quoted(usps),
                          quoted(props.at("name").get<std::string>()), quoted(props.at("fips").get<std::string>()),
                          anchor.at(0).get<double>(), anchor.at(1).get<double>());
    ++state_count;
  }

  std::ofstream out(argv[2]);
  out << "// Generated by embed_states from " << "us_states.geojson" << ". Do not edit.\n";
  out << "#include \"state_data.hpp\"\n\nnamespace micromap::detail {\n\n";
  out << "const double kStateCoords[] = {\n";
  std::size_t offset = 0;
  std::ostringstream ring_table;
  for (const auto& r : rings) {
    out << "   ";
    for (const auto& [x, y] : r.points) out << fmt::format(" {:.2f}, {:.2f},", x, y);
    out << "\n";
    ring_table << fmt::format("    {{{}, {}, {}}},\n", quoted(r.usps), offset, r.points.size());
    offset += r.points.size() * 2;
  }
  out << "};\n\nconst EmbeddedRing kStateRings[] = {\n" << ring_table.str() << "};\n";
  out << "const std::size_t kStateRingCount = " << rings.size() << ";\n\n";
  out << "const EmbeddedState kStates[] = {\n" << states.str() << "};\n";
  out << "const std::size_t kStateCount = " << state_count << ";\n\n}  // namespace micromap::detail\n";
  return out ? 0 : 1;
}
