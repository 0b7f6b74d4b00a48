#include "micromap/region.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace micromap {
namespace {

struct RegionInfo {
  std::string_view code;
  std::string_view name;
  std::string_view display;
  std::string_view fips;
};

// Sorted by USPS code; RegionId::index() is the position in this table.
constexpr std::array<RegionInfo, kRegionCount> kRegions{{
    {"AK", "Alaska", "Alaska", "02"},
    {"AL", "Alabama", "Alabama", "01"},
    {"AR", "Arkansas", "Arkansas", "05"},
    {"AZ", "Arizona", "Arizona", "04"},
    {"CA", "California", "California", "06"},
    {"CO", "Colorado", "Colorado", "08"},
    {"CT", "Connecticut", "Connecticut", "09"},
    {"DC", "District of Columbia", "Dist. of Columbia", "11"},
    {"DE", "Delaware", "Delaware", "10"},
    {"FL", "Florida", "Florida", "12"},
    {"GA", "Georgia", "Georgia", "13"},
    {"HI", "Hawaii", "Hawaii", "15"},
    {"IA", "Iowa", "Iowa", "19"},
    {"ID", "Idaho", "Idaho", "16"},
    {"IL", "Illinois", "Illinois", "17"},
    {"IN", "Indiana", "Indiana", "18"},
    {"KS", "Kansas", "Kansas", "20"},
    {"KY", "Kentucky", "Kentucky", "21"},
    {"LA", "Louisiana", "Louisiana", "22"},
    {"MA", "Massachusetts", "Massachusetts", "25"},
    {"MD", "Maryland", "Maryland", "24"},
    {"ME", "Maine", "Maine", "23"},
    {"MI", "Michigan", "Michigan", "26"},
    {"MN", "Minnesota", "Minnesota", "27"},
    {"MO", "Missouri", "Missouri", "29"},
    {"MS", "Mississippi", "Mississippi", "28"},
    {"MT", "Montana", "Montana", "30"},
    {"NC", "North Carolina", "North Carolina", "37"},
    {"ND", "North Dakota", "North Dakota", "38"},
    {"NE", "Nebraska", "Nebraska", "31"},
    {"NH", "New Hampshire", "New Hampshire", "33"},
    {"NJ", "New Jersey", "New Jersey", "34"},
    {"NM", "New Mexico", "New Mexico", "35"},
    {"NV", "Nevada", "Nevada", "32"},
    {"NY", "New York", "New York", "36"},
    {"OH", "Ohio", "Ohio", "39"},
    {"OK", "Oklahoma", "Oklahoma", "40"},
    {"OR", "Oregon", "Oregon", "41"},
    {"PA", "Pennsylvania", "Pennsylvania", "42"},
    {"RI", "Rhode Island", "Rhode Island", "44"},
    {"SC", "South Carolina", "South Carolina", "45"},
    {"SD", "South Dakota", "South Dakota", "46"},
    {"TN", "Tennessee", "Tennessee", "47"},
    {"TX", "Texas", "Texas", "48"},
    {"UT", "Utah", "Utah", "49"},
    {"VA", "Virginia", "Virginia", "51"},
    {"VT", "Vermont", "Vermont", "50"},
    {"WA", "Washington", "Washington", "53"},
    {"WI", "Wisconsin", "Wisconsin", "55"},
    {"WV", "West Virginia", "West Virginia", "54"},
    {"WY", "Wyoming", "Wyoming", "56"},
}};

}  // namespace

std::optional<RegionId> RegionId::from_code(std::string_view code) {
  for (std::size_t i = 0; i < kRegions.size(); ++i) {
    if (kRegions[i].code == code) return RegionId(i);
  }
  return std::nullopt;
}

RegionId RegionId::parse(std::string_view code) {
  if (auto id = from_code(code)) return *id;
  throw std::invalid_argument("unknown region code '" + std::string(code) + "'");
}

RegionId RegionId::from_index(std::size_t index) {
  if (index >= kRegionCount) throw std::out_of_range("region index out of range");
  return RegionId(index);
}

const std::array<RegionId, kRegionCount>& RegionId::all() {
  static const auto ids = []<std::size_t... I>(std::index_sequence<I...>) {
    return std::array<RegionId, kRegionCount>{RegionId(I)...};
  }(std::make_index_sequence<kRegionCount>{});
  return ids;
}

std::string_view RegionId::code() const { return kRegions[index_].code; }
std::string_view RegionId::name() const { return kRegions[index_].name; }
std::string_view RegionId::display_name() const { return kRegions[index_].display; }
std::string_view RegionId::fips() const { return kRegions[index_].fips; }

}  // namespace micromap
