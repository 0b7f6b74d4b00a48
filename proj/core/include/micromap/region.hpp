#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace micromap {

inline constexpr std::size_t kRegionCount = 51;

/// One of the 50 US states or the District of Columbia, keyed by USPS code.
///
/// The set is closed: a RegionId can only be obtained from the fixed table, so
/// any instance is valid. Ordering follows ascending USPS code.
class RegionId {
 public:
  static std::optional<RegionId> from_code(std::string_view code);
  /// Throws std::invalid_argument for codes outside the fixed table.
  static RegionId parse(std::string_view code);
  static RegionId from_index(std::size_t index);
  static const std::array<RegionId, kRegionCount>& all();

  std::size_t index() const { return index_; }
  std::string_view code() const;
  std::string_view name() const;
  /// Label used in the id column ("Dist. of Columbia" for DC).
  std::string_view display_name() const;
  std::string_view fips() const;

  friend bool operator==(RegionId, RegionId) = default;
  friend auto operator<=>(RegionId, RegionId) = default;

 private:
  constexpr explicit RegionId(std::size_t index) : index_(index) {}
  std::size_t index_ = 0;
};

template <class T>
using PerRegion = std::array<T, kRegionCount>;

}  // namespace micromap
