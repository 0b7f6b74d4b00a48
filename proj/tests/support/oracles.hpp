#pragma once

// Reference implementations written independently of the library, used to
// cross-check it on exhaustive or randomized inputs.

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

/// Region codes in table order paired with a value; nullopt is missing.
struct Keyed {
  std::string code;
  std::optional<double> value;
};

/// Insertion sort: present values by direction, then missing, ties by code.
std::vector<std::string> sort_codes(std::vector<Keyed> rows, bool descending);

struct Box {
  double low_whisker;
  double q1;
  double median;
  double q3;
  double high_whisker;
  std::vector<double> outliers;  // ascending
};

/// Order statistics by counting, quantiles by interpolation at p*(n-1),
/// whiskers at the extreme data inside the 1.5*IQR fences, never inside the box.
Box five_numbers(const std::vector<double>& sample);

/// Tries every step m*10^k (m in 1, 2, 2.5, 5; |k| <= 12) and keeps the
/// smallest one yielding between 2 and max_ticks multiples inside [lo, hi].
std::vector<double> ticks(double lo, double hi, int max_ticks);

/// Closed-form count of tail-shaded regions per shading mode and row.
int maptail_tail_count(int group);
int mapcum_tail_count(int group);

/// Group sizes for 51 sorted regions.
inline constexpr std::array<int, 11> kSizes{5, 5, 5, 5, 5, 1, 5, 5, 5, 5, 5};

}  // namespace oracle
