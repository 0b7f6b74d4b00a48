#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace micromap {

/// Machine-readable diagnostic codes shared by the parser, validator, CLI and service.
namespace codes {
inline constexpr const char* kParseError = "PARSE_ERROR";
inline constexpr const char* kUnknownKey = "UNKNOWN_KEY";
inline constexpr const char* kUnknownGlyph = "UNKNOWN_GLYPH";
inline constexpr const char* kFieldNotAllowed = "FIELD_NOT_ALLOWED";
inline constexpr const char* kFieldRequired = "FIELD_REQUIRED";
inline constexpr const char* kBadValue = "BAD_VALUE";
inline constexpr const char* kUnknownSortColumn = "UNKNOWN_SORT_COLUMN";
inline constexpr const char* kUnknownColumn = "UNKNOWN_COLUMN";
inline constexpr const char* kNonNumericColumn = "NONNUMERIC_COLUMN";
inline constexpr const char* kUnknownPanelData = "UNKNOWN_PANEL_DATA";
inline constexpr const char* kColumnLimit = "COLUMN_LIMIT";
inline constexpr const char* kWidthExceeded = "WIDTH_EXCEEDED";
inline constexpr const char* kNoFiniteValues = "NO_FINITE_VALUES";
inline constexpr const char* kUnknownRegion = "UNKNOWN_REGION";
inline constexpr const char* kMissingRegion = "MISSING_REGION";
inline constexpr const char* kDuplicateRegion = "DUPLICATE_REGION";
inline constexpr const char* kBadHeader = "BAD_HEADER";
inline constexpr const char* kRaggedSeries = "RAGGED_SERIES";
inline constexpr const char* kNonMonotoneX = "NONMONOTONE_X";
inline constexpr const char* kUnknownDataset = "UNKNOWN_DATASET";
inline constexpr const char* kUnsupportedFormat = "UNSUPPORTED_FORMAT";
// Warnings.
inline constexpr const char* kMissingValue = "MISSING_VALUE";
inline constexpr const char* kMissingSortValue = "MISSING_SORT_VALUE";
inline constexpr const char* kNonNumericCell = "NONNUMERIC_CELL";
inline constexpr const char* kZeroLengthArrow = "ZERO_LENGTH_ARROW";
inline constexpr const char* kShortSample = "SHORT_SAMPLE";
}  // namespace codes

struct Diagnostic {
  std::string code;
  std::string message;
  /// Field path ("columns[2].col2"), region ("region:HI") or input position ("line 4").
  std::string location;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct ValidationReport {
  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;

  bool ok() const { return errors.empty(); }

  void error(std::string code, std::string message, std::string location) {
    errors.push_back({std::move(code), std::move(message), std::move(location)});
  }
  void warn(std::string code, std::string message, std::string location) {
    warnings.push_back({std::move(code), std::move(message), std::move(location)});
  }
  void merge(const ValidationReport& other) {
    errors.insert(errors.end(), other.errors.begin(), other.errors.end());
    warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
  }
  bool has_error(std::string_view code) const {
    for (const auto& e : errors) {
      if (e.code == code) return true;
    }
    return false;
  }

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Thrown when an operation cannot proceed; carries the full report.
class SpecError : public std::runtime_error {
 public:
  explicit SpecError(ValidationReport report)
      : std::runtime_error(summary(report)), report_(std::move(report)) {}
  SpecError(std::string code, std::string message, std::string location = {})
      : SpecError(single(std::move(code), std::move(message), std::move(location))) {}

  const ValidationReport& report() const { return report_; }

 private:
  static ValidationReport single(std::string code, std::string message, std::string location) {
    ValidationReport r;
    r.error(std::move(code), std::move(message), std::move(location));
    return r;
  }
  static std::string summary(const ValidationReport& r) {
    if (r.errors.empty()) return "validation failed";
    return r.errors.front().code + ": " + r.errors.front().message;
  }

  ValidationReport report_;
};

/// Value plus the diagnostics gathered while producing it. `value` is empty
/// exactly when `report` holds errors.
template <class T>
struct Outcome {
  std::optional<T> value;
  ValidationReport report;

  explicit operator bool() const { return value.has_value(); }
};

}  // namespace micromap
