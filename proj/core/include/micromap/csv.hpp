#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace micromap::csv {

struct Record {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

struct Document {
  /// Leading lines starting with '#', without the marker and surrounding blanks.
  std::vector<std::string> comments;
  std::vector<Record> records;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF line ends.
/// A UTF-8 BOM is skipped; blank lines are ignored.
Document parse(std::string_view text);

std::string trim(std::string_view text);

}  // namespace micromap::csv
