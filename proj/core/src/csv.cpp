#include "micromap/csv.hpp"

namespace micromap::csv {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

Document parse(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  Document doc;
  std::size_t pos = 0;
  std::size_t line = 1;

  // Header comments.
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    const auto raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    const auto t = trim(raw);
    if (t.empty() && pos < text.size()) {
      pos = eol == std::string_view::npos ? text.size() : eol + 1;
      ++line;
      continue;
    }
    if (!t.starts_with('#')) break;
    doc.comments.push_back(trim(std::string_view(t).substr(1)));
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line;
  }

  Record current;
  current.line = line;
  std::string field;
  bool in_quotes = false;
  bool field_quoted = false;
  std::size_t quote_line = 0;

  auto end_field = [&] {
    current.fields.push_back(field_quoted ? field : trim(field));
    field.clear();
    field_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = current.fields.size() == 1 && current.fields[0].empty();
    if (!blank) doc.records.push_back(std::move(current));
    current = Record{};
    current.line = line;
  };

  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (in_quotes) {
      if (c == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field.push_back('"');
          ++pos;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!trim(field).empty()) throw ParseError(line, "quote inside unquoted field");
        field.clear();
        in_quotes = true;
        field_quoted = true;
        quote_line = line;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        if (field_quoted && c != ' ' && c != '\t') {
          throw ParseError(line, "text after closing quote");
        }
        if (!field_quoted) field.push_back(c);
    }
  }
  if (in_quotes) throw ParseError(quote_line, "unterminated quoted field");
  if (!field.empty() || field_quoted || !current.fields.empty()) end_record();
  return doc;
}

}  // namespace micromap::csv
