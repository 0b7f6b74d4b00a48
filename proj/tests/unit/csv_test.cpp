#include <gtest/gtest.h>

#include "micromap/csv.hpp"

using micromap::csv::parse;
using micromap::csv::ParseError;

TEST(Csv, QuotedFieldsAndDoubledQuotes) {
  const auto doc = parse("a,b,c\n\"x, y\",\"say \"\"hi\"\"\",3\n");
  ASSERT_EQ(doc.records.size(), 2u);
  EXPECT_EQ(doc.records[1].fields, (std::vector<std::string>{"x, y", "say \"hi\"", "3"}));
}

TEST(Csv, EmbeddedNewlineKeepsStartLine) {
  const auto doc = parse("a,b\n\"two\nlines\",1\nz,2\n");
  ASSERT_EQ(doc.records.size(), 3u);
  EXPECT_EQ(doc.records[1].fields[0], "two\nlines");
  EXPECT_EQ(doc.records[1].line, 2u);
  EXPECT_EQ(doc.records[2].line, 4u);
}

TEST(Csv, CrlfBomCommentsAndBlankLines) {
  const auto doc = parse("\xEF\xBB\xBF# synthetic\r\n#  name: TSd \r\nstate,v\r\n\r\nCA,1\r\n");
  EXPECT_EQ(doc.comments, (std::vector<std::string>{"synthetic", "name: TSd"}));
  ASSERT_EQ(doc.records.size(), 2u);
  EXPECT_EQ(doc.records[0].fields, (std::vector<std::string>{"state", "v"}));
  EXPECT_EQ(doc.records[1].fields, (std::vector<std::string>{"CA", "1"}));
}

TEST(Csv, EmptyTrailingField) {
  const auto doc = parse("a,b\n1,\n");
  EXPECT_EQ(doc.records[1].fields, (std::vector<std::string>{"1", ""}));
}

TEST(Csv, UnterminatedQuoteIsAnError) {
  try {
    parse("a,b\n\"open,1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Csv, TextAfterClosingQuoteIsAnError) { EXPECT_THROW(parse("a\n\"x\"y\n"), ParseError); }
