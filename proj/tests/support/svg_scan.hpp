#pragma once

#include <map>
#include <string>
#include <vector>

namespace svgscan {

struct Element {
  std::string tag;
  std::map<std::string, std::string> attrs;
  std::string text;
  std::string panel_id;    // "panel-r3-c2" for elements inside a panel group
  std::string panel_kind;  // "map", "id", "dot", ...
  int row = -1;
  int column = -1;

  std::string attr(const std::string& key) const;
  bool has_class(const std::string& cls) const;
  /// Region code from an "r-XX" class, or empty.
  std::string region() const;
  /// Fill when painted, else stroke.
  std::string paint() const;
};

struct Document {
  double width = 0;
  double height = 0;
  std::vector<Element> elements;
};

/// Parses with a real XML reader; throws on malformed input.
Document parse(const std::string& svg);

/// Every fill/stroke value other than "none".
std::vector<std::string> colors(const Document& doc);

/// Every coordinate-like number (x, y, cx, cy, x1.., points, width, height as extents).
/// Returns descriptions of elements with coordinates outside [0, width] x [0, height].
std::vector<std::string> out_of_bounds(const Document& doc, double eps = 0.01);

/// Checks that in each group row, every region-linked mark of a region is
/// painted with the colour of its slot (or the median colour), in the map, id
/// and every glyph panel. `groups[r]` lists the expected codes of row r in rank
/// order. Returns the violations found.
std::vector<std::string> linking_violations(const Document& doc, const std::vector<std::vector<std::string>>& groups,
                                            const std::vector<std::string>& slot_colors,
                                            const std::string& median_color);

}  // namespace svgscan
