#pragma once

#include <cstddef>

// Tables generated at build time from assets/us_states.geojson.
namespace micromap::detail {

struct EmbeddedRing {
  const char* usps;
  std::size_t offset;  // index of the first x in kStateCoords
  std::size_t count;   // number of points
};

struct EmbeddedState {
  const char* usps;
  const char* name;
  const char* fips;
  double anchor_x;
  double anchor_y;
};

extern const double kStateCoords[];
extern const EmbeddedRing kStateRings[];
extern const std::size_t kStateRingCount;
extern const EmbeddedState kStates[];
extern const std::size_t kStateCount;

}  // namespace micromap::detail
