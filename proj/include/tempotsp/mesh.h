#ifndef TEMPOTSP_MESH_H
#define TEMPOTSP_MESH_H

#include <cstdint>
#include <functional>
#include <string>

namespace tempotsp {

// Square-mesh grid over an equirectangular local projection anchored at
// (origin_lat, origin_lon). Adequate at city scale; distortion stays well
// under 0.1% over ~20 km.
struct MeshConfig {
  double origin_lat = 0.0;
  double origin_lon = 0.0;
  double cell_size_m = 50.0;
};

// Grid cell index. Signed: cells south/west of the origin are negative.
struct MeshId {
  int32_t row = 0;
  int32_t col = 0;

  auto operator<=>(const MeshId&) const = default;
};

// Meters per degree at the equator / along a meridian.
constexpr double kMetersPerDegreeLon = 111320.0;
constexpr double kMetersPerDegreeLat = 110540.0;

MeshId assign_mesh(double lat, double lon, const MeshConfig& cfg);

std::string to_string(const MeshId& id);      // "row,col"
MeshId mesh_from_string(const std::string&);  // inverse of to_string

}  // namespace tempotsp

template <>
struct std::hash<tempotsp::MeshId> {
  size_t operator()(const tempotsp::MeshId& m) const {
    uint64_t v = (static_cast<uint64_t>(static_cast<uint32_t>(m.row)) << 32) |
                 static_cast<uint32_t>(m.col);
    v ^= v >> 33;
    v *= 0xff51afd7ed558ccdULL;
    v ^= v >> 33;
    return static_cast<size_t>(v);
  }
};

#endif  // TEMPOTSP_MESH_H
