#include "tempotsp/mesh.h"

#include <cmath>
#include <cstdio>

#include "tempotsp/errors.h"

namespace tempotsp {

MeshId assign_mesh(double lat, double lon, const MeshConfig& cfg) {
  if (cfg.cell_size_m <= 0.0) {
    throw ValidationError("mesh cell size must be positive");
  }
  double east_m = (lon - cfg.origin_lon) * kMetersPerDegreeLon *
                  std::cos(cfg.origin_lat * M_PI / 180.0);
  double north_m = (lat - cfg.origin_lat) * kMetersPerDegreeLat;
  return MeshId{static_cast<int32_t>(std::floor(north_m / cfg.cell_size_m)),
                static_cast<int32_t>(std::floor(east_m / cfg.cell_size_m))};
}

std::string to_string(const MeshId& id) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%d,%d", id.row, id.col);
  return buf;
}

MeshId mesh_from_string(const std::string& s) {
  int row = 0, col = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%d,%d%c", &row, &col, &tail) != 2) {
    throw ParseError("invalid mesh id: '" + s + "'");
  }
  return MeshId{row, col};
}

}  // namespace tempotsp
