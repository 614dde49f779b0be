#pragma once

#include <string>
#include <string_view>

#include "nagplan/environment.hpp"

namespace nagplan {

enum class EnvFormat { kPgm2d, kVoxelJson3d };

std::string to_string(EnvFormat f);
std::optional<EnvFormat> env_format_from_string(const std::string& s);

struct LoadOptions {
  /// planar2d or cylinder2d for PGM input; voxel input is always grid3d.
  Topology topology = Topology::kPlanar2d;
  double cm = 0.0;
  /// Pixels with gray < threshold become obstacles. The default marks only gray == 0.
  int obstacle_threshold = 1;
};

/// ASCII PGM (P2). rho = 1 - gray / maxval; row 0 of the raster is y = 0.
Environment load_pgm(std::string_view bytes, const LoadOptions& opts = {});

/// Voxel JSON: {"dims":[nx,ny,nz], "solid":[0/1...], "rho":[...]} with x varying
/// fastest, then y, then z. `rho` is optional and defaults to 0.
Environment load_voxel_json(std::string_view bytes, const LoadOptions& opts = {});

Environment load_environment(std::string_view bytes, EnvFormat format, const LoadOptions& opts = {});

/// Reads a whole file into memory; throws std::runtime_error if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace nagplan
