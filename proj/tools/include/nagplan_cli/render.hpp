#pragma once

#include <string>
#include <vector>

#include "nagplan/environment.hpp"
#include "nagplan/graph.hpp"

namespace nagplan::cli {

struct RenderPath {
  std::vector<Coord> coords;
  double length = 0.0;
  bool valid = true;
};

/// 2D map as SVG: cost field in grayscale, obstacles black, cut regions
/// hatched, one polyline per path coloured by rank and a legend with lengths.
/// Output depends only on the inputs. Throws UnsupportedRender for 3D.
std::string render_svg(const Environment& env, const std::vector<RenderPath>& paths,
                       const std::vector<CutPointRegion>& regions);

/// 3D paths as line-segment polylines in JSON.
std::string render_polylines(const Environment& env, const std::vector<RenderPath>& paths,
                             const std::vector<CutPointRegion>& regions);

}  // namespace nagplan::cli
