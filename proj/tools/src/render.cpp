#include "nagplan_cli/render.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "json.hpp"
#include "nagplan/errors.hpp"

namespace nagplan::cli {
namespace {

constexpr int kCell = 8;
constexpr int kLegendLine = 16;
constexpr const char* kPalette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
                                    "#42d4f4", "#f032e6", "#bfef45", "#469990", "#9a6324"};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Splits a path where it jumps across the cylinder seam.
std::vector<std::vector<Coord>> segments(const std::vector<Coord>& coords) {
  std::vector<std::vector<Coord>> out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i == 0 || std::abs(coords[i].x - coords[i - 1].x) > 1) out.emplace_back();
    out.back().push_back(coords[i]);
  }
  return out;
}

}  // namespace

std::string render_svg(const Environment& env, const std::vector<RenderPath>& paths,
                       const std::vector<CutPointRegion>& regions) {
  if (env.is_3d()) throw UnsupportedRender("SVG output is only available for 2D environments");
  const int w = env.dims().nx * kCell;
  const int map_h = env.dims().ny * kCell;
  const int h = map_h + kLegendLine * (static_cast<int>(paths.size()) + 1);

  std::string s;
  s += fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n", w, h, w, h);
  s += "<defs><pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"4\" height=\"4\">"
       "<path d=\"M0,4 L4,0\" stroke=\"#cc0000\" stroke-width=\"1\"/></pattern></defs>\n";
  s += fmt("<rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" fill=\"#ffffff\"/>\n", w, h);

  s += "<g id=\"map\" shape-rendering=\"crispEdges\">\n";
  for (int y = 0; y < env.dims().ny; ++y) {
    for (int x = 0; x < env.dims().nx; ++x) {
      const std::size_t i = env.index(Coord{x, y, 0});
      int gray = 255;
      if (env.obstacle_at(i)) {
        gray = 0;
      } else {
        gray = static_cast<int>(std::lround(255.0 * (1.0 - env.rho_at(i))));
      }
      if (gray == 255) continue;
      s += fmt("<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"#%02x%02x%02x\"/>\n", x * kCell, y * kCell,
               kCell, kCell, gray, gray, gray);
    }
  }
  s += "</g>\n";

  s += "<g id=\"regions\">\n";
  for (const auto& region : regions) {
    for (const auto& q : region.coords) {
      s += fmt("<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"url(#hatch)\" stroke=\"#cc0000\" "
               "stroke-width=\"0.5\"/>\n",
               q.x * kCell, q.y * kCell, kCell, kCell);
    }
  }
  s += "</g>\n";

  s += "<g id=\"paths\" fill=\"none\" stroke-width=\"2\" stroke-linejoin=\"round\">\n";
  for (std::size_t r = 0; r < paths.size(); ++r) {
    const char* colour = kPalette[r % std::size(kPalette)];
    for (const auto& seg : segments(paths[r].coords)) {
      s += fmt("<polyline stroke=\"%s\"%s points=\"", colour, paths[r].valid ? "" : " stroke-dasharray=\"4 3\"");
      for (std::size_t i = 0; i < seg.size(); ++i) {
        if (i) s += ' ';
        s += fmt("%d,%d", seg[i].x * kCell + kCell / 2, seg[i].y * kCell + kCell / 2);
      }
      s += "\"/>\n";
    }
  }
  s += "</g>\n";

  s += "<g id=\"legend\" font-family=\"monospace\" font-size=\"12\">\n";
  for (std::size_t r = 0; r < paths.size(); ++r) {
    s += fmt("<text x=\"4\" y=\"%d\" fill=\"%s\">path %zu: %.3f%s</text>\n",
             map_h + kLegendLine * static_cast<int>(r + 1), kPalette[r % std::size(kPalette)], r + 1,
             paths[r].length, paths[r].valid ? "" : " (invalid)");
  }
  s += "</g>\n</svg>\n";
  return s;
}

std::string render_polylines(const Environment& env, const std::vector<RenderPath>& paths,
                             const std::vector<CutPointRegion>& regions) {
  using nlohmann::json;
  json out;
  out["dims"] = {env.dims().nx, env.dims().ny, env.dims().nz};
  out["paths"] = json::array();
  for (std::size_t r = 0; r < paths.size(); ++r) {
    json p;
    p["rank"] = r;
    p["length"] = paths[r].length;
    p["valid"] = paths[r].valid;
    json pts = json::array();
    for (const auto& q : paths[r].coords) pts.push_back({q.x, q.y, q.z});
    p["points"] = std::move(pts);
    out["paths"].push_back(std::move(p));
  }
  out["regions"] = json::array();
  for (const auto& region : regions) {
    json cells = json::array();
    for (const auto& q : region.coords) cells.push_back({q.x, q.y, q.z});
    out["regions"].push_back(std::move(cells));
  }
  return out.dump(2) + "\n";
}

}  // namespace nagplan::cli
