#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fractal/curves.hpp"
#include "fractal/ifs.hpp"

namespace fractal {

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

/// Boolean occupancy grid over `window` at cell side `eps`, anchored at the
/// window's lower-left corner.
struct GridRaster {
  Rect window;
  double eps = 0.0;
  int nx = 0, ny = 0;
  std::vector<std::uint8_t> cells;  // row-major, index = iy * nx + ix
  double slack = 0.0;               // every true sumset point is within this of an occupied cell

  bool occupied(int ix, int iy) const { return cells[static_cast<std::size_t>(iy) * nx + ix] != 0; }
  Point cell_center(int ix, int iy) const {
    return {window.x0 + (ix + 0.5) * eps, window.y0 + (iy + 0.5) * eps};
  }
};

inline constexpr std::uint64_t kMaxGridCells = std::uint64_t(1) << 26;

/// Bounding box of cover + sample, padded by 2*eps.
Rect default_window(const BoxCover& cover, const CurveSample& sample, double eps);

/// Occupancy grid of the sumset: for every (box, sample point) pair the cells
/// meeting the translated box, dilated by the sample's hausdorff bound, are
/// marked. The result is a superset of the true sumset's cell cover and a
/// subset of its slack-dilation.
GridRaster minkowski_raster(const BoxCover& cover, const CurveSample& sample, double eps,
                            std::optional<Rect> window = std::nullopt);

std::int64_t box_count(const GridRaster& raster);

double area_estimate(const GridRaster& raster);

/// A cell center whose rho-disk is fully occupied, if any. Requires rho >= 3*eps.
std::optional<Point> interior_probe(const GridRaster& raster, double rho);

struct McEstimate {
  std::int64_t hits = 0;
  std::int64_t trials = 0;
  double p_hat = 0.0;
  double ci95_halfwidth = 0.0;
  std::uint64_t seed = 0;
};

/// Throws circles of the given radius with centers uniform in `window` and
/// counts exact circle/box intersections against the cover (no rasterization).
McEstimate random_circle_mc(const BoxCover& cover, const Rect& window, double radius,
                            std::int64_t trials, std::uint64_t seed);

/// P5 PGM, 0 = empty, 255 = occupied; rows written top-down.
std::string raster_to_pgm(const GridRaster& raster);

}  // namespace fractal
