#include "fractal/raster.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fractal/rng.hpp"

namespace fractal {

Rect default_window(const BoxCover& cover, const CurveSample& sample, double eps) {
  if (cover.boxes.empty()) throw std::domain_error("default_window: empty cover");
  if (sample.points.empty()) throw std::domain_error("default_window: empty sample");
  double side = to_double(cover.side);
  double bx0 = to_double(cover.boxes.front().x), bx1 = bx0, by0 = to_double(cover.boxes.front().y),
         by1 = by0;
  for (const auto& b : cover.boxes) {
    bx0 = std::min(bx0, to_double(b.x));
    bx1 = std::max(bx1, to_double(b.x));
    by0 = std::min(by0, to_double(b.y));
    by1 = std::max(by1, to_double(b.y));
  }
  double cx0 = sample.points.front().x, cx1 = cx0, cy0 = sample.points.front().y, cy1 = cy0;
  for (const auto& p : sample.points) {
    cx0 = std::min(cx0, p.x);
    cx1 = std::max(cx1, p.x);
    cy0 = std::min(cy0, p.y);
    cy1 = std::max(cy1, p.y);
  }
  double pad = 2.0 * eps + sample.hausdorff_bound;
  return {bx0 + cx0 - pad, by0 + cy0 - pad, bx1 + side + cx1 + pad, by1 + side + cy1 + pad};
}

GridRaster minkowski_raster(const BoxCover& cover, const CurveSample& sample, double eps,
                            std::optional<Rect> window) {
  if (!(eps > 0)) throw std::domain_error("minkowski_raster: eps must be positive");
  if (cover.boxes.empty()) throw std::domain_error("minkowski_raster: empty cover");
  if (sample.points.empty()) throw std::domain_error("minkowski_raster: empty sample");

  GridRaster g;
  g.window = window ? *window : default_window(cover, sample, eps);
  g.eps = eps;
  g.nx = static_cast<int>(std::ceil(g.window.width() / eps));
  g.ny = static_cast<int>(std::ceil(g.window.height() / eps));
  if (g.nx <= 0 || g.ny <= 0) throw std::domain_error("minkowski_raster: empty window");
  if (static_cast<std::uint64_t>(g.nx) * g.ny > kMaxGridCells)
    throw std::domain_error("minkowski_raster: grid exceeds the 2^26 cell cap");
  g.cells.assign(static_cast<std::size_t>(g.nx) * g.ny, 0);

  const double side = to_double(cover.side);
  const double dilate = sample.hausdorff_bound;
  g.slack = side + sample.hausdorff_bound + eps * std::sqrt(2.0);

  std::vector<Point> corners(cover.boxes.size());
  for (std::size_t i = 0; i < cover.boxes.size(); ++i)
    corners[i] = {to_double(cover.boxes[i].x), to_double(cover.boxes[i].y)};

  for (const auto& b : corners) {
    for (const auto& p : sample.points) {
      double x0 = b.x + p.x - dilate, x1 = b.x + side + p.x + dilate;
      double y0 = b.y + p.y - dilate, y1 = b.y + side + p.y + dilate;
      if (x1 < g.window.x0 || x0 > g.window.x1 || y1 < g.window.y0 || y0 > g.window.y1)
        continue;
      int ix0 = std::max(0, static_cast<int>(std::floor((x0 - g.window.x0) / eps)));
      int ix1 = std::min(g.nx - 1, static_cast<int>(std::floor((x1 - g.window.x0) / eps)));
      int iy0 = std::max(0, static_cast<int>(std::floor((y0 - g.window.y0) / eps)));
      int iy1 = std::min(g.ny - 1, static_cast<int>(std::floor((y1 - g.window.y0) / eps)));
      if (ix1 < ix0 || iy1 < iy0) continue;
      for (int iy = iy0; iy <= iy1; ++iy) {
        auto* row = g.cells.data() + static_cast<std::size_t>(iy) * g.nx;
        std::fill(row + ix0, row + ix1 + 1, std::uint8_t(1));
      }
    }
  }
  return g;
}

std::int64_t box_count(const GridRaster& raster) {
  std::int64_t n = 0;
  for (auto c : raster.cells) n += c;
  return n;
}

double area_estimate(const GridRaster& raster) {
  return raster.eps * raster.eps * static_cast<double>(box_count(raster));
}

namespace {

/// prefix(ix, iy) = number of occupied cells in [0,ix) x [0,iy).
std::vector<std::int64_t> prefix_sums(const GridRaster& g) {
  std::vector<std::int64_t> p(static_cast<std::size_t>(g.nx + 1) * (g.ny + 1), 0);
  auto at = [&](int ix, int iy) -> std::int64_t& {
    return p[static_cast<std::size_t>(iy) * (g.nx + 1) + ix];
  };
  for (int iy = 1; iy <= g.ny; ++iy)
    for (int ix = 1; ix <= g.nx; ++ix)
      at(ix, iy) = at(ix - 1, iy) + at(ix, iy - 1) - at(ix - 1, iy - 1) +
                   (g.occupied(ix - 1, iy - 1) ? 1 : 0);
  return p;
}

}  // namespace

std::optional<Point> interior_probe(const GridRaster& raster, double rho) {
  if (!(rho >= 3.0 * raster.eps))
    throw std::domain_error("interior_probe: rho must be at least 3*eps");
  const int k = static_cast<int>(std::ceil(rho / raster.eps));
  const auto prefix = prefix_sums(raster);
  auto full_block = [&](int ax0, int ay0, int ax1, int ay1) {  // inclusive cell range
    if (ax0 < 0 || ay0 < 0 || ax1 >= raster.nx || ay1 >= raster.ny) return false;
    std::int64_t want = static_cast<std::int64_t>(ax1 - ax0 + 1) * (ay1 - ay0 + 1);
    const auto& p = prefix;
    auto at = [&](int ix, int iy) { return p[static_cast<std::size_t>(iy) * (raster.nx + 1) + ix]; };
    std::int64_t got = at(ax1 + 1, ay1 + 1) - at(ax0, ay1 + 1) - at(ax1 + 1, ay0) + at(ax0, ay0);
    return got == want;
  };
  // Half side (in cells) of the largest square inscribed in the rho-disk.
  const int ki = std::max(1, static_cast<int>(std::floor(rho / (raster.eps * std::sqrt(2.0)))) - 1);

  for (int iy = 0; iy < raster.ny; ++iy) {
    for (int ix = 0; ix < raster.nx; ++ix) {
      if (!raster.occupied(ix, iy)) continue;
      // Quick accept: circumscribed square fully occupied implies the disk is.
      if (full_block(ix - k, iy - k, ix + k, iy + k)) return raster.cell_center(ix, iy);
      // Quick reject: inscribed square not fully occupied.
      if (!full_block(ix - ki, iy - ki, ix + ki, iy + ki)) continue;
      // Exact per-cell disk check.
      Point c = raster.cell_center(ix, iy);
      bool ok = true;
      for (int jy = iy - k; jy <= iy + k && ok; ++jy) {
        for (int jx = ix - k; jx <= ix + k; ++jx) {
          // Cells meeting the disk interior must be occupied: nearest-point test.
          double nx = std::max(0.0, std::max(raster.window.x0 + jx * raster.eps - c.x,
                                             c.x - (raster.window.x0 + (jx + 1) * raster.eps)));
          double ny = std::max(0.0, std::max(raster.window.y0 + jy * raster.eps - c.y,
                                             c.y - (raster.window.y0 + (jy + 1) * raster.eps)));
          if (nx * nx + ny * ny < rho * rho) {
            if (jx < 0 || jy < 0 || jx >= raster.nx || jy >= raster.ny || !raster.occupied(jx, jy)) {
              ok = false;
              break;
            }
          }
        }
      }
      if (ok) return c;
    }
  }
  return std::nullopt;
}

McEstimate random_circle_mc(const BoxCover& cover, const Rect& window, double radius,
                            std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::domain_error("random_circle_mc: trials must be >= 1");
  if (!(radius > 0)) throw std::domain_error("random_circle_mc: radius must be positive");
  const double side = to_double(cover.side);
  std::vector<Point> corners(cover.boxes.size());
  for (std::size_t i = 0; i < cover.boxes.size(); ++i)
    corners[i] = {to_double(cover.boxes[i].x), to_double(cover.boxes[i].y)};

  CounterRng rng(seed);
  std::int64_t hits = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    double cx = window.x0 + rng.double_at(2 * t) * window.width();
    double cy = window.y0 + rng.double_at(2 * t + 1) * window.height();
    for (const auto& b : corners) {
      // Exact circle/rectangle test: hit iff min dist <= radius <= max dist.
      double ax = std::abs(cx - (b.x + side / 2.0));
      double ay = std::abs(cy - (b.y + side / 2.0));
      if (ax > radius + side || ay > radius + side) continue;  // cheap reject
      double dx = std::max(0.0, ax - side / 2.0);
      double dy = std::max(0.0, ay - side / 2.0);
      double min_d2 = dx * dx + dy * dy;
      if (min_d2 > radius * radius) continue;
      double fx = ax + side / 2.0, fy = ay + side / 2.0;
      double max_d2 = fx * fx + fy * fy;
      if (max_d2 >= radius * radius) {
        ++hits;
        break;
      }
    }
  }
  McEstimate est;
  est.hits = hits;
  est.trials = trials;
  est.seed = seed;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
  est.ci95_halfwidth = 1.96 * std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
  return est;
}

std::string raster_to_pgm(const GridRaster& raster) {
  std::ostringstream out;
  out << "P5\n" << raster.nx << ' ' << raster.ny << "\n255\n";
  for (int iy = raster.ny - 1; iy >= 0; --iy)
    for (int ix = 0; ix < raster.nx; ++ix)
      out.put(raster.occupied(ix, iy) ? static_cast<char>(255) : static_cast<char>(0));
  return out.str();
}

}  // namespace fractal
