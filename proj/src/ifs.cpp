#include "fractal/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fractal/rng.hpp"

namespace fractal {

namespace {

void check_depth(std::size_t n_maps, int depth) {
  if (depth < 0) throw std::domain_error("depth must be nonnegative");
  double boxes = std::pow(static_cast<double>(n_maps), depth);
  if (boxes > static_cast<double>(kMaxCoverBoxes))
    throw std::domain_error("depth " + std::to_string(depth) + " exceeds the cover cap of 2^24 boxes");
}

Rational pow_rational(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

IfsSystem IfsSystem::from_maps(std::vector<Homothety2> maps) {
  if (maps.empty()) throw std::domain_error("IfsSystem requires at least one map");
  for (const auto& m : maps)
    if (!(m.ratio > 0 && m.ratio < 1)) throw std::domain_error("map ratio must lie in (0,1)");
  IfsSystem s;
  s.maps = std::move(maps);
  bool equal = std::all_of(s.maps.begin(), s.maps.end(),
                           [&](const Homothety2& m) { return m.ratio == s.maps.front().ratio; });
  if (equal) s.common_ratio = s.maps.front().ratio;
  return s;
}

IntervalCover cantor_intervals(const Rational& gamma, int depth) {
  if (!(gamma > 0 && gamma <= Rational(1, 2)))
    throw std::domain_error("cantor_intervals: gamma must lie in (0, 1/2]");
  check_depth(2, depth);
  IntervalCover cover;
  cover.depth = depth;
  cover.side = pow_rational(gamma, depth);
  std::vector<Rational> lefts{Rational(0)};
  Rational step = 1 - gamma;  // (1-gamma) * gamma^(k-1)
  for (int k = 0; k < depth; ++k) {
    std::vector<Rational> next;
    next.reserve(lefts.size() * 2);
    for (const auto& l : lefts) {
      next.push_back(l);
      next.push_back(l + step);
    }
    lefts = std::move(next);
    step *= gamma;
  }
  std::sort(lefts.begin(), lefts.end());
  lefts.erase(std::unique(lefts.begin(), lefts.end()), lefts.end());
  cover.lefts = std::move(lefts);
  return cover;
}

IfsSystem1D cantor_ifs(const Rational& gamma) {
  if (!(gamma > 0 && gamma <= Rational(1, 2)))
    throw std::domain_error("cantor_ifs: gamma must lie in (0, 1/2]");
  IfsSystem1D s;
  s.maps = {{gamma, Rational(0)}, {gamma, 1 - gamma}};
  s.common_ratio = gamma;
  return s;
}

BoxCover four_corner_cover(const Rational& gamma, int depth) {
  check_depth(4, depth);
  IntervalCover line = cantor_intervals(gamma, depth);
  BoxCover cover;
  cover.depth = depth;
  cover.side = line.side;
  cover.boxes.reserve(line.lefts.size() * line.lefts.size());
  for (const auto& x : line.lefts)
    for (const auto& y : line.lefts) cover.boxes.push_back({x, y});
  std::sort(cover.boxes.begin(), cover.boxes.end());
  return cover;
}

BoundingSquare bounding_square(const IfsSystem& system) {
  if (!system.common_ratio) throw std::domain_error("bounding_square: mixed contraction ratios unsupported");
  const Rational lambda = *system.common_ratio;
  Rational minx = system.maps.front().translation.x, maxx = minx;
  Rational miny = system.maps.front().translation.y, maxy = miny;
  for (const auto& m : system.maps) {
    minx = std::min(minx, m.translation.x);
    maxx = std::max(maxx, m.translation.x);
    miny = std::min(miny, m.translation.y);
    maxy = std::max(maxy, m.translation.y);
  }
  // Attractor points are sum_k lambda^k t_{w_k}; each coordinate lies in
  // [min_t/(1-lambda), max_t/(1-lambda)].
  Rational scale = 1 / (1 - lambda);
  BoundingSquare b;
  b.origin = {minx * scale, miny * scale};
  b.side = std::max((maxx - minx) * scale, (maxy - miny) * scale);
  return b;
}

namespace {

std::vector<RationalPoint> word_translations(const IfsSystem& system, int depth) {
  const Rational lambda = *system.common_ratio;
  std::vector<RationalPoint> acc{{Rational(0), Rational(0)}};
  for (int level = 0; level < depth; ++level) {
    std::vector<RationalPoint> next;
    next.reserve(acc.size() * system.maps.size());
    for (const auto& m : system.maps)
      for (const auto& c : acc)
        next.push_back({m.translation.x + lambda * c.x, m.translation.y + lambda * c.y});
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

BoxCover ifs_cover(const IfsSystem& system, int depth) {
  if (!system.common_ratio) throw std::domain_error("ifs_cover: mixed contraction ratios unsupported");
  check_depth(system.maps.size(), depth);
  const Rational lambda = *system.common_ratio;
  const BoundingSquare bounds = bounding_square(system);
  const Rational shrink = pow_rational(lambda, depth);

  BoxCover cover;
  cover.depth = depth;
  cover.side = shrink * bounds.side;
  for (auto& t : word_translations(system, depth))
    cover.boxes.push_back({t.x + shrink * bounds.origin.x, t.y + shrink * bounds.origin.y});
  std::sort(cover.boxes.begin(), cover.boxes.end());
  cover.boxes.erase(std::unique(cover.boxes.begin(), cover.boxes.end()), cover.boxes.end());
  return cover;
}

double similarity_dimension(std::size_t map_count, double ratio) {
  return std::log(static_cast<double>(map_count)) / -std::log(ratio);
}

double similarity_dimension(const IfsSystem& system) {
  if (!system.common_ratio) throw std::domain_error("similarity_dimension: mixed ratios unsupported");
  return similarity_dimension(system.maps.size(), to_double(*system.common_ratio));
}

namespace {

bool interiors_overlap(const RationalPoint& a, const RationalPoint& b, const Rational& side) {
  return a.x < b.x + side && b.x < a.x + side && a.y < b.y + side && b.y < a.y + side;
}

}  // namespace

bool verify_ssc(const IfsSystem& system, int depth) {
  if (depth < 1) throw std::domain_error("verify_ssc: depth must be >= 1");
  if (!system.common_ratio) throw std::domain_error("verify_ssc: mixed ratios unsupported");
  check_depth(system.maps.size(), depth);
  const Rational lambda = *system.common_ratio;
  const BoundingSquare bounds = bounding_square(system);
  const Rational shrink = pow_rational(lambda, depth);
  const Rational side = shrink * bounds.side;

  // Depth-level boxes of each first-generation branch.
  std::vector<RationalPoint> sub = word_translations(system, depth - 1);
  std::vector<std::vector<RationalPoint>> branch(system.maps.size());
  for (std::size_t i = 0; i < system.maps.size(); ++i) {
    const auto& t = system.maps[i].translation;
    for (const auto& c : sub)
      branch[i].push_back({t.x + lambda * c.x + shrink * bounds.origin.x,
                           t.y + lambda * c.y + shrink * bounds.origin.y});
  }
  for (std::size_t i = 0; i < branch.size(); ++i)
    for (std::size_t j = i + 1; j < branch.size(); ++j)
      for (const auto& a : branch[i])
        for (const auto& b : branch[j])
          if (interiors_overlap(a, b, side)) return false;
  return true;
}

IfsSystem1D projected_ifs(const IfsSystem& system, double theta) {
  return projected_ifs(system, rational_from_double(std::cos(theta)),
                       rational_from_double(std::sin(theta)));
}

IfsSystem1D projected_ifs(const IfsSystem& system, const Rational& dx, const Rational& dy) {
  IfsSystem1D out;
  out.maps.reserve(system.maps.size());
  for (const auto& m : system.maps)
    out.maps.push_back({m.ratio, dx * m.translation.x + dy * m.translation.y});
  out.common_ratio = system.common_ratio;
  return out;
}

SharedProjectionSystem shared_projection_ifs(const std::vector<double>& angles, const Rational& lambda,
                            SharedProjectionMode mode, const SharedProjectionOptions& options) {
  const std::size_t n = angles.size();
  if (n < 1) throw std::domain_error("shared_projection_ifs: at least one angle required");
  std::size_t N = options.n_maps.value_or(std::max<std::size_t>(2 * n, 4));
  if (N % 2 != 0 || N < 2 * n)
    throw std::domain_error("shared_projection_ifs: map count must be even and >= 2 * |angles|");

  const Rational lo(1, static_cast<int>(N));
  const Rational hi(1, static_cast<int>(N - 1));
  if (mode == SharedProjectionMode::APrime) {
    if (!(lambda > lo && lambda < hi))
      throw std::domain_error("shared_projection_ifs: mode a-prime requires lambda in (1/N, 1/(N-1))");
  } else {
    if (!(lambda > 0 && lambda < lo))
      throw std::domain_error("shared_projection_ifs: mode b-prime requires lambda in (0, 1/N)");
  }

  const Rational step = options.lattice_step.value_or(Rational(1, 4 * static_cast<int>(N)));
  const std::int64_t grid = (Rational(1) / step).convert_to<std::int64_t>();  // lattice covers [0,1]

  std::vector<RationalPoint> dirs;
  dirs.reserve(n);
  for (double a : angles)
    dirs.push_back({rational_from_double(std::cos(a)), rational_from_double(std::sin(a))});

  CounterRng rng(options.seed);
  const std::size_t K = N / 2;
  for (std::uint64_t attempt = 1; attempt <= options.max_attempts; ++attempt) {
    std::vector<Homothety2> maps;
    std::vector<SharedProjectionPair> pairs;
    maps.reserve(N);
    for (std::size_t k = 0; k < K; ++k) {
      RationalPoint base{Rational(static_cast<int>(rng.next_below(grid + 1))) * step,
                         Rational(static_cast<int>(rng.next_below(grid + 1))) * step};
      maps.push_back({lambda, base});
      if (k < n) {
        // Second map of the pair sits at base + sigma * (-sin, cos): its
        // projection onto (cos, sin) equals the first map's exactly.
        std::int64_t s = static_cast<std::int64_t>(rng.next_below(2 * grid)) - grid;
        if (s == 0) s = grid;
        Rational sigma = Rational(s) * step;
        RationalPoint other{base.x - sigma * dirs[k].y, base.y + sigma * dirs[k].x};
        pairs.push_back({angles[k], dirs[k], maps.size() - 1, maps.size()});
        maps.push_back({lambda, other});
      } else {
        RationalPoint other{Rational(static_cast<int>(rng.next_below(grid + 1))) * step,
                            Rational(static_cast<int>(rng.next_below(grid + 1))) * step};
        maps.push_back({lambda, other});
      }
    }
    bool distinct = true;
    for (std::size_t i = 0; i < maps.size() && distinct; ++i)
      for (std::size_t j = i + 1; j < maps.size(); ++j)
        if (maps[i].translation == maps[j].translation) {
          distinct = false;
          break;
        }
    if (!distinct) continue;
    IfsSystem sys = IfsSystem::from_maps(maps);
    if (!verify_ssc(sys, 1)) continue;
    return {std::move(sys), std::move(pairs), attempt};
  }
  throw ConstructionFailure("shared_projection_ifs: no separating translation assignment found in " +
                                std::to_string(options.max_attempts) + " attempts",
                            options.max_attempts);
}

std::string ifs_to_text(const IfsSystem& system) {
  std::ostringstream out;
  for (const auto& m : system.maps)
    out << m.ratio << ' ' << m.translation.x << ' ' << m.translation.y << '\n';
  return out.str();
}

IfsSystem ifs_from_text(const std::string& text) {
  std::vector<Homothety2> maps;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string ratio, tx, ty;
    if (!(row >> ratio >> tx >> ty))
      throw std::domain_error("ifs_from_text: expected 'ratio tx ty' per line, got '" + line + "'");
    maps.push_back({parse_rational(ratio), {parse_rational(tx), parse_rational(ty)}});
  }
  return IfsSystem::from_maps(std::move(maps));
}

}  // namespace fractal
