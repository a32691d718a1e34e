#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fractal/rational.hpp"

namespace fractal {

/// Planar homothety x -> ratio*x + translation. No rotation, no reflection.
struct Homothety2 {
  Rational ratio;  // in (0,1)
  RationalPoint translation;
};

/// 1-D homothety x -> ratio*x + translation.
struct Homothety1 {
  Rational ratio;
  Rational translation;
};

struct IfsSystem {
  std::vector<Homothety2> maps;
  std::optional<Rational> common_ratio;  // set when all ratios agree

  static IfsSystem from_maps(std::vector<Homothety2> maps);
};

struct IfsSystem1D {
  std::vector<Homothety1> maps;
  std::optional<Rational> common_ratio;
};

/// Level-n cover of a 2-D attractor: equal-sided axis-aligned squares,
/// stored by lower-left corner in canonical (sorted, deduplicated) order.
struct BoxCover {
  int depth = 0;
  Rational side;
  std::vector<RationalPoint> boxes;
};

/// 1-D analogue: intervals [left, left+side].
struct IntervalCover {
  int depth = 0;
  Rational side;
  std::vector<Rational> lefts;
};

/// Covers larger than this many boxes are refused up front.
inline constexpr std::uint64_t kMaxCoverBoxes = std::uint64_t(1) << 24;

/// Level-`depth` intervals of the symmetric Cantor set C_gamma,
/// left endpoints (1-gamma) * sum a_k gamma^(k-1) over binary words a.
IntervalCover cantor_intervals(const Rational& gamma, int depth);

/// The two-map IFS {gamma*x, gamma*x + (1-gamma)} on [0,1].
IfsSystem1D cantor_ifs(const Rational& gamma);

/// Product cover C_gamma x C_gamma at level `depth`: 4^depth squares.
BoxCover four_corner_cover(const Rational& gamma, int depth);

/// Axis-aligned bounding square of the attractor (lower-left corner + side).
struct BoundingSquare {
  RationalPoint origin;
  Rational side;
};
BoundingSquare bounding_square(const IfsSystem& system);

/// Images of the bounding square under all length-`depth` compositions,
/// deduplicated. Requires a common contraction ratio.
BoxCover ifs_cover(const IfsSystem& system, int depth);

/// log N / (-log lambda) for an N-map equal-ratio system.
double similarity_dimension(const IfsSystem& system);
double similarity_dimension(std::size_t map_count, double ratio);

/// True iff the depth-level boxes of distinct first-generation branches have
/// pairwise disjoint interiors (shared boundaries do not count as overlap).
bool verify_ssc(const IfsSystem& system, int depth);

/// Scalar projection of the system onto the unit vector (cos theta, sin theta).
/// The rounded doubles cos(theta), sin(theta) are taken as the exact direction,
/// so coincidences constructed in rational arithmetic survive projection.
/// Duplicate maps are retained.
IfsSystem1D projected_ifs(const IfsSystem& system, double theta);

/// Same, but with an explicit exact direction (dx, dy); the projection of a
/// point p is dx*p.x + dy*p.y (lengths come out scaled by |(dx,dy)|).
IfsSystem1D projected_ifs(const IfsSystem& system, const Rational& dx, const Rational& dy);

enum class SharedProjectionMode { APrime, BPrime };

struct SharedProjectionOptions {
  /// Total map count N (even). Defaults to max(2*n_angles, 4): with only two
  /// maps and ratio > 1/2 the first-generation images always overlap, so the
  /// APrime range would be unsatisfiable.
  std::optional<std::size_t> n_maps;
  /// Lattice step for translation search; default 1/(4N).
  std::optional<Rational> lattice_step;
  std::uint64_t max_attempts = 20000;
  std::uint64_t seed = 1;
};

struct SharedProjectionPair {
  double angle = 0.0;
  RationalPoint direction;  // exact (cos, sin) as stored doubles
  std::size_t first = 0;    // indices into system.maps
  std::size_t second = 0;
};

struct SharedProjectionSystem {
  IfsSystem system;
  std::vector<SharedProjectionPair> pairs;
  std::uint64_t attempts = 0;
};

struct ConstructionFailure : std::runtime_error {
  std::uint64_t attempts;
  ConstructionFailure(const std::string& what, std::uint64_t attempts)
      : std::runtime_error(what), attempts(attempts) {}
};

/// Equal-ratio system where for each angle alpha_i one designated map pair has
/// exactly equal scalar projections onto (cos alpha_i, sin alpha_i), and the
/// strong separation certificate verify_ssc(., 1) holds. Translations are
/// searched on a deterministic seeded lattice; first satisfying assignment wins.
SharedProjectionSystem shared_projection_ifs(const std::vector<double>& angles, const Rational& lambda,
                            SharedProjectionMode mode, const SharedProjectionOptions& options = {});

/// Text round-trip: one map per line, "ratio tx ty" (rationals or decimals).
std::string ifs_to_text(const IfsSystem& system);
IfsSystem ifs_from_text(const std::string& text);

}  // namespace fractal
