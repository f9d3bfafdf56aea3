#pragma once

// Tangent-chord dynamics: from a point beta on the outer boundary, follow the
// line tangent to the inner body until it meets the outer boundary again.

#include <optional>
#include <utility>
#include <vector>

#include "equichord/geometry.hpp"

namespace equichord {

// State of the disc-core map.  The inner body is the unit disc; theta is the
// angle of the current tangency point kappa, r = |beta - kappa| and
// chord_total is the (constant) chord length c.
struct BilliardState {
  double theta = 0.0;
  double r = 0.0;
  double chord_total = 0.0;
};

// nu(r) = atan(c - r) + atan(r).  BadState unless 0 < r < c.
double rotation_number(double r, double c);

// (theta, r, c) -> (theta + 2 atan(c - r), c - r, c).
BilliardState disc_step(const BilliardState& state);

struct ChordStep {
  Vec2 beta_next;
  Vec2 kappa;
};

// One chord from beta.  With no previous tangency the counterclockwise
// tangent is taken; otherwise the tangent whose tangency point is away from
// prev_tangency.
ChordStep general_step(const PlanarBody& outer, const PlanarBody& inner, const Vec2& beta,
                       const std::optional<Vec2>& prev_tangency = std::nullopt);

struct OrbitRecord {
  std::vector<Vec2> betas;          // beta_0 .. beta_n
  std::vector<Vec2> tangencies;     // kappa_0 .. kappa_{n-1}
  std::vector<double> chord_lengths;
  bool closed = false;
  std::optional<int> period;
  // Mean advance of the tangency angle per step (radians).
  double rotation_estimate = 0.0;
};

OrbitRecord orbit(const PlanarBody& outer, const PlanarBody& inner, const Vec2& beta0,
                  int max_steps, double closure_tol = 1e-8);

struct PowerChainReport {
  std::vector<double> chord_lengths;
  std::vector<double> power_sums;  // |beta_j - kappa_j|^i + |kappa_j - beta_{j+1}|^i
  double chord_length_spread = 0.0;
  double power_sum_spread = 0.0;
  OrbitRecord orbit;
};

PowerChainReport power_chain_check(const PlanarBody& outer, const PlanarBody& inner,
                                   const Vec2& beta0, double power, int steps,
                                   double closure_tol = 1e-8);

// Largest gap between the sorted polar angles of the points about center.
double max_angular_gap(const std::vector<Vec2>& points, const Vec2& center);

// Smallest-denominator p/q with q <= max_den and |x - p/q| < tol.
std::optional<std::pair<long, long>> near_rational(double x, long max_den, double tol);

}  // namespace equichord
