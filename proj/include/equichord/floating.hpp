#pragma once

// Cutting hyperplanes, floating bodies and floating equilibrium for bodies of
// revolution (d = 3) and planar bodies (d = 2) of uniform density.
//
// For a direction xi and level t the submerged part is K ∩ {p·xi <= t}; the
// cutting level is the t at which it has volume delta.

#include <vector>

#include <Eigen/Core>

#include "equichord/body_spec.hpp"
#include "equichord/geometry.hpp"

namespace equichord {

// Volume to cut off, either absolute or as a fraction of vol_d(K).
struct CutSpec {
  enum class Convention { Absolute, Fraction };

  Convention convention = Convention::Fraction;
  double value = 0.0;

  static CutSpec absolute(double delta) { return {Convention::Absolute, delta}; }
  static CutSpec fraction(double f) { return {Convention::Fraction, f}; }

  // Absolute delta for a body of the given volume; BadDelta unless it lies
  // in (0, volume).
  double resolve(double volume) const;
};

struct FloatingBodyApprox {
  std::vector<Direction> directions;
  std::vector<double> levels;                 // t(xi) per direction
  std::vector<Eigen::VectorXd> inner_points;  // boundary of ∩ H+(xi) hit along -xi
  Eigen::VectorXd ray_origin;                 // centroid of K
};

struct DupinReport {
  std::vector<double> mismatches;  // |vol(K ∩ H-) - delta| / vol(K) per direction
  std::vector<int> flagged;        // directions above tolerance
  double max_mismatch = 0.0;
  double tolerance = 1e-6;
  bool ok() const { return flagged.empty(); }
};

struct EquilibriumReport {
  Direction direction;
  double level = 0.0;
  Eigen::VectorXd submerged_centroid;
  Eigen::VectorXd body_centroid;
  // |component of (C_delta - C_K) orthogonal to xi| / |C_delta - C_K|
  double residual = 0.0;
  bool centroid_coincidence = false;
};

double body_volume(const Body& body);
Eigen::VectorXd body_centroid(const Body& body);

// (min, max) of p·xi over the body.
std::pair<double, double> support_interval(const Body& body, const Direction& xi);

// vol_d(K ∩ {p·xi <= t}).
double cap_volume(const Body& body, const Direction& xi, double t);

double cutting_level(const Body& body, const Direction& xi, const CutSpec& cut);

Eigen::VectorXd submerged_centroid(const Body& body, const Direction& xi, const CutSpec& cut);

// Evenly spaced angles for d = 2, Fibonacci sphere for d = 3.
std::vector<Direction> direction_grid(int dim, int count);

FloatingBodyApprox convex_floating_body(const Body& body, const CutSpec& cut, int n_dirs);

DupinReport dupin_check(const Body& body, const FloatingBodyApprox& approx, const CutSpec& cut,
                        double tolerance = 1e-6);

std::vector<EquilibriumReport> equilibrium_scan(const Body& body, const CutSpec& cut, int n_dirs);

// Rigid translation; bodies of revolution only move along their axis.
Body translated(const Body& body, const Eigen::VectorXd& shift);

}  // namespace equichord
