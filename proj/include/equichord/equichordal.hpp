#pragma once

// Numerical test of the i-equichordal property of a pair (K, L): for every
// line tangent to L, dist^i(tangency, zeta+) + dist^i(tangency, zeta-) is the
// same constant (for i = 0 the product of the distances is used instead).

#include <cstddef>
#include <vector>

#include "equichord/geometry.hpp"

namespace equichord {

struct CheckConfig {
  double power = 4.0;  // i; 0 selects the product form
  int dimension = 3;   // d
  int num_frames = 256;
  int num_section_dirs = 128;
  double tolerance = 1e-6;
  // Visit the frame grid back to front.  The report must not change.
  bool reverse_frames = false;
};

struct FrameSummary {
  int index = 0;
  double alpha = 0.0;  // frame angle (slope angle, or boundary angle for planar pairs)
  double slope = 0.0;
  double tangency_x = 0.0;
  double value = 0.0;      // sample in this frame farthest from the global constant
  double deviation = 0.0;  // |value - constant_estimate|
  double spread = 0.0;     // max - min of the frame's own samples
};

struct CheckReport {
  double constant_estimate = 0.0;  // median over all samples
  double max_deviation = 0.0;
  TangentFrame worst_frame;
  std::vector<double> per_frame_values;
  std::vector<FrameSummary> frames;
  std::size_t sample_count = 0;
  double tolerance = 0.0;

  // max_deviation <= tolerance * max(1, constant_estimate)
  bool satisfied() const;
  // Largest within-frame spread: small when every section is equichordal
  // about its own constant even if the constants differ between sections.
  double max_frame_spread() const;
};

double chord_power_value(double dist_plus, double dist_minus, double power);

template <int N>
double chord_power_value(const Chord<N>& chord, double power) {
  return chord_power_value(chord.dist_plus, chord.dist_minus, power);
}

// dist_minus / (dist_plus + dist_minus).
template <int N>
double midpoint_ratio(const Chord<N>& chord) {
  return chord.dist_minus / (chord.dist_plus + chord.dist_minus);
}

CheckReport check_pair_revolution(const RevolutionProfile& outer, const RevolutionProfile& inner,
                                  const CheckConfig& cfg = {});

CheckReport check_pair_planar(const PlanarBody& outer, const PlanarBody& inner,
                              const CheckConfig& cfg = {});

}  // namespace equichord
