#include "equichord/equichordal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "equichord/error.hpp"
#include "equichord/numeric.hpp"

namespace equichord {

namespace {

constexpr double kPi = std::numbers::pi;

struct FrameSamples {
  TangentFrame frame;
  double alpha = 0.0;
  std::vector<double> values;
};

void check_config(const CheckConfig& cfg) {
  if (cfg.num_frames < 2) throw Error(ErrorCode::UsageError, "num_frames must be >= 2");
  if (cfg.num_section_dirs < 1) throw Error(ErrorCode::UsageError, "num_section_dirs must be >= 1");
  if (!(cfg.tolerance > 0.0)) throw Error(ErrorCode::UsageError, "tolerance must be positive");
  if (cfg.dimension < 2) throw Error(ErrorCode::UsageError, "dimension must be >= 2");
}

CheckReport aggregate(const std::vector<FrameSamples>& frames, double tolerance) {
  std::vector<double> all;
  for (const auto& f : frames) all.insert(all.end(), f.values.begin(), f.values.end());
  CheckReport report;
  report.tolerance = tolerance;
  report.sample_count = all.size();
  if (all.empty()) return report;

  std::vector<double> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  report.constant_estimate = median;

  double worst = -1.0;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const auto& f = frames[k];
    FrameSummary summary;
    summary.index = f.frame.plane_id;
    summary.alpha = f.alpha;
    summary.slope = f.frame.slope;
    summary.tangency_x = f.frame.tangency_x;
    double lo = f.values.front();
    double hi = f.values.front();
    summary.value = f.values.front();
    summary.deviation = std::abs(f.values.front() - median);
    for (double v : f.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      const double dev = std::abs(v - median);
      if (dev > summary.deviation) {
        summary.deviation = dev;
        summary.value = v;
      }
    }
    summary.spread = hi - lo;
    if (summary.deviation > worst) {
      worst = summary.deviation;
      report.worst_frame = f.frame;
    }
    report.per_frame_values.push_back(summary.value);
    report.frames.push_back(summary);
  }
  report.max_deviation = worst;
  return report;
}

// Frame order for a grid of n frames, optionally reversed.  Summaries are
// always reported in ascending grid order.
std::vector<int> frame_order(int n, bool reverse) {
  std::vector<int> order(n);
  for (int k = 0; k < n; ++k) order[k] = reverse ? n - 1 - k : k;
  return order;
}

}  // namespace

bool CheckReport::satisfied() const {
  return max_deviation <= tolerance * std::max(1.0, constant_estimate);
}

double CheckReport::max_frame_spread() const {
  double s = 0.0;
  for (const auto& f : frames) s = std::max(s, f.spread);
  return s;
}

double chord_power_value(double dist_plus, double dist_minus, double power) {
  if (power == 0.0) return dist_plus * dist_minus;
  return std::pow(dist_plus, power) + std::pow(dist_minus, power);
}

CheckReport check_pair_revolution(const RevolutionProfile& outer, const RevolutionProfile& inner,
                                  const CheckConfig& cfg) {
  check_config(cfg);
  const auto [s_lo, s_hi] = slope_range(inner);
  const double a_lo = std::atan(s_lo);
  const double a_hi = std::atan(s_hi);
  const int nf = cfg.num_frames;
  const int nd = cfg.num_section_dirs;

  std::vector<FrameSamples> frames(nf);
  const std::vector<int> order = frame_order(nf, cfg.reverse_frames);
  numeric::parallel_for(static_cast<std::size_t>(nf), [&](std::size_t slot) {
    const int k = order[slot];
    const double alpha = a_lo + (k + 0.5) * (a_hi - a_lo) / nf;
    TangentFrame frame = tangent_frame(inner, std::tan(alpha));
    frame.plane_id = k;
    const Vec3 t = frame.tangency();
    if (!(outer.radius(t.x()) - t.z() > 0.0)) {
      throw Error(ErrorCode::InnerNotContained,
                  "tangency point at x=" + std::to_string(t.x()) + " is not interior to the outer body");
    }
    const Vec3 e1 = frame.direction();
    const Vec3 e2(0.0, 1.0, 0.0);
    FrameSamples fs;
    fs.frame = frame;
    fs.alpha = alpha;
    fs.values.resize(nd);
    // The section is symmetric about the meridian plane, so directions over
    // a half turn cover every chord through the tangency point.
    for (int j = 0; j < nd; ++j) {
      const double phi = kPi * j / nd;
      const Vec3 w = std::cos(phi) * e1 + std::sin(phi) * e2;
      const Chord3 chord = chord_endpoints(outer, t, w);
      fs.values[j] = chord_power_value(chord, cfg.power);
    }
    frames[k] = std::move(fs);
  });
  return aggregate(frames, cfg.tolerance);
}

CheckReport check_pair_planar(const PlanarBody& outer, const PlanarBody& inner,
                              const CheckConfig& cfg) {
  check_config(cfg);
  const int nf = cfg.num_frames;
  std::vector<FrameSamples> frames(nf);
  const std::vector<int> order = frame_order(nf, cfg.reverse_frames);
  numeric::parallel_for(static_cast<std::size_t>(nf), [&](std::size_t slot) {
    const int k = order[slot];
    const double theta = 2.0 * kPi * k / nf;
    const Vec2 q = inner.boundary_point(theta);
    const Vec2 tangent = inner.boundary_tangent(theta);
    if (!contains(outer, q)) {
      throw Error(ErrorCode::InnerNotContained,
                  "inner boundary point at theta=" + std::to_string(theta) + " is outside the outer body");
    }
    const Chord2 chord = chord_endpoints(outer, q, tangent);
    FrameSamples fs;
    fs.frame.plane_id = k;
    fs.frame.slope = tangent.y() / tangent.x();
    fs.frame.tangency_x = q.x();
    fs.frame.tangency_height = q.y();
    fs.frame.intercept = q.y() - fs.frame.slope * q.x();
    fs.alpha = theta;
    fs.values = {chord_power_value(chord, cfg.power)};
    frames[k] = std::move(fs);
  });
  return aggregate(frames, cfg.tolerance);
}

}  // namespace equichord
