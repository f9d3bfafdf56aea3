#include "equichord/billiard.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "equichord/equichordal.hpp"
#include "equichord/error.hpp"
#include "equichord/numeric.hpp"

namespace equichord {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr int kTangentScan = 720;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

void require_state(double r, double c) {
  if (!(c > 0.0 && r > 0.0 && r < c)) {
    throw Error(ErrorCode::BadState, "billiard state needs 0 < r < c (r=" + std::to_string(r) +
                                         ", c=" + std::to_string(c) + ")");
  }
}

double angle_about(const PlanarBody& body, const Vec2& p) {
  const Vec2 v = p - body.basepoint();
  return std::atan2(v.y(), v.x());
}

}  // namespace

double rotation_number(double r, double c) {
  require_state(r, c);
  return std::atan(c - r) + std::atan(r);
}

BilliardState disc_step(const BilliardState& state) {
  require_state(state.r, state.chord_total);
  const double rest = state.chord_total - state.r;
  return {state.theta + 2.0 * std::atan(rest), rest, state.chord_total};
}

ChordStep general_step(const PlanarBody& outer, const PlanarBody& inner, const Vec2& beta,
                       const std::optional<Vec2>& prev_tangency) {
  if (contains(inner, beta)) {
    throw Error(ErrorCode::InsideInner, "start point lies inside the inner body");
  }
  // The line from beta touches the inner boundary where the position
  // relative to beta is parallel to the boundary tangent.
  const auto touch = [&](double phi) {
    return cross(inner.boundary_point(phi) - beta, inner.boundary_tangent(phi));
  };
  std::vector<Vec2> candidates;
  double prev_phi = 0.0;
  double prev_v = touch(0.0);
  for (int k = 1; k <= kTangentScan; ++k) {
    const double phi = kTwoPi * k / kTangentScan;
    const double v = touch(phi);
    if ((prev_v < 0.0) != (v < 0.0)) {
      const double root = numeric::bisect_root(touch, prev_phi, phi, prev_v, v, kRootTolerance);
      candidates.push_back(inner.boundary_point(root));
    }
    prev_phi = phi;
    prev_v = v;
  }
  if (candidates.size() != 2) {
    throw Error(ErrorCode::TangencyFailure, "expected two tangent lines from the start point, found " +
                                                std::to_string(candidates.size()));
  }

  Vec2 kappa;
  if (prev_tangency) {
    const double d0 = (candidates[0] - *prev_tangency).norm();
    const double d1 = (candidates[1] - *prev_tangency).norm();
    kappa = d0 > d1 ? candidates[0] : candidates[1];
  } else {
    const Vec2 to_center = inner.basepoint() - beta;
    kappa = cross(candidates[0] - beta, to_center) > 0.0 ? candidates[0] : candidates[1];
  }
  const Vec2 dir = (kappa - beta).normalized();
  const Chord2 chord = chord_endpoints(outer, kappa, dir);
  return {chord.zeta_plus, kappa};
}

OrbitRecord orbit(const PlanarBody& outer, const PlanarBody& inner, const Vec2& beta0,
                  int max_steps, double closure_tol) {
  if (max_steps < 1) throw Error(ErrorCode::UsageError, "orbit needs at least one step");
  OrbitRecord rec;
  rec.betas.reserve(max_steps + 1);
  rec.tangencies.reserve(max_steps);
  rec.chord_lengths.reserve(max_steps);
  rec.betas.push_back(beta0);

  std::optional<Vec2> prev;
  double unwrapped = 0.0;
  double last_angle = 0.0;
  for (int j = 0; j < max_steps; ++j) {
    const Vec2& beta = rec.betas.back();
    const ChordStep step = general_step(outer, inner, beta, prev);
    if (j > 0 && !rec.closed && (beta - beta0).norm() < closure_tol &&
        (step.kappa - rec.tangencies.front()).norm() < closure_tol) {
      rec.closed = true;
      rec.period = j;
    }
    const double angle = angle_about(inner, step.kappa);
    if (j > 0) {
      double inc = angle - last_angle;
      inc -= kTwoPi * std::floor((inc + kPi) / kTwoPi);
      unwrapped += inc;
    }
    last_angle = angle;
    rec.chord_lengths.push_back((step.beta_next - beta).norm());
    rec.tangencies.push_back(step.kappa);
    rec.betas.push_back(step.beta_next);
    prev = step.kappa;
  }
  if (max_steps > 1) rec.rotation_estimate = unwrapped / (max_steps - 1);
  return rec;
}

PowerChainReport power_chain_check(const PlanarBody& outer, const PlanarBody& inner,
                                   const Vec2& beta0, double power, int steps,
                                   double closure_tol) {
  PowerChainReport rep;
  rep.orbit = orbit(outer, inner, beta0, steps, closure_tol);
  const OrbitRecord& o = rep.orbit;
  rep.chord_lengths = o.chord_lengths;
  rep.power_sums.resize(o.tangencies.size());
  for (std::size_t j = 0; j < o.tangencies.size(); ++j) {
    rep.power_sums[j] = chord_power_value((o.betas[j] - o.tangencies[j]).norm(),
                                          (o.betas[j + 1] - o.tangencies[j]).norm(), power);
  }
  const auto spread = [](const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
  };
  rep.chord_length_spread = spread(rep.chord_lengths);
  rep.power_sum_spread = spread(rep.power_sums);
  return rep;
}

double max_angular_gap(const std::vector<Vec2>& points, const Vec2& center) {
  if (points.empty()) return kTwoPi;
  std::vector<double> angles;
  angles.reserve(points.size());
  for (const auto& p : points) angles.push_back(std::atan2(p.y() - center.y(), p.x() - center.x()));
  std::sort(angles.begin(), angles.end());
  double gap = angles.front() + kTwoPi - angles.back();
  for (std::size_t k = 1; k < angles.size(); ++k) gap = std::max(gap, angles[k] - angles[k - 1]);
  return gap;
}

std::optional<std::pair<long, long>> near_rational(double x, long max_den, double tol) {
  for (long q = 1; q <= max_den; ++q) {
    const double p = std::round(x * static_cast<double>(q));
    if (std::abs(x - p / static_cast<double>(q)) < tol) return std::make_pair(static_cast<long>(p), q);
  }
  return std::nullopt;
}

}  // namespace equichord
