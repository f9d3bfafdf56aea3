#include "equichord/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Geometry>

#include "equichord/error.hpp"
#include "equichord/numeric.hpp"

namespace equichord {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Relative offset from the ends of a profile when probing g'.
constexpr double kEndOffset = 1e-12;

constexpr int kScanSamples = 64;

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

struct LineExits {
  double t_minus;
  double t_plus;
};

// Exits of the line t -> indicator(t) from the body {indicator < 0}, found by
// a coarse scan over [-extent, extent] and bisection on the first sign change
// on each side.  Re-entry after the first exit means the body is not convex.
template <class Indicator>
LineExits line_exits(const Indicator& indicator, double extent, double tol) {
  double base = 0.0;
  const double f0 = indicator(0.0);
  if (!(f0 < 0.0)) {
    double best = f0;
    for (int k = -2 * kScanSamples; k <= 2 * kScanSamples; ++k) {
      const double t = extent * k / (2.0 * kScanSamples);
      const double v = indicator(t);
      if (v < best) {
        best = v;
        base = t;
      }
    }
    if (!(best < 0.0)) {
      if (std::abs(f0) <= 1e-9 * extent) {
        throw Error(ErrorCode::DegenerateChord, "line supports the body");
      }
      throw Error(ErrorCode::NoIntersection, "line misses the body");
    }
  }
  double exits[2] = {0.0, 0.0};
  for (int side = 0; side < 2; ++side) {
    const double sgn = side == 0 ? 1.0 : -1.0;
    const double reach = extent + std::abs(base);
    double prev_t = base;
    double prev_v = indicator(base);
    bool found = false;
    for (int k = 1; k <= kScanSamples; ++k) {
      const double t = base + sgn * reach * k / kScanSamples;
      const double v = indicator(t);
      if (!found) {
        if (v >= 0.0) {
          exits[side] = numeric::bisect_root(indicator, prev_t, t, prev_v, v, tol);
          found = true;
        }
        prev_t = t;
        prev_v = v;
      } else if (v < 0.0) {
        throw Error(ErrorCode::ConvexityViolation,
                    "line re-enters the body at t=" + fmt_double(t));
      }
    }
    if (!found) throw Error(ErrorCode::InvalidBody, "body extends beyond its bounding radius");
  }
  if (exits[0] - exits[1] < 10.0 * tol) {
    throw Error(ErrorCode::DegenerateChord, "chord endpoints coincide");
  }
  return {exits[1], exits[0]};
}

double revolution_indicator(const RevolutionProfile& body, const Vec3& p) {
  const double rr = std::hypot(p.y(), p.z());
  if (p.x() < body.x_min()) return rr + (body.x_min() - p.x());
  if (p.x() > body.x_max()) return rr + (p.x() - body.x_max());
  return rr - body.radius(p.x());
}

double planar_indicator(const PlanarBody& body, const Vec2& p) {
  const Vec2 v = p - body.basepoint();
  const double r = v.norm();
  if (r == 0.0) return -body.rho(0.0);
  return r - body.rho(std::atan2(v.y(), v.x()));
}

template <int N, class Indicator>
Chord<N> make_chord(const Indicator& indicator, const Eigen::Matrix<double, N, 1>& point,
                    const Eigen::Matrix<double, N, 1>& dir, double extent, double tol) {
  const double norm = dir.norm();
  if (!(norm > 0.0)) throw Error(ErrorCode::NoIntersection, "zero line direction");
  const Eigen::Matrix<double, N, 1> u = dir / norm;
  const auto along = [&](double t) { return indicator(Eigen::Matrix<double, N, 1>(point + t * u)); };
  const LineExits ex = line_exits(along, extent, tol);
  Chord<N> c;
  c.tangency = point;
  c.zeta_plus = point + ex.t_plus * u;
  c.zeta_minus = point + ex.t_minus * u;
  c.dist_plus = std::abs(ex.t_plus);
  c.dist_minus = std::abs(ex.t_minus);
  return c;
}

}  // namespace

RevolutionProfile::RevolutionProfile(double x_min, double x_max, Fn radius, Fn derivative,
                                     std::string label)
    : x_min_(x_min),
      x_max_(x_max),
      radius_(std::move(radius)),
      derivative_(std::move(derivative)),
      label_(std::move(label)),
      bounding_radius_(0.0) {
  if (!(x_max_ > x_min_)) throw Error(ErrorCode::InvalidBody, "empty profile interval");
  if (!radius_ || !derivative_) throw Error(ErrorCode::InvalidBody, "profile function missing");
  double fmax = 0.0;
  for (int k = 0; k <= 512; ++k) {
    fmax = std::max(fmax, this->radius(x_min_ + (x_max_ - x_min_) * k / 512.0));
  }
  // Concave profiles exceed their sampled maximum by at most one cell's rise.
  fmax = 1.01 * fmax + 1e-3 * (x_max_ - x_min_);
  bounding_radius_ = std::hypot(0.5 * (x_max_ - x_min_), fmax);
}

double RevolutionProfile::radius(double x) const {
  if (!(x >= x_min_ && x <= x_max_)) return 0.0;
  return std::max(0.0, radius_(x));
}

double RevolutionProfile::derivative(double x) const { return derivative_(x); }

RevolutionProfile RevolutionProfile::translated(double dx) const {
  return RevolutionProfile(
      x_min_ + dx, x_max_ + dx, [f = radius_, dx](double x) { return f(x - dx); },
      [d = derivative_, dx](double x) { return d(x - dx); }, label_);
}

RevolutionProfile RevolutionProfile::scaled(double lambda) const {
  return RevolutionProfile(
      lambda * x_min_, lambda * x_max_, [f = radius_, lambda](double x) { return lambda * f(x / lambda); },
      [d = derivative_, lambda](double x) { return d(x / lambda); }, label_);
}

PlanarBody::PlanarBody(Vec2 basepoint, Fn rho, Fn rho_prime, std::string label)
    : basepoint_(std::move(basepoint)),
      rho_(std::move(rho)),
      rho_prime_(std::move(rho_prime)),
      label_(std::move(label)),
      bounding_radius_(0.0) {
  if (!rho_) throw Error(ErrorCode::InvalidBody, "radial function missing");
  double rmax = 0.0;
  for (int k = 0; k < 1024; ++k) {
    const double r = rho_(kTwoPi * k / 1024.0);
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidBody, "radial function must be positive");
    rmax = std::max(rmax, r);
  }
  bounding_radius_ = 1.01 * rmax;
}

double PlanarBody::rho_prime(double theta) const {
  if (rho_prime_) return rho_prime_(theta);
  constexpr double h = 1e-5;
  return (rho_(theta + h) - rho_(theta - h)) / (2.0 * h);
}

Vec2 PlanarBody::boundary_point(double theta) const {
  return basepoint_ + rho_(theta) * Vec2(std::cos(theta), std::sin(theta));
}

Vec2 PlanarBody::boundary_tangent(double theta) const {
  const Vec2 u(std::cos(theta), std::sin(theta));
  const Vec2 n(-std::sin(theta), std::cos(theta));
  return rho_prime(theta) * u + rho_(theta) * n;
}

PlanarBody PlanarBody::translated(const Vec2& v) const {
  return PlanarBody(basepoint_ + v, rho_, rho_prime_, label_);
}

PlanarBody PlanarBody::scaled(double lambda) const {
  Fn rp;
  if (rho_prime_) rp = [d = rho_prime_, lambda](double t) { return lambda * d(t); };
  return PlanarBody(lambda * basepoint_, [f = rho_, lambda](double t) { return lambda * f(t); },
                    std::move(rp), label_);
}

PlanarBody PlanarBody::rotated(double angle) const {
  const Eigen::Rotation2Dd rot(angle);
  Fn rp;
  if (rho_prime_) rp = [d = rho_prime_, angle](double t) { return d(t - angle); };
  return PlanarBody(rot * basepoint_, [f = rho_, angle](double t) { return f(t - angle); },
                    std::move(rp), label_);
}

Vec3 TangentFrame::direction() const {
  return Vec3(1.0, 0.0, slope) / std::sqrt(1.0 + slope * slope);
}

Direction::Direction(Eigen::VectorXd components) : components_(std::move(components)) {
  const double n = components_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::InvalidBody, "zero direction");
  components_ /= n;
}

std::pair<double, double> slope_range(const RevolutionProfile& inner) {
  const double w = inner.x_max() - inner.x_min();
  const double lo = inner.x_min() + kEndOffset * w;
  const double hi = inner.x_max() - kEndOffset * w;
  return {inner.derivative(hi), inner.derivative(lo)};
}

TangentFrame tangent_frame(const RevolutionProfile& inner, double s) {
  const double w = inner.x_max() - inner.x_min();
  const double lo = inner.x_min() + kEndOffset * w;
  const double hi = inner.x_max() - kEndOffset * w;
  const double d_lo = inner.derivative(lo) - s;
  const double d_hi = inner.derivative(hi) - s;
  if (!(d_lo > 0.0 && d_hi < 0.0)) {
    throw Error(ErrorCode::NoTangency, "slope " + fmt_double(s) + " outside the range of g'");
  }
  const auto slope_gap = [&](double x) { return inner.derivative(x) - s; };
  const double a = numeric::bisect_root(slope_gap, lo, hi, d_lo, d_hi, 1e-15 * w);
  const double probe = 1e-7 * w;
  const double left = inner.derivative(std::max(lo, a - probe));
  const double right = inner.derivative(std::min(hi, a + probe));
  if (left - right <= 1e-12 * std::max(1.0, std::abs(s))) {
    throw Error(ErrorCode::FlatBoundary, "g' is constant near x=" + fmt_double(a));
  }
  TangentFrame frame;
  frame.slope = s;
  frame.tangency_x = a;
  frame.tangency_height = inner.radius(a);
  frame.intercept = frame.tangency_height - s * a;
  return frame;
}

double profile_apex(const RevolutionProfile& profile) {
  return tangent_frame(profile, 0.0).tangency_x;
}

std::pair<RevolutionProfile, RevolutionProfile> normalize_pair(const RevolutionProfile& outer,
                                                               const RevolutionProfile& inner) {
  const double shift = -profile_apex(inner);
  return {outer.translated(shift), inner.translated(shift)};
}

bool contains(const RevolutionProfile& body, const Vec3& p) {
  return revolution_indicator(body, p) <= 0.0;
}

bool contains(const PlanarBody& body, const Vec2& p) { return planar_indicator(body, p) <= 0.0; }

Chord3 chord_endpoints(const RevolutionProfile& outer, const Vec3& point, const Vec3& dir,
                       double tol) {
  const double extent = (point - Vec3(outer.center_x(), 0.0, 0.0)).norm() + outer.bounding_radius();
  return make_chord<3>([&](const Vec3& p) { return revolution_indicator(outer, p); }, point, dir,
                       extent, tol);
}

Chord3 chord_endpoints(const RevolutionProfile& outer, const TangentFrame& frame, double tol) {
  return chord_endpoints(outer, frame.tangency(), frame.direction(), tol);
}

Chord2 chord_endpoints(const PlanarBody& outer, const Vec2& point, const Vec2& dir, double tol) {
  const double extent = (point - outer.basepoint()).norm() + outer.bounding_radius();
  return make_chord<2>([&](const Vec2& p) { return planar_indicator(outer, p); }, point, dir, extent,
                       tol);
}

SectionProfile section_profile(const RevolutionProfile& outer, const TangentFrame& frame) {
  const double a = frame.tangency_x;
  const double ga = frame.tangency_height;
  const double s = frame.slope;
  // psi outlives the caller's body, so the lambda holds its own copy
  const auto excess = [outer, a, ga, s](double x) {
    const double f = outer.radius(a + x);
    const double z = ga + x * s;
    return f * f - z * z;
  };
  if (!(excess(0.0) > 0.0)) {
    throw Error(ErrorCode::EmptySection, "tangency point is not inside the outer body");
  }
  const double w = outer.x_max() - outer.x_min();
  const double step = w / 256.0;
  double ends[2] = {0.0, 0.0};
  for (int side = 0; side < 2; ++side) {
    const double sgn = side == 0 ? 1.0 : -1.0;
    double prev = 0.0;
    double prev_v = excess(0.0);
    for (int k = 1;; ++k) {
      const double x = sgn * step * k;
      const double v = excess(x);
      if (v <= 0.0) {
        ends[side] = numeric::bisect_root(excess, prev, x, prev_v, v, 1e-14 * w);
        break;
      }
      prev = x;
      prev_v = v;
      if (k > 4096) throw Error(ErrorCode::InvalidBody, "section does not close");
    }
  }
  const double stretch = std::sqrt(1.0 + s * s);
  SectionProfile out;
  out.halfwidth_right = ends[0] * stretch;
  out.halfwidth_left = -ends[1] * stretch;
  out.psi = [excess, stretch](double u) { return std::sqrt(std::max(0.0, excess(u / stretch))); };
  return out;
}

double radial(const PlanarBody& body, double theta) { return body.rho(theta); }

PlanarBody meridian_section(const RevolutionProfile& body) {
  double cx = 0.0;
  if (!(body.radius(cx) > 0.0)) cx = body.center_x();
  const Vec2 base(cx, 0.0);
  auto rho = [body, cx](double theta) {
    const Vec3 origin(cx, 0.0, 0.0);
    const Vec3 dir(std::cos(theta), 0.0, std::sin(theta));
    const auto ind = [&](double t) {
      const Vec3 p = origin + t * dir;
      return revolution_indicator(body, p);
    };
    const double reach = 2.0 * body.bounding_radius() + std::abs(cx - body.center_x());
    const double lo_v = ind(0.0);
    double prev = 0.0;
    double prev_v = lo_v;
    for (int k = 1; k <= kScanSamples; ++k) {
      const double t = reach * k / kScanSamples;
      const double v = ind(t);
      if (v >= 0.0) return numeric::bisect_root(ind, prev, t, prev_v, v, 1e-13);
      prev = t;
      prev_v = v;
    }
    return reach;
  };
  return PlanarBody(base, std::move(rho), {}, body.label() + " [meridian]");
}

BodyDiagnostics validate(const RevolutionProfile& profile) {
  BodyDiagnostics d;
  const double x0 = profile.x_min();
  const double w = profile.x_max() - x0;
  const double scale = std::max(1.0, profile.bounding_radius());
  constexpr int n = 512;
  std::vector<double> r(n + 1);
  for (int k = 0; k <= n; ++k) {
    r[k] = profile.radius(x0 + w * k / n);
    if (!(r[k] >= 0.0)) {
      d.ok = false;
      d.problems.push_back("negative radius at x=" + fmt_double(x0 + w * k / n));
    }
  }
  if (r.front() > 1e-9 * scale || r.back() > 1e-9 * scale) {
    d.ok = false;
    d.problems.push_back("profile does not vanish at its ends");
  }
  for (int k = 1; k < n; ++k) {
    if (r[k - 1] - 2.0 * r[k] + r[k + 1] > 1e-9 * scale) {
      d.ok = false;
      d.problems.push_back("profile not concave near x=" + fmt_double(x0 + w * k / n));
      break;
    }
  }
  const double h = 1e-6 * w;
  for (int k = 1; k <= 100; ++k) {
    const double x = x0 + w * k / 101.0;
    const double fd = (profile.radius(x + h) - profile.radius(x - h)) / (2.0 * h);
    const double dv = profile.derivative(x);
    if (std::abs(fd - dv) > 1e-6 * std::max(1.0, std::abs(dv))) {
      d.ok = false;
      d.problems.push_back("derivative inconsistent at x=" + fmt_double(x));
      break;
    }
  }
  return d;
}

BodyDiagnostics validate(const PlanarBody& body) {
  BodyDiagnostics d;
  constexpr int n = 4096;
  std::vector<Vec2> pts(n);
  for (int k = 0; k < n; ++k) {
    const double t = kTwoPi * k / n;
    if (!(body.rho(t) > 0.0)) {
      d.ok = false;
      d.problems.push_back("nonpositive radial function at theta=" + fmt_double(t));
      return d;
    }
    pts[k] = body.boundary_point(t);
  }
  const double eps = 1e-12 * body.bounding_radius() * body.bounding_radius();
  int sign = 0;
  for (int k = 0; k < n; ++k) {
    const Vec2 e1 = pts[(k + 1) % n] - pts[k];
    const Vec2 e2 = pts[(k + 2) % n] - pts[(k + 1) % n];
    const double cross = e1.x() * e2.y() - e1.y() * e2.x();
    if (std::abs(cross) <= eps) continue;
    const int s = cross > 0.0 ? 1 : -1;
    if (sign == 0) {
      sign = s;
    } else if (s != sign) {
      d.ok = false;
      d.problems.push_back("boundary not convex near theta=" + fmt_double(kTwoPi * k / n));
      break;
    }
  }
  return d;
}

}  // namespace equichord
