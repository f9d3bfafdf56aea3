#include "equichord/floating.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "equichord/error.hpp"
#include "equichord/numeric.hpp"

namespace equichord {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

// Relative accuracy requested from every volume/moment quadrature.
constexpr double kQuadRelTol = 1e-11;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Area of the part of a disc of radius r on the side {coordinate <= c} of a
// line at signed distance c from the centre.
double segment_area(double r, double c) {
  if (c <= -r) return 0.0;
  if (c >= r) return kPi * r * r;
  const double h = std::sqrt(std::max(0.0, r * r - c * c));
  return r * r * std::acos(-c / r) + c * h;
}

// First moment of that segment about the disc centre, along the line normal.
double segment_moment(double r, double c) {
  if (c <= -r || c >= r) return 0.0;
  const double h2 = std::max(0.0, r * r - c * c);
  return -(2.0 / 3.0) * h2 * std::sqrt(h2);
}

// Integrals over K ∩ {p·xi <= t}: (volume, first moment) for a body of
// revolution about the x-axis.
class RevolutionCap {
 public:
  explicit RevolutionCap(const RevolutionProfile& body) : body_(body) {}

  double full_volume() const {
    return integrate_full(body_.x_min(), body_.x_max(), 1e-14).x();
  }

  // Returns (vol, Mx, My, Mz).
  Eigen::Vector4d integrate(const Eigen::VectorXd& xi, double t, double abs_tol) const {
    const double x0 = body_.x_min();
    const double x1 = body_.x_max();
    const double n = std::hypot(xi[1], xi[2]);
    if (n < 1e-14) {
      // Cut orthogonal to the axis.
      double lo = x0;
      double hi = x1;
      if (xi[0] > 0.0) {
        hi = std::clamp(t / xi[0], x0, x1);
      } else {
        lo = std::clamp(t / xi[0], x0, x1);
      }
      return integrate_full(lo, hi, abs_tol);
    }
    const double nu_y = xi[1] / n;
    const double nu_z = xi[2] / n;
    const double ax = xi[0];
    const auto offset = [=](double x) { return (t - ax * x) / n; };
    const auto gap = [&](double x) { return body_.radius(x) - std::abs(offset(x)); };

    const double w = x1 - x0;
    const double xs = numeric::golden_max(gap, x0, x1, 1e-13 * w);
    if (!(gap(xs) > 0.0)) {
      // The cutting plane misses the interior: all or nothing.
      return offset(0.5 * (x0 + x1)) > 0.0 ? integrate_full(x0, x1, abs_tol)
                                           : Eigen::Vector4d::Zero().eval();
    }
    const double g0 = gap(x0);
    const double g1 = gap(x1);
    const double left = g0 >= 0.0 ? x0 : numeric::bisect_root(gap, x0, xs, g0, gap(xs), 1e-14 * w);
    const double right = g1 >= 0.0 ? x1 : numeric::bisect_root(gap, xs, x1, gap(xs), g1, 1e-14 * w);

    Eigen::Vector4d total = Eigen::Vector4d::Zero();
    const double tol = abs_tol / 3.0;
    if (left > x0 && offset(0.5 * (x0 + left)) > 0.0) total += integrate_full(x0, left, tol);
    if (right < x1 && offset(0.5 * (right + x1)) > 0.0) total += integrate_full(right, x1, tol);
    const auto partial = [&](double x) {
      const double r = body_.radius(x);
      const double c = offset(x);
      const double a = segment_area(r, c);
      const double m = segment_moment(r, c);
      return Eigen::Vector4d(a, x * a, m * nu_y, m * nu_z);
    };
    total += numeric::adaptive_simpson(partial, left, right, tol);
    return total;
  }

 private:
  Eigen::Vector4d integrate_full(double lo, double hi, double abs_tol) const {
    if (!(hi > lo)) return Eigen::Vector4d::Zero();
    const auto disc = [&](double x) {
      const double r = body_.radius(x);
      const double a = kPi * r * r;
      return Eigen::Vector4d(a, x * a, 0.0, 0.0);
    };
    return numeric::adaptive_simpson(disc, lo, hi, abs_tol);
  }

  const RevolutionProfile& body_;
};

// Same integrals for a planar body, in polar coordinates about its basepoint:
// each ray contributes the part of [0, rho(theta)] lying in the half-plane.
class PlanarCap {
 public:
  explicit PlanarCap(const PlanarBody& body) : body_(body) {}

  double full_volume() const {
    const auto f = [&](double th) {
      const double r = body_.rho(th);
      return 0.5 * r * r;
    };
    return numeric::adaptive_simpson(f, 0.0, kTwoPi, 1e-14);
  }

  // Returns (area, Mx, My).
  Eigen::Vector3d integrate(const Eigen::VectorXd& xi, double t, double abs_tol) const {
    const Vec2 b = body_.basepoint();
    const Vec2 dir(xi[0], xi[1]);
    const double e = t - b.dot(dir);
    const auto height = [&](double th) { return body_.boundary_point(th).dot(dir) - t; };
    const auto ray = [&](double th) {
      const Vec2 u(std::cos(th), std::sin(th));
      const double r = body_.rho(th);
      const double k = u.dot(dir);
      double lo = 0.0;
      double hi = r;
      if (k > 0.0) {
        hi = e < 0.0 ? 0.0 : std::min(r, e / k);
      } else if (k < 0.0) {
        if (e < 0.0) lo = std::min(r, e / k);
      } else if (e < 0.0) {
        hi = 0.0;
      }
      const double a = 0.5 * (hi * hi - lo * lo);
      const double m1 = (hi * hi * hi - lo * lo * lo) / 3.0;
      return Eigen::Vector3d(a, b.x() * a + u.x() * m1, b.y() * a + u.y() * m1);
    };

    // Boundary crossings of the cutting line split the integrand into
    // smooth pieces.
    constexpr int kGrid = 256;
    std::vector<double> crossings;
    double prev_th = 0.0;
    double prev_v = height(0.0);
    for (int k = 1; k <= kGrid; ++k) {
      const double th = kTwoPi * k / kGrid;
      const double v = height(th);
      if ((prev_v < 0.0) != (v < 0.0)) {
        crossings.push_back(numeric::bisect_root(height, prev_th, th, prev_v, v, 1e-15));
      }
      prev_th = th;
      prev_v = v;
    }
    if (crossings.size() < 2) {
      return numeric::adaptive_simpson(ray, 0.0, kTwoPi, abs_tol, 48, 6);
    }
    // Green's theorem about b: sectors over the submerged arcs, each closed
    // by the signed triangle on its chord.
    const auto sector = [&](double th) {
      const Vec2 u(std::cos(th), std::sin(th));
      const double r = body_.rho(th);
      const double m1 = r * r * r / 3.0;
      return Eigen::Vector3d(0.5 * r * r, u.x() * m1, u.y() * m1);
    };
    Eigen::Vector3d rel = Eigen::Vector3d::Zero();
    const double tol = abs_tol / static_cast<double>(crossings.size());
    for (std::size_t k = 0; k < crossings.size(); ++k) {
      const double lo = crossings[k];
      const double hi = k + 1 < crossings.size() ? crossings[k + 1] : crossings.front() + kTwoPi;
      if (!(height(0.5 * (lo + hi)) < 0.0)) continue;
      rel += numeric::adaptive_simpson(sector, lo, hi, tol);
      const Vec2 p = body_.boundary_point(hi) - b;
      const Vec2 q = body_.boundary_point(lo) - b;
      const double tri = 0.5 * cross(p, q);
      const Vec2 m = tri * (p + q) / 3.0;
      rel += Eigen::Vector3d(tri, m.x(), m.y());
    }
    Eigen::Vector3d total(rel[0], b.x() * rel[0] + rel[1], b.y() * rel[0] + rel[2]);
    return total;
  }

 private:
  const PlanarBody& body_;
};

double volume_of(const Body& body) {
  return std::visit(
      [](const auto& b) {
        if constexpr (std::is_same_v<std::decay_t<decltype(b)>, RevolutionProfile>) {
          return RevolutionCap(b).full_volume();
        } else {
          return PlanarCap(b).full_volume();
        }
      },
      body);
}

void require_dim(const Body& body, const Direction& xi) {
  if (xi.dim() != body_dimension(body)) {
    throw Error(ErrorCode::UsageError, "direction dimension " + std::to_string(xi.dim()) +
                                           " does not match body dimension " +
                                           std::to_string(body_dimension(body)));
  }
}

// Volume and first moment of the submerged part, as (vol, M...).
Eigen::VectorXd cap_integrals(const Body& body, const Direction& xi, double t, double volume) {
  const double tol = kQuadRelTol * volume;
  return std::visit(
      [&](const auto& b) -> Eigen::VectorXd {
        if constexpr (std::is_same_v<std::decay_t<decltype(b)>, RevolutionProfile>) {
          return RevolutionCap(b).integrate(xi.components(), t, tol);
        } else {
          return PlanarCap(b).integrate(xi.components(), t, tol);
        }
      },
      body);
}

double level_for(const Body& body, const Direction& xi, double delta, double volume) {
  const auto [lo, hi] = support_interval(body, xi);
  const auto excess = [&](double t) { return cap_integrals(body, xi, t, volume)[0] - delta; };
  const double width = hi - lo;
  return numeric::bisect_root(excess, lo, hi, -delta, volume - delta, 1e-13 * width);
}

Eigen::VectorXd centroid_at(const Body& body, const Direction& xi, double t, double volume) {
  const Eigen::VectorXd m = cap_integrals(body, xi, t, volume);
  return m.tail(m.size() - 1) / m[0];
}

}  // namespace

double CutSpec::resolve(double volume) const {
  const double delta = convention == Convention::Fraction ? value * volume : value;
  if (!(delta > 0.0 && delta < volume)) {
    throw Error(ErrorCode::BadDelta, "cut volume must lie in (0, vol(K)); got " + std::to_string(delta));
  }
  return delta;
}

double body_volume(const Body& body) { return volume_of(body); }

Eigen::VectorXd body_centroid(const Body& body) {
  const double volume = volume_of(body);
  const int d = body_dimension(body);
  Eigen::VectorXd axis = Eigen::VectorXd::Zero(d);
  axis[0] = 1.0;
  const Direction xi(axis);
  const auto [lo, hi] = support_interval(body, xi);
  return centroid_at(body, xi, hi + 1.0, volume);
}

std::pair<double, double> support_interval(const Body& body, const Direction& xi) {
  require_dim(body, xi);
  const Eigen::VectorXd& v = xi.components();
  return std::visit(
      [&](const auto& b) -> std::pair<double, double> {
        if constexpr (std::is_same_v<std::decay_t<decltype(b)>, RevolutionProfile>) {
          const double n = std::hypot(v[1], v[2]);
          const double x0 = b.x_min();
          const double x1 = b.x_max();
          const double tol = 1e-13 * (x1 - x0);
          const auto up = [&](double x) { return v[0] * x + n * b.radius(x); };
          const auto down = [&](double x) { return -(v[0] * x - n * b.radius(x)); };
          const double hi = up(numeric::golden_max(up, x0, x1, tol));
          const double lo = -down(numeric::golden_max(down, x0, x1, tol));
          return {std::min({lo, v[0] * x0, v[0] * x1}), std::max({hi, v[0] * x0, v[0] * x1})};
        } else {
          const Vec2 dir(v[0], v[1]);
          constexpr int kGrid = 720;
          const auto h = [&](double th) { return b.boundary_point(th).dot(dir); };
          int best_hi = 0;
          int best_lo = 0;
          for (int k = 1; k < kGrid; ++k) {
            const double th = kTwoPi * k / kGrid;
            if (h(th) > h(kTwoPi * best_hi / kGrid)) best_hi = k;
            if (h(th) < h(kTwoPi * best_lo / kGrid)) best_lo = k;
          }
          const double cell = kTwoPi / kGrid;
          const auto refine = [&](int k, double sgn) {
            const auto f = [&](double th) { return sgn * h(th); };
            const double c = kTwoPi * k / kGrid;
            return h(numeric::golden_max(f, c - cell, c + cell, 1e-14));
          };
          return {refine(best_lo, -1.0), refine(best_hi, 1.0)};
        }
      },
      body);
}

double cap_volume(const Body& body, const Direction& xi, double t) {
  require_dim(body, xi);
  return cap_integrals(body, xi, t, volume_of(body))[0];
}

double cutting_level(const Body& body, const Direction& xi, const CutSpec& cut) {
  require_dim(body, xi);
  const double volume = volume_of(body);
  return level_for(body, xi, cut.resolve(volume), volume);
}

Eigen::VectorXd submerged_centroid(const Body& body, const Direction& xi, const CutSpec& cut) {
  require_dim(body, xi);
  const double volume = volume_of(body);
  const double t = level_for(body, xi, cut.resolve(volume), volume);
  return centroid_at(body, xi, t, volume);
}

std::vector<Direction> direction_grid(int dim, int count) {
  if (count < 1) throw Error(ErrorCode::UsageError, "direction count must be positive");
  std::vector<Direction> out;
  out.reserve(count);
  if (dim == 2) {
    for (int k = 0; k < count; ++k) {
      const double th = kTwoPi * k / count;
      out.emplace_back(Eigen::Vector2d(std::cos(th), std::sin(th)));
    }
  } else if (dim == 3) {
    const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden_angle * k;
      out.emplace_back(Eigen::Vector3d(z, r * std::cos(phi), r * std::sin(phi)));
    }
  } else {
    throw Error(ErrorCode::UsageError, "direction grids exist for d = 2 and d = 3 only");
  }
  return out;
}

FloatingBodyApprox convex_floating_body(const Body& body, const CutSpec& cut, int n_dirs) {
  const int d = body_dimension(body);
  if (n_dirs < 2 * d) throw Error(ErrorCode::UsageError, "need at least 2d directions");
  const double volume = volume_of(body);
  const double delta = cut.resolve(volume);

  FloatingBodyApprox approx;
  approx.directions = direction_grid(d, n_dirs);
  approx.levels.resize(n_dirs);
  numeric::parallel_for(static_cast<std::size_t>(n_dirs), [&](std::size_t k) {
    approx.levels[k] = level_for(body, approx.directions[k], delta, volume);
  });
  approx.ray_origin = body_centroid(body);

  const Eigen::VectorXd& c = approx.ray_origin;
  std::vector<double> slack(n_dirs);
  for (int j = 0; j < n_dirs; ++j) {
    slack[j] = c.dot(approx.directions[j].components()) - approx.levels[j];
    if (slack[j] < 0.0) {
      throw Error(ErrorCode::EmptyFloatingBody,
                  "centroid lies outside the halfspace of direction " + std::to_string(j));
    }
  }
  // Ray k runs along -xi_k, the outer normal of the cutting plane of
  // direction k, so it ends on that plane's face when the face exists.
  approx.inner_points.resize(n_dirs);
  numeric::parallel_for(static_cast<std::size_t>(n_dirs), [&](std::size_t k) {
    const Eigen::VectorXd u = -approx.directions[k].components();
    double reach = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n_dirs; ++j) {
      const double dot = u.dot(approx.directions[j].components());
      if (dot < 0.0) reach = std::min(reach, slack[j] / -dot);
    }
    if (!std::isfinite(reach)) {
      throw Error(ErrorCode::EmptyFloatingBody, "ray " + std::to_string(k) + " is unbounded");
    }
    approx.inner_points[k] = c + reach * u;
  });
  return approx;
}

DupinReport dupin_check(const Body& body, const FloatingBodyApprox& approx, const CutSpec& cut,
                        double tolerance) {
  const double volume = volume_of(body);
  const double delta = cut.resolve(volume);
  DupinReport report;
  report.tolerance = tolerance;
  const std::size_t n = approx.directions.size();
  report.mismatches.resize(n);
  numeric::parallel_for(n, [&](std::size_t k) {
    const Direction& xi = approx.directions[k];
    double support = std::numeric_limits<double>::infinity();
    for (const auto& p : approx.inner_points) support = std::min(support, p.dot(xi.components()));
    report.mismatches[k] = std::abs(cap_integrals(body, xi, support, volume)[0] - delta) / volume;
  });
  for (std::size_t k = 0; k < n; ++k) {
    report.max_mismatch = std::max(report.max_mismatch, report.mismatches[k]);
    if (report.mismatches[k] > tolerance) report.flagged.push_back(static_cast<int>(k));
  }
  return report;
}

std::vector<EquilibriumReport> equilibrium_scan(const Body& body, const CutSpec& cut, int n_dirs) {
  if (n_dirs < 8) throw Error(ErrorCode::UsageError, "equilibrium scan needs at least 8 directions");
  const int d = body_dimension(body);
  const double volume = volume_of(body);
  const double delta = cut.resolve(volume);
  const Eigen::VectorXd center = body_centroid(body);
  const std::vector<Direction> dirs = direction_grid(d, n_dirs);
  std::vector<EquilibriumReport> out(n_dirs, EquilibriumReport{dirs.front(), 0.0, {}, {}, 0.0, false});
  numeric::parallel_for(static_cast<std::size_t>(n_dirs), [&](std::size_t k) {
    EquilibriumReport r{dirs[k], 0.0, {}, {}, 0.0, false};
    r.level = level_for(body, dirs[k], delta, volume);
    r.submerged_centroid = centroid_at(body, dirs[k], r.level, volume);
    r.body_centroid = center;
    const Eigen::VectorXd gap = r.submerged_centroid - center;
    const double len = gap.norm();
    if (len < 1e-12) {
      r.centroid_coincidence = true;
      r.residual = 0.0;
    } else {
      const Eigen::VectorXd& xi = dirs[k].components();
      r.residual = (gap - gap.dot(xi) * xi).norm() / len;
    }
    out[k] = std::move(r);
  });
  return out;
}

Body translated(const Body& body, const Eigen::VectorXd& shift) {
  return std::visit(
      [&](const auto& b) -> Body {
        if constexpr (std::is_same_v<std::decay_t<decltype(b)>, RevolutionProfile>) {
          if (shift.size() != 3 || shift[1] != 0.0 || shift[2] != 0.0) {
            throw Error(ErrorCode::UsageError, "bodies of revolution translate along their axis only");
          }
          return b.translated(shift[0]);
        } else {
          if (shift.size() != 2) throw Error(ErrorCode::UsageError, "planar shift must be 2-D");
          return b.translated(Vec2(shift[0], shift[1]));
        }
      },
      body);
}

}  // namespace equichord
