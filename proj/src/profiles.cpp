#include "equichord/profiles.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <string>

#include <unsupported/Eigen/Splines>

#include "equichord/error.hpp"
#include "equichord/numeric.hpp"

namespace equichord::profiles {

namespace {

using Spline1 = Eigen::Spline<double, 1, 3>;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Cubic interpolant on a parameter range [u0, u1].
struct SplineFn {
  std::shared_ptr<const Spline1> spline;
  double u0;
  double u1;

  double value(double u) const { return (*spline)((u - u0) / (u1 - u0))(0); }
  double slope(double u) const {
    return spline->derivatives((u - u0) / (u1 - u0), 1)(0, 1) / (u1 - u0);
  }
};

SplineFn fit_spline(const std::vector<double>& u, const std::vector<double>& v) {
  const auto n = static_cast<Eigen::Index>(u.size());
  Eigen::RowVectorXd pts(n);
  Eigen::RowVectorXd knots(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    pts(k) = v[k];
    knots(k) = (u[k] - u.front()) / (u.back() - u.front());
  }
  auto spline = std::make_shared<const Spline1>(
      Eigen::SplineFitting<Spline1>::Interpolate(pts, 3, knots));
  return {std::move(spline), u.front(), u.back()};
}

void require_increasing(const std::vector<double>& x, const std::vector<double>& r) {
  if (x.size() != r.size() || x.size() < 4) {
    throw Error(ErrorCode::InvalidBody, "sample arrays must have equal length >= 4");
  }
  for (std::size_t k = 1; k < x.size(); ++k) {
    if (!(x[k] > x[k - 1])) throw Error(ErrorCode::InvalidBody, "sample abscissae must increase");
  }
}

}  // namespace

RevolutionProfile ball(double radius, double center) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidBody, "ball radius must be positive");
  const double r2 = radius * radius;
  return RevolutionProfile(
      center - radius, center + radius,
      [r2, center](double x) { return std::sqrt(std::max(0.0, r2 - (x - center) * (x - center))); },
      [r2, center](double x) {
        const double u = x - center;
        return -u / std::sqrt(std::max(0.0, r2 - u * u));
      },
      "ball(R=" + num(radius) + ")");
}

RevolutionProfile ellipsoid(double axial, double radial) {
  if (!(axial > 0.0 && radial > 0.0)) {
    throw Error(ErrorCode::InvalidBody, "ellipsoid semiaxes must be positive");
  }
  return RevolutionProfile(
      -axial, axial,
      [axial, radial](double x) {
        const double t = x / axial;
        return radial * std::sqrt(std::max(0.0, 1.0 - t * t));
      },
      [axial, radial](double x) {
        const double t = x / axial;
        return -radial * t / (axial * std::sqrt(std::max(0.0, 1.0 - t * t)));
      },
      "ellipsoid(" + num(axial) + "," + num(radial) + ")");
}

RevolutionProfile perturbed_ball(double radius, double eps, int mode, double offset) {
  if (!(radius > 0.0) || mode < 1 || offset < 0.0) {
    throw Error(ErrorCode::InvalidBody, "perturbed_ball needs R > 0, mode >= 1, offset >= 0");
  }
  const double r2 = radius * radius;
  const auto bump = [eps, mode, offset](double x) {
    const double m = std::max(0.0, std::abs(x) - offset);
    const double sgn = (x < 0.0 && mode % 2 == 1) ? -1.0 : 1.0;
    return eps * sgn * std::pow(m, mode);
  };
  const auto bump_prime = [eps, mode, offset](double x) {
    const double m = std::max(0.0, std::abs(x) - offset);
    const double sgn = (x < 0.0 && mode % 2 == 0) ? -1.0 : 1.0;
    return mode == 1 ? eps * (m > 0.0 ? 1.0 : 0.0) : eps * mode * sgn * std::pow(m, mode - 1);
  };
  const auto square = [r2, bump](double x) { return r2 - x * x + bump(x); };

  // Ends: first sign change of f^2 walking outward from 0.
  double ends[2] = {0.0, 0.0};
  const double step = radius / 512.0;
  for (int side = 0; side < 2; ++side) {
    const double sgn = side == 0 ? 1.0 : -1.0;
    double prev = 0.0;
    double prev_v = square(0.0);
    for (int k = 1;; ++k) {
      const double x = sgn * step * k;
      const double v = square(x);
      if (v <= 0.0) {
        ends[side] = numeric::bisect_root(square, prev, x, prev_v, v, 1e-15 * radius);
        break;
      }
      prev = x;
      prev_v = v;
      if (k > 512 * 64) throw Error(ErrorCode::InvalidBody, "perturbed_ball does not close");
    }
  }
  return RevolutionProfile(
      ends[1], ends[0], [square](double x) { return std::sqrt(std::max(0.0, square(x))); },
      [square, bump_prime](double x) {
        return (-2.0 * x + bump_prime(x)) / (2.0 * std::sqrt(std::max(0.0, square(x))));
      },
      "perturbed_ball(R=" + num(radius) + ",eps=" + num(eps) + ",mode=" + std::to_string(mode) +
          ",offset=" + num(offset) + ")");
}

RevolutionProfile sampled(std::vector<double> x, std::vector<double> r) {
  require_increasing(x, r);
  const SplineFn fn = fit_spline(x, r);
  const double lo = x.front();
  const double hi = x.back();
  return RevolutionProfile(
      lo, hi, [fn](double t) { return fn.value(t); }, [fn](double t) { return fn.slope(t); },
      "samples(n=" + std::to_string(x.size()) + ")");
}

PlanarBody disc(double radius, const Vec2& center) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidBody, "disc radius must be positive");
  return PlanarBody(
      center, [radius](double) { return radius; }, [](double) { return 0.0; },
      "disc(R=" + num(radius) + ")");
}

PlanarBody ellipse(double a, double b, const Vec2& center) {
  if (!(a > 0.0 && b > 0.0)) throw Error(ErrorCode::InvalidBody, "ellipse semiaxes must be positive");
  return PlanarBody(
      center,
      [a, b](double t) {
        const double c = b * std::cos(t);
        const double s = a * std::sin(t);
        return a * b / std::sqrt(c * c + s * s);
      },
      [a, b](double t) {
        const double c = std::cos(t);
        const double s = std::sin(t);
        const double den = b * b * c * c + a * a * s * s;
        return -a * b * (a * a - b * b) * s * c / (den * std::sqrt(den));
      },
      "ellipse(" + num(a) + "," + num(b) + ")");
}

PlanarBody perturbed_disc(double radius, double eps, int mode, const Vec2& center) {
  if (!(radius > 0.0) || !(std::abs(eps) < 1.0)) {
    throw Error(ErrorCode::InvalidBody, "perturbed disc needs R > 0 and |eps| < 1");
  }
  return PlanarBody(
      center, [=](double t) { return radius * (1.0 + eps * std::cos(mode * t)); },
      [=](double t) { return -radius * eps * mode * std::sin(mode * t); },
      "perturbed_disc(R=" + num(radius) + ",eps=" + num(eps) + ",mode=" + std::to_string(mode) + ")");
}

PlanarBody sampled_planar(std::vector<double> theta, std::vector<double> rho, const Vec2& center) {
  require_increasing(theta, rho);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  if (!(theta.back() - theta.front() < kTwoPi)) {
    throw Error(ErrorCode::InvalidBody, "sample angles must span less than one turn");
  }
  // Three wrapped samples on each side make the interpolant periodic to
  // within the spline's end effects.
  constexpr std::size_t kWrap = 3;
  const std::size_t n = theta.size();
  std::vector<double> u;
  std::vector<double> v;
  for (std::size_t k = n - kWrap; k < n; ++k) {
    u.push_back(theta[k] - kTwoPi);
    v.push_back(rho[k]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    u.push_back(theta[k]);
    v.push_back(rho[k]);
  }
  for (std::size_t k = 0; k < kWrap; ++k) {
    u.push_back(theta[k] + kTwoPi);
    v.push_back(rho[k]);
  }
  const SplineFn fn = fit_spline(u, v);
  const double t0 = theta.front();
  const auto wrap = [t0](double t) {
    double w = std::fmod(t - t0, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return t0 + w;
  };
  return PlanarBody(
      center, [fn, wrap](double t) { return fn.value(wrap(t)); },
      [fn, wrap](double t) { return fn.slope(wrap(t)); },
      "samples(n=" + std::to_string(n) + ")");
}

}  // namespace equichord::profiles
