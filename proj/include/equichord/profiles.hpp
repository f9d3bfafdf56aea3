#pragma once

// Named analytic body families and sampled bodies.

#include <vector>

#include "equichord/geometry.hpp"

namespace equichord::profiles {

// f(x) = sqrt(R^2 - (x - center)^2).
RevolutionProfile ball(double radius, double center = 0.0);

// Ellipsoid of revolution with semiaxis `axial` along x and `radial` across.
RevolutionProfile ellipsoid(double axial, double radial);

// f^2(x) = R^2 - x^2 + eps * p(x) with p(x) = sgn(x)^mode * (|x| - offset)_+^mode.
// With offset = 0 this is R^2 - x^2 + eps x^mode.  The ends are located by
// bisection on f^2.
RevolutionProfile perturbed_ball(double radius, double eps, int mode, double offset = 0.0);

// Cubic spline through (x_k, r_k); x must be strictly increasing.
RevolutionProfile sampled(std::vector<double> x, std::vector<double> r);

PlanarBody disc(double radius, const Vec2& center = Vec2::Zero());
PlanarBody ellipse(double a, double b, const Vec2& center = Vec2::Zero());
// rho(theta) = R (1 + eps cos(mode theta)) about center.
PlanarBody perturbed_disc(double radius, double eps, int mode, const Vec2& center = Vec2::Zero());
// Periodic cubic spline through (theta_k, rho_k); theta strictly increasing
// and spanning less than one turn.
PlanarBody sampled_planar(std::vector<double> theta, std::vector<double> rho,
                          const Vec2& center = Vec2::Zero());

}  // namespace equichord::profiles
