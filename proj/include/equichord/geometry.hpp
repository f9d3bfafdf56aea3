#pragma once

// Convex bodies of revolution and planar star-shaped convex bodies, tangent
// frames to an inner profile, and chord/section geometry.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace equichord {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

inline constexpr double kRootTolerance = 1e-10;

// Solid of revolution about the x-axis, described by its profile radius
// r = radius(x) on [x_min, x_max].  The profile is concave and vanishes at
// both ends for a full body.
class RevolutionProfile {
 public:
  using Fn = std::function<double(double)>;

  RevolutionProfile(double x_min, double x_max, Fn radius, Fn derivative, std::string label);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  // Profile radius; 0 outside [x_min, x_max] and clamped at 0 inside.
  double radius(double x) const;
  double derivative(double x) const;

  // Radius of a ball about (center_x, 0, 0) containing the body.
  double bounding_radius() const noexcept { return bounding_radius_; }
  double center_x() const noexcept { return 0.5 * (x_min_ + x_max_); }

  RevolutionProfile translated(double dx) const;
  RevolutionProfile scaled(double lambda) const;

 private:
  double x_min_;
  double x_max_;
  Fn radius_;
  Fn derivative_;
  std::string label_;
  double bounding_radius_;
};

// Planar convex body given by its radial function about an interior basepoint.
class PlanarBody {
 public:
  using Fn = std::function<double(double)>;

  // rho_prime may be empty, in which case it is approximated by central
  // differences.
  PlanarBody(Vec2 basepoint, Fn rho, Fn rho_prime, std::string label);

  const Vec2& basepoint() const noexcept { return basepoint_; }
  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  double rho(double theta) const { return rho_(theta); }
  double rho_prime(double theta) const;
  double bounding_radius() const noexcept { return bounding_radius_; }

  Vec2 boundary_point(double theta) const;
  // d/dtheta of boundary_point (not normalized).
  Vec2 boundary_tangent(double theta) const;

  PlanarBody translated(const Vec2& v) const;
  PlanarBody scaled(double lambda) const;
  // Rotation about the origin.
  PlanarBody rotated(double angle) const;

 private:
  Vec2 basepoint_;
  Fn rho_;
  Fn rho_prime_;
  std::string label_;
  double bounding_radius_;
};

// Line l(s) in the xz-plane tangent to an inner profile g at (a, 0, g(a)).
struct TangentFrame {
  double slope = 0.0;            // s = tan(alpha)
  double tangency_x = 0.0;       // a(s)
  double tangency_height = 0.0;  // g(a(s))
  double intercept = 0.0;        // h(s) = g(a) - s a
  int plane_id = -1;             // sample index of H_s, -1 when standalone

  Vec3 tangency() const { return {tangency_x, 0.0, tangency_height}; }
  Vec3 direction() const;  // unit vector along l(s), positive x component
};

template <int N>
struct Chord {
  using Point = Eigen::Matrix<double, N, 1>;
  Point zeta_plus;
  Point zeta_minus;
  Point tangency;
  double dist_plus = 0.0;
  double dist_minus = 0.0;

  double length() const { return dist_plus + dist_minus; }
};

using Chord2 = Chord<2>;
using Chord3 = Chord<3>;

// Unit vector in R^d.  Construction normalizes; a zero vector is rejected.
class Direction {
 public:
  explicit Direction(Eigen::VectorXd components);

  const Eigen::VectorXd& components() const noexcept { return components_; }
  int dim() const noexcept { return static_cast<int>(components_.size()); }
  double operator[](int i) const { return components_[i]; }

 private:
  Eigen::VectorXd components_;
};

// Boundary of the tilted section K ∩ H_s about the tangency point, as a
// function of the in-plane coordinate u along l(s).
struct SectionProfile {
  std::function<double(double)> psi;
  double halfwidth_left = 0.0;
  double halfwidth_right = 0.0;
};

// Unique frame with g'(a) = s, by bisection on the decreasing g'.
TangentFrame tangent_frame(const RevolutionProfile& inner, double s);

// Open interval of slopes admitted by tangent_frame, as (g'(x_max-), g'(x_min+)).
std::pair<double, double> slope_range(const RevolutionProfile& inner);

// Abscissa of the profile maximum, a(0).
double profile_apex(const RevolutionProfile& profile);

// Translates both profiles along the axis so the inner apex sits at x = 0.
std::pair<RevolutionProfile, RevolutionProfile> normalize_pair(const RevolutionProfile& outer,
                                                               const RevolutionProfile& inner);

bool contains(const RevolutionProfile& body, const Vec3& p);
bool contains(const PlanarBody& body, const Vec2& p);

// Chord of the outer body cut by the line point + t*dir.  dist_plus is the
// distance from point to the exit at t > 0.
Chord3 chord_endpoints(const RevolutionProfile& outer, const Vec3& point, const Vec3& dir,
                       double tol = kRootTolerance);
Chord3 chord_endpoints(const RevolutionProfile& outer, const TangentFrame& frame,
                       double tol = kRootTolerance);
Chord2 chord_endpoints(const PlanarBody& outer, const Vec2& point, const Vec2& dir,
                       double tol = kRootTolerance);

SectionProfile section_profile(const RevolutionProfile& outer, const TangentFrame& frame);

double radial(const PlanarBody& body, double theta);

// Section of a revolution body by the xz-plane, as a planar body about the
// origin (or the axial midpoint when the origin is not interior).  Its radial
// function is found by boundary intersection.
PlanarBody meridian_section(const RevolutionProfile& body);

struct BodyDiagnostics {
  bool ok = true;
  std::vector<std::string> problems;
};

// Checks nonnegativity, vanishing ends, concavity and derivative
// consistency of a revolution profile.
BodyDiagnostics validate(const RevolutionProfile& profile);
// Checks positivity and convexity of the traced boundary.
BodyDiagnostics validate(const PlanarBody& body);

}  // namespace equichord
