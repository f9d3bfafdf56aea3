#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "equichord/equichordal.hpp"
#include "equichord/error.hpp"
#include "equichord/geometry.hpp"
#include "equichord/profiles.hpp"

using namespace equichord;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
void expect_code(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

// g(x) = 1.5 (1 - x^2) on [-1, 1], slopes in (-3, 3).
RevolutionProfile parabola_cap() {
  return RevolutionProfile(
      -1.0, 1.0, [](double x) { return 1.5 * (1.0 - x * x); }, [](double x) { return -3.0 * x; },
      "parabola");
}

}  // namespace

TEST(TangentFrame, SemicircleApex) {
  const TangentFrame f = tangent_frame(profiles::ball(1.0), 0.0);
  EXPECT_NEAR(f.tangency_x, 0.0, 1e-10);
  EXPECT_NEAR(f.intercept, 1.0, 1e-10);
}

TEST(TangentFrame, SemicircleSlopeMinusOne) {
  const RevolutionProfile g = profiles::ball(1.0);
  const TangentFrame f = tangent_frame(g, -1.0);
  EXPECT_NEAR(f.tangency_x, 1.0 / std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(f.intercept, std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(g.derivative(f.tangency_x), -1.0, 1e-9);
  EXPECT_NEAR(f.intercept, f.tangency_height - f.slope * f.tangency_x, 1e-9);
}

TEST(TangentFrame, OutOfRangeSlope) {
  expect_code(ErrorCode::NoTangency, [] { tangent_frame(parabola_cap(), 10.0); });
  // The extreme slopes themselves are excluded.
  expect_code(ErrorCode::NoTangency, [] { tangent_frame(parabola_cap(), 3.0); });
}

TEST(TangentFrame, FlatBoundary) {
  // Trapezoid-like profile with a flat top on [-0.5, 0.5].
  const RevolutionProfile flat(
      -1.0, 1.0, [](double x) { return std::min(1.0, 2.0 * (1.0 - std::abs(x))); },
      [](double x) { return std::abs(x) < 0.5 ? 0.0 : (x > 0 ? -2.0 : 2.0); }, "flat-top");
  expect_code(ErrorCode::FlatBoundary, [&] { tangent_frame(flat, 0.0); });
}

TEST(TangentFrame, InvariantsOverSlopeGrid) {
  const RevolutionProfile g = profiles::ellipsoid(1.3, 0.8);
  for (double s : {-5.0, -1.0, -0.2, 0.0, 0.4, 2.0, 7.0}) {
    const TangentFrame f = tangent_frame(g, s);
    EXPECT_NEAR(g.derivative(f.tangency_x), s, 1e-9 * std::max(1.0, std::abs(s)));
    EXPECT_NEAR(f.intercept, g.radius(f.tangency_x) - s * f.tangency_x, 1e-9);
  }
}

TEST(ChordEndpoints, ConcentricBallsHorizontalTangent) {
  const TangentFrame f = tangent_frame(profiles::ball(1.0), 0.0);
  const Chord3 c = chord_endpoints(profiles::ball(2.0), f);
  EXPECT_NEAR(c.dist_plus, std::sqrt(3.0), 1e-10);
  EXPECT_NEAR(c.dist_minus, std::sqrt(3.0), 1e-10);
}

TEST(ChordEndpoints, Diameter) {
  const RevolutionProfile ball = profiles::ball(2.0);
  std::mt19937 rng(7);
  std::normal_distribution<double> n;
  for (int k = 0; k < 20; ++k) {
    const Vec3 dir = Vec3(n(rng), n(rng), n(rng)).normalized();
    EXPECT_NEAR(chord_endpoints(ball, Vec3::Zero(), dir).length(), 4.0, 1e-9);
  }
}

TEST(ChordEndpoints, SupportingLineIsDegenerate) {
  expect_code(ErrorCode::DegenerateChord,
              [] { chord_endpoints(profiles::ball(2.0), Vec3(0.0, 0.0, 2.0), Vec3(1.0, 0.0, 0.0)); });
}

TEST(ChordEndpoints, MissingLine) {
  expect_code(ErrorCode::NoIntersection,
              [] { chord_endpoints(profiles::ball(2.0), Vec3(0.0, 0.0, 3.0), Vec3(1.0, 0.0, 0.0)); });
  expect_code(ErrorCode::NoIntersection,
              [] { chord_endpoints(profiles::disc(1.0), Vec2(0.0, 2.0), Vec2(1.0, 0.0)); });
}

TEST(ChordEndpoints, EndpointsOnBoundaryAndTangencyBetween) {
  const RevolutionProfile outer = profiles::perturbed_ball(2.0, 0.05, 4);
  const TangentFrame f = tangent_frame(profiles::ball(1.0), 0.3);
  const Chord3 c = chord_endpoints(outer, f);
  for (const Vec3& z : {c.zeta_plus, c.zeta_minus}) {
    EXPECT_NEAR(std::hypot(z.y(), z.z()), outer.radius(z.x()), 1e-8);
  }
  const Vec3 mid = c.tangency;
  EXPECT_NEAR((c.zeta_plus - mid).norm() + (mid - c.zeta_minus).norm(), (c.zeta_plus - c.zeta_minus).norm(), 1e-12);
  EXPECT_GT(c.dist_plus, 0.0);
  EXPECT_GT(c.dist_minus, 0.0);
}

TEST(ChordEndpoints, PlanarRigidMotionCovariance) {
  const PlanarBody body = profiles::ellipse(2.0, 1.2, Vec2(0.1, -0.2));
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const Vec2 p(0.5 * u(rng), 0.5 * u(rng));
    const double phi = kPi * u(rng);
    const Vec2 dir(std::cos(phi), std::sin(phi));
    const Chord2 ref = chord_endpoints(body, p, dir);

    const double angle = kPi * u(rng);
    const Vec2 shift(3.0 * u(rng), 3.0 * u(rng));
    const Eigen::Rotation2Dd rot(angle);
    const PlanarBody moved = body.rotated(angle).translated(shift);
    const Chord2 c = chord_endpoints(moved, rot * p + shift, rot * dir);
    EXPECT_NEAR(c.dist_plus, ref.dist_plus, 1e-10);
    EXPECT_NEAR(c.dist_minus, ref.dist_minus, 1e-10);
  }
}

TEST(ChordEndpoints, RevolutionRigidMotionCovariance) {
  // Motions preserving a body of revolution: axial shifts and rotations
  // about the axis.
  const RevolutionProfile body = profiles::ellipsoid(2.0, 1.3);
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const Vec3 p(0.6 * u(rng), 0.4 * u(rng), 0.4 * u(rng));
    const Vec3 dir = Vec3(u(rng), u(rng), u(rng)).normalized();
    const Chord3 ref = chord_endpoints(body, p, dir);
    const double dx = 2.0 * u(rng);
    const Eigen::AngleAxisd rot(kPi * u(rng), Vec3::UnitX());
    const Chord3 c = chord_endpoints(body.translated(dx), rot * p + Vec3(dx, 0.0, 0.0), rot * dir);
    EXPECT_NEAR(c.dist_plus, ref.dist_plus, 1e-10);
    EXPECT_NEAR(c.dist_minus, ref.dist_minus, 1e-10);
  }
}

TEST(ChordEndpoints, TransverseChordMidpointAtTangency) {
  const RevolutionProfile outer = profiles::perturbed_ball(2.0, 0.04, 3);
  const RevolutionProfile inner = profiles::ellipsoid(1.0, 0.7);
  for (double s : {-2.0, -0.5, 0.0, 0.8, 3.0}) {
    const TangentFrame f = tangent_frame(inner, s);
    const Chord3 c = chord_endpoints(outer, f.tangency(), Vec3(0.0, 1.0, 0.0));
    EXPECT_NEAR(midpoint_ratio(c), 0.5, 1e-10);
  }
}

TEST(SectionProfile, ConcentricApex) {
  const TangentFrame f = tangent_frame(profiles::ball(std::sqrt(3.0)), 0.0);
  const SectionProfile sec = section_profile(profiles::ball(2.0), f);
  for (double u : {-0.9, -0.5, 0.0, 0.3, 0.99}) EXPECT_NEAR(sec.psi(u), std::sqrt(1.0 - u * u), 1e-9);
  EXPECT_NEAR(sec.halfwidth_left, 1.0, 1e-10);
  EXPECT_NEAR(sec.halfwidth_right, 1.0, 1e-10);
}

TEST(SectionProfile, FlatFrameIdentity) {
  const RevolutionProfile outer = profiles::perturbed_ball(2.0, 0.05, 4);
  const RevolutionProfile inner = profiles::ellipsoid(0.9, 1.1);
  const TangentFrame f = tangent_frame(inner, 0.0);
  const SectionProfile sec = section_profile(outer, f);
  for (double x : {-0.4, 0.0, 0.5}) {
    const double expected = outer.radius(f.tangency_x + x) * outer.radius(f.tangency_x + x) -
                            f.tangency_height * f.tangency_height;
    EXPECT_NEAR(sec.psi(x) * sec.psi(x), expected, 1e-12);
  }
}

TEST(SectionProfile, EmptyWhenInnerSticksOut) {
  TangentFrame f;
  f.slope = 0.0;
  f.tangency_x = 0.0;
  f.tangency_height = 2.5;
  f.intercept = 2.5;
  expect_code(ErrorCode::EmptySection, [&] { section_profile(profiles::ball(2.0), f); });
}

TEST(SectionProfile, ConcentricBallsGiveSemicircleForEverySlope) {
  const double R = 2.0;
  const double r = 1.0;
  const double sigma = std::sqrt(R * R - r * r);
  for (double s : {-3.0, -1.0, -0.25, 0.0, 0.6, 2.0}) {
    const SectionProfile sec = section_profile(profiles::ball(R), tangent_frame(profiles::ball(r), s));
    EXPECT_NEAR(sec.halfwidth_left, sigma, 1e-8);
    EXPECT_NEAR(sec.halfwidth_right, sigma, 1e-8);
    double worst = 0.0;
    for (int k = 0; k <= 200; ++k) {
      const double u = -sigma + 2.0 * sigma * k / 200.0;
      // squared profile; psi itself loses half its digits near the ends
      worst = std::max(worst, std::abs(sec.psi(u) * sec.psi(u) - (sigma * sigma - u * u)));
    }
    EXPECT_LT(worst, 1e-8) << "s=" << s;
  }
}

TEST(Radial, Examples) {
  EXPECT_DOUBLE_EQ(radial(profiles::disc(1.0), 0.7), 1.0);
  const PlanarBody offset = profiles::disc(2.0).translated(Vec2(-1.0, 0.0));
  // disc of radius 2 about (1,0), seen as a disc centred at (-1,0) from the origin
  const PlanarBody about = meridian_section(profiles::ball(2.0, -1.0));
  EXPECT_NEAR(radial(about, 0.0), 1.0, 1e-9);
  EXPECT_NEAR(radial(about, kPi), 3.0, 1e-9);
  EXPECT_NEAR(radial(about, kPi / 2.0), std::sqrt(3.0), 1e-9);
  EXPECT_TRUE(contains(offset, Vec2(0.5, 0.0)));
}

TEST(Direction, NormalizesAndRejectsZero) {
  const Direction d(Eigen::Vector3d(3.0, 0.0, 4.0));
  EXPECT_NEAR(d.components().norm(), 1.0, 1e-12);
  EXPECT_NEAR(d[2], 0.8, 1e-15);
  EXPECT_THROW(Direction(Eigen::Vector2d::Zero()), Error);
}

TEST(Validate, GoodAndBadProfiles) {
  EXPECT_TRUE(validate(profiles::ball(1.0)).ok);
  EXPECT_TRUE(validate(profiles::ellipsoid(2.0, 0.5)).ok);
  EXPECT_TRUE(validate(profiles::ellipse(2.0, 1.0)).ok);

  const RevolutionProfile convex_dent(
      -1.0, 1.0, [](double x) { return (1.0 - x * x) * (0.5 + x * x); },
      [](double x) { return -2.0 * x * (0.5 + x * x) + (1.0 - x * x) * 2.0 * x; }, "dent");
  EXPECT_FALSE(validate(convex_dent).ok);

  const RevolutionProfile wrong_derivative(
      -1.0, 1.0, [](double x) { return std::sqrt(1.0 - x * x); }, [](double) { return 0.0; }, "bad-d");
  EXPECT_FALSE(validate(wrong_derivative).ok);

  EXPECT_FALSE(validate(profiles::perturbed_disc(1.0, 0.3, 5)).ok);
}

TEST(Profiles, SampledBallMatchesAnalytic) {
  std::vector<double> x;
  std::vector<double> r;
  for (int k = 0; k <= 400; ++k) {
    const double t = -1.0 + 2.0 * k / 400.0;
    x.push_back(t);
    r.push_back(std::sqrt(std::max(0.0, 1.0 - t * t)));
  }
  const RevolutionProfile s = profiles::sampled(x, r);
  for (double t : {-0.7, -0.1, 0.0, 0.33, 0.8}) EXPECT_NEAR(s.radius(t), std::sqrt(1.0 - t * t), 1e-5);
}

TEST(Profiles, EllipseRadialFunction) {
  const PlanarBody e = profiles::ellipse(2.0, 1.0);
  for (double th : {0.0, 0.4, 1.3, 2.9, 4.4}) {
    const Vec2 p = e.boundary_point(th);
    EXPECT_NEAR(p.x() * p.x() / 4.0 + p.y() * p.y(), 1.0, 1e-12);
  }
}
