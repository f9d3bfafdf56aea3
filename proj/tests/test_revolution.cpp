#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "equichord/equichordal.hpp"
#include "equichord/error.hpp"
#include "equichord/numeric.hpp"
#include "equichord/profiles.hpp"
#include "equichord/revolution.hpp"

using namespace equichord;

namespace {

template <class F>
void expect_code(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

ChiFunction zero_chi(double sigma = 1.0, int dim = 3) {
  return make_chi([](double) { return 0.0; }, sigma, dim);
}

// Direct substitution into (s^2 + chi(x))^((d+1)/2) + (s^2 + chi(y))^((d+1)/2) - 2 s^(d+1).
double direct_residual(const std::function<double(double)>& chi, double sigma, int d, double x, double y) {
  const double e = 0.5 * (d + 1);
  return std::pow(sigma * sigma + chi(x), e) + std::pow(sigma * sigma + chi(y), e) - 2.0 * std::pow(sigma, d + 1);
}

}  // namespace

TEST(ChiFromProfiles, BallGivesZero) {
  for (double sigma : {0.3, 1.0, 1.9}) {
    const ChiFunction chi = chi_from_profiles(profiles::ball(2.0), sigma);
    for (double x : {-1.5, -0.4, 0.0, 0.8, 1.2}) {
      if (chi.support.contains(x)) {
        EXPECT_NEAR(chi(x), 0.0, 1e-12);
      }
    }
    EXPECT_NEAR(chi.support.hi, sigma, 1e-10);
    EXPECT_NEAR(chi.support.lo, -sigma, 1e-10);
  }
}

TEST(ChiFromProfiles, CubicPerturbation) {
  const double f0 = 2.0;
  const RevolutionProfile f = profiles::perturbed_ball(f0, 0.01, 3);
  const ChiFunction chi = chi_from_profiles(f, 1.0);
  for (double x : {-0.9, -0.3, 0.2, 0.7}) EXPECT_NEAR(chi(x), 0.01 * x * x * x, 1e-12);
  for (double x : {chi.support.lo, chi.support.hi}) EXPECT_NEAR(chi.phi_squared(x), 0.0, 1e-10);
}

TEST(ChiFromProfiles, BadSigma) {
  expect_code(ErrorCode::BadSigma, [] { chi_from_profiles(profiles::ball(2.0), 2.0); });
  expect_code(ErrorCode::BadSigma, [] { chi_from_profiles(profiles::ball(2.0), -1.0); });
}

TEST(GFromF, BallGivesConcentricBall) {
  const RevolutionProfile g = g_from_f(profiles::ball(2.0), 1.0);
  EXPECT_NEAR(g.x_min(), -std::sqrt(3.0), 1e-10);
  EXPECT_NEAR(g.x_max(), std::sqrt(3.0), 1e-10);
  for (double x : {-1.5, 0.0, 0.9}) EXPECT_NEAR(g.radius(x), std::sqrt(3.0 - x * x), 1e-12);
}

TEST(GFromF, PerturbedBall) {
  const RevolutionProfile f = profiles::perturbed_ball(2.0, 0.05, 4);
  const RevolutionProfile g = g_from_f(f, 1.0);
  for (double x : {-1.2, 0.0, 0.5, 1.4}) {
    EXPECT_NEAR(g.radius(x) * g.radius(x), 3.0 - x * x + 0.05 * std::pow(x, 4), 1e-12);
  }
  for (double x : {g.x_min(), g.x_max()}) EXPECT_NEAR(f.radius(x), 1.0, 1e-10);
  EXPECT_NEAR(g.derivative(0.5), (-0.5 + 0.1 * 0.125) / g.radius(0.5), 1e-10);
}

TEST(GFromF, SigmaTooLarge) {
  expect_code(ErrorCode::SigmaTooLarge, [] { g_from_f(profiles::ball(2.0), 2.0); });
  expect_code(ErrorCode::SigmaTooLarge, [] { g_from_f(profiles::ball(2.0), 3.0); });
}

TEST(PartnerPoint, ZeroChiIsIdentity) {
  const ChiFunction chi = zero_chi();
  for (double x : {0.0, 0.1, 0.5, 0.99}) EXPECT_NEAR(partner_point(x, chi), x, 1e-15);
}

TEST(PartnerPoint, ClosedFormAgreement) {
  // Independent evaluation of |y|^(d+1) = (2 - (1+q)^((d+1)/2)) x^(d+1) / (1+q)^((d+1)/2).
  for (int d : {3, 4, 6}) {
    const ChiFunction chi = chi_from_taylor({0.3, -0.2}, 1.0, d);
    for (double x : {0.05, 0.2, 0.4}) {
      const double q = chi(x);
      const double p = std::pow(1.0 + q, 0.5 * (d + 1));
      const double y = std::pow((2.0 - p) / p, 1.0 / (d + 1)) * x;
      EXPECT_NEAR(partner_point(x, chi), y, 1e-13) << d << " " << x;
    }
  }
}

TEST(PartnerPoint, OutOfRange) {
  const ChiFunction big = make_chi([](double x) { return 2.0 * x; }, 1.0, 3, 10.0);
  expect_code(ErrorCode::OutOfRange, [&] { partner_point(0.5, big); });
  expect_code(ErrorCode::OutOfRange, [&] { partner_point(-0.1, big); });
}

TEST(EquichordalResidual, Examples) {
  const ChiFunction zero = zero_chi();
  for (double x : {0.0, 0.2, 0.7}) EXPECT_NEAR(equichordal_residual_1d(zero, x), 0.0, 1e-14);

  const auto lin = [](double x) { return 0.1 * x; };
  const ChiFunction chi = make_chi(lin, 1.0, 3);
  EXPECT_NEAR(equichordal_residual_1d(chi, 0.0), 0.0, 1e-15);
  const double x = 0.1;
  const double y = -partner_point(x, chi);
  const double oracle = direct_residual(lin, 1.0, 3, x, y);
  const double r = equichordal_residual_1d(chi, x);
  EXPECT_NEAR(r, oracle, 1e-14);
  EXPECT_GT(std::abs(r), 1e-6);
}

TEST(VerifyComp0, Examples) {
  EXPECT_NEAR(verify_comp0(zero_chi(), 1e-3), 0.0, 1e-15);
  const ChiFunction lin = make_chi([](double x) { return 0.1 * x; }, 1.0, 3);
  EXPECT_NEAR(verify_comp0(lin, 1e-3), 0.04, 1e-6);
  for (int d : {3, 5}) {
    const double e1 = 0.4;
    const ChiFunction chi = chi_from_taylor({e1, -(d + 1) * e1 * e1 / 4.0}, 1.0, d);
    EXPECT_NEAR(verify_comp0(chi, 1e-3), 0.0, 1e-8);
    EXPECT_NEAR(taylor_comp0_residual({e1, -(d + 1) * e1 * e1 / 4.0}, d), 0.0, 1e-15);
  }
}

TEST(VerifyComp0, SupportTooSmall) {
  const ChiFunction chi = zero_chi(0.01);
  expect_code(ErrorCode::SupportTooSmall, [&] { verify_comp0(chi, 0.1); });
}

TEST(VerifyComp0, ConvergesAtSecondOrder) {
  const ChiFunction chi = make_chi([](double x) { return 0.2 * std::sin(x) + 0.05 * std::exp(x) - 0.05; }, 1.0, 3);
  const double ratio = comp0_convergence_ratio(chi, 0.1);
  EXPECT_NEAR(ratio, 4.0, 0.8);
}

TEST(VerifyComp0, RichardsonAgreesWithExact) {
  // chi = a x + b x^2 + c x^3: exact residual 2 (2b) + 4 a^2 for sigma = 1, d = 3.
  const double a = 0.3;
  const double b = -0.1;
  const ChiFunction chi = make_chi([=](double x) { return a * x + b * x * x + 0.2 * x * x * x; }, 1.0, 3);
  EXPECT_NEAR(verify_comp0(chi, 1e-2, DiffMethod::Richardson), 4.0 * b + 4.0 * a * a, 1e-9);
}

TEST(Taylor, PartnerExpansionCoefficients) {
  for (int d : {3, 4, 5}) {
    const TaylorPair tp{0.7, -0.3};
    const ChiFunction chi = chi_from_taylor(tp, 1.0, d);
    const double c2_expected = -tp.eps2 + (3.0 - d) / 4.0 * tp.eps1 * tp.eps1;
    double prev = 0.0;
    for (double x : {1e-2, 1e-3, 1e-4}) {
      const auto [c1, c2] = partner_taylor_fit(chi, x);
      EXPECT_NEAR(c1, -tp.eps1, 50.0 * x) << d;
      const double err = std::abs(c2 - c2_expected);
      EXPECT_LT(err, 50.0 * x) << d << " x=" << x;
      if (prev > 0.0 && err > 1e-9) {
        // log-log slope of at least ~1
        EXPECT_GT(std::log10(prev / err), 0.8) << d << " x=" << x;
      }
      prev = err;
    }
  }
}

TEST(ShiftedChi, Identities) {
  const ChiFunction zero = zero_chi(1.0);
  const ChiFunction same = shifted_chi(zero, 0.0, 0.0);
  for (double x : {-0.5, 0.0, 0.3}) EXPECT_EQ(same(x), 0.0);

  const double f0 = 2.0;
  const ChiFunction ball = chi_from_profiles(profiles::ball(f0), 1.0);
  const double a = 0.4;
  const double A = shift_constant(ball, f0, a, -0.5);
  EXPECT_NEAR(A, -0.5 * std::sqrt(f0 * f0 - a * a - 1.0), 1e-12);
  const ChiFunction lin = shifted_chi(ball, a, A);
  for (double x : {-0.2, 0.0, 0.1, 0.3}) EXPECT_NEAR(lin(x), -2.0 * (a + A) * x, 1e-12);
}

TEST(ShiftedChi, RadicandNegative) {
  const ChiFunction ball = chi_from_profiles(profiles::ball(2.0), 1.0);
  expect_code(ErrorCode::RadicandNegative, [&] { shift_constant(ball, 2.0, 1.9, 1.0); });
}

TEST(ShiftedChi, Comp0OfShiftMatchesAdifForm) {
  const RevolutionProfile f = profiles::perturbed_ball(2.0, 0.05, 4);
  const double sigma = 1.0;
  const ChiFunction chi = chi_from_profiles(f, sigma);
  const RevolutionProfile g = g_from_f(f, sigma);
  for (double a : {-0.3, 0.0, 0.25}) {
    const double s = g.derivative(a);
    const double A = shift_constant(chi, f.radius(0.0), a, s);
    const ChiFunction ca = shifted_chi(chi, a, A);
    EXPECT_NEAR(verify_comp0(ca, 1e-3, DiffMethod::Richardson), adif_residual(chi, a, A, 1e-3), 1e-6) << a;
  }
}

TEST(ShiftedChi, BallPairsSatisfyAdif) {
  const double f0 = 2.0;
  const ChiFunction chi = chi_from_profiles(profiles::ball(f0), 1.0);
  const RevolutionProfile g = g_from_f(profiles::ball(f0), 1.0);
  for (double a : {-0.8, -0.2, 0.0, 0.5}) {
    const double A = shift_constant(chi, f0, a, g.derivative(a));
    EXPECT_NEAR(adif_residual(chi, a, A, 0.05), 0.0, 1e-9);
  }
}

TEST(SectionResidual, BallPairAgreesWithShiftedChi) {
  const RevolutionProfile outer = profiles::ball(2.0);
  const RevolutionProfile inner = profiles::ball(1.0);
  const double sigma = std::sqrt(3.0);
  const ChiFunction chi = chi_from_profiles(outer, sigma);
  for (double s : {-0.7, 0.0, 0.4}) {
    const TangentFrame frame = tangent_frame(inner, s);
    const ChiFunction ca = shifted_chi(chi, frame.tangency_x, shift_constant(chi, 2.0, frame.tangency_x, s));
    for (double x : {0.02, 0.1, 0.3}) {
      EXPECT_NEAR(equichordal_residual_1d(ca, x), section_residual_1d(outer, frame, sigma, 3, x), 1e-7);
      EXPECT_NEAR(section_residual_1d(outer, frame, sigma, 3, x), 0.0, 1e-9);
    }
  }
}

TEST(SectionResidual, NonBallPairAgreesWithShiftedChi) {
  const RevolutionProfile outer = profiles::perturbed_ball(2.0, 0.05, 4);
  const double sigma = 1.0;
  const RevolutionProfile inner = g_from_f(outer, sigma);
  const ChiFunction chi = chi_from_profiles(outer, sigma);
  double worst_gap = 0.0;
  double largest = 0.0;
  for (double s : {-0.4, 0.0, 0.3}) {
    const TangentFrame frame = tangent_frame(inner, s);
    const ChiFunction ca =
        shifted_chi(chi, frame.tangency_x, shift_constant(chi, outer.radius(0.0), frame.tangency_x, s));
    for (double x : {0.02, 0.08, 0.15}) {
      const double direct = section_residual_1d(outer, frame, sigma, 3, x);
      worst_gap = std::max(worst_gap, std::abs(equichordal_residual_1d(ca, x) - direct));
      largest = std::max(largest, std::abs(direct));
    }
  }
  EXPECT_LT(worst_gap, 1e-7);
  EXPECT_GT(largest, 1e-6);
}

TEST(Pipeline, BallClosure) {
  for (double sigma : {0.5, 1.0, 1.5, 1.9}) {
    const ChiFunction chi = chi_from_profiles(profiles::ball(2.0), sigma);
    // chi is zero up to rounding, so a coarse step keeps h^-2 noise small
    EXPECT_NEAR(verify_comp0(chi, 0.05 * chi.support.hi), 0.0, 1e-10);
    for (int k = 0; k <= 20; ++k) {
      const double x = chi.support.hi * k / 21.0;
      EXPECT_LT(std::abs(equichordal_residual_1d(chi, x)), 1e-10);
    }
  }
}

TEST(Pipeline, PassingPairsHaveFlatChi) {
  // Pairs that pass the 3-d check at 1e-9 have chi'(0) ~ 0.
  struct Pair {
    RevolutionProfile outer;
    RevolutionProfile inner;
  };
  const Pair pairs[] = {{profiles::ball(2.0), profiles::ball(1.0)},
                        {profiles::ball(3.0), profiles::ball(2.5)},
                        {profiles::perturbed_ball(2.0, 0.05, 4), profiles::ball(1.0)}};
  int passing = 0;
  for (const Pair& p : pairs) {
    CheckConfig cfg;
    cfg.num_frames = 32;
    cfg.num_section_dirs = 16;
    cfg.tolerance = 1e-9;
    if (!check_pair_revolution(p.outer, p.inner, cfg).satisfied()) continue;
    ++passing;
    const double f0 = p.outer.radius(0.0);
    const double g0 = p.inner.radius(0.0);
    const ChiFunction chi = chi_from_profiles(p.outer, std::sqrt(f0 * f0 - g0 * g0));
    const auto d = numeric::richardson_differences([&](double x) { return chi(x); }, 0.0, 1e-3);
    EXPECT_LT(std::abs(d.first), 1e-6);
  }
  EXPECT_EQ(passing, 2);
}

TEST(Intervals, Classification) {
  EXPECT_EQ(interval_case({-1, 1}, {-1, 1}), IntervalCase::Equal);
  EXPECT_EQ(interval_case({-0.5, 0.5}, {-1, 1}), IntervalCase::InnerInsideSupport);
  EXPECT_EQ(interval_case({-2, 2}, {-1, 1}), IntervalCase::SupportInsideInner);
  EXPECT_EQ(interval_case({-2, 0.5}, {-1, 1}), IntervalCase::Crossing);
  EXPECT_STREQ(to_string(IntervalCase::Crossing), "crossing");
}

TEST(Intervals, ConstructedPairsNeverCross) {
  const RevolutionProfile bodies[] = {profiles::ball(2.0), profiles::perturbed_ball(2.0, 0.05, 4),
                                      profiles::ellipsoid(2.0, 1.5)};
  for (const RevolutionProfile& f : bodies) {
    for (double sigma : {0.5, 1.0, 1.3}) {
      const IntervalReport rep = classify_intervals(f, sigma);
      EXPECT_NE(rep.which, IntervalCase::Crossing) << f.label() << " sigma=" << sigma;
    }
  }
  const IntervalReport ball = classify_intervals(profiles::ball(2.0), 1.0);
  EXPECT_EQ(ball.which, IntervalCase::SupportInsideInner);
  EXPECT_TRUE(ball.symmetric);
}

TEST(Heart, Verdicts) {
  const ChiFunction zero = make_chi([](double) { return 0.0; }, 1.0, 3);
  EXPECT_EQ(heart_validator(zero, 0.5, 0.5).verdict, HeartVerdict::Consistent);

  const ChiFunction bowl = make_chi([](double x) { return -0.01 * (1.0 - std::cos(x)); }, 1.0, 3);
  const HeartReport na = heart_validator(bowl, 0.2, 0.7);
  EXPECT_EQ(na.verdict, HeartVerdict::NotApplicable);
  EXPECT_GT(std::abs(na.endpoint_residual), 1e-9);

  // Vanishes at both ends so the endpoint condition holds exactly, dips to
  // -1e-3 inside.
  const ChiFunction dip = make_chi([](double x) { return -1e-3 * std::pow(std::sin(std::numbers::pi * x), 2); }, 1.0, 3);
  const HeartReport bad = heart_validator(dip, 1.0, 1.0);
  EXPECT_EQ(bad.verdict, HeartVerdict::Inconsistent);
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_NEAR(std::abs(*bad.witness), 0.5, 1e-2);
  EXPECT_NEAR(bad.max_abs_chi, 1e-3, 1e-6);

  const ChiFunction positive = make_chi([](double x) { return 0.01 * x * x; }, 1.0, 3);
  EXPECT_EQ(heart_validator(positive, 0.5, 0.5).verdict, HeartVerdict::NotApplicable);
}

TEST(MovingChord, BallFromSmallStart) {
  const IntervalChain chain = moving_chord_extend(profiles::ball(2.0), 1.0, {-0.3, 0.3});
  EXPECT_TRUE(chain.covered);
  EXPECT_GE(chain.intervals.size(), 2u);
  EXPECT_LT(chain.max_deviation, 1e-8);
  EXPECT_LE(chain.terminal.lo, -std::sqrt(3.0) + 1e-12);
  EXPECT_GE(chain.terminal.hi, std::sqrt(3.0) - 1e-12);
  for (std::size_t j = 1; j < chain.intervals.size(); ++j) {
    EXPECT_LT(chain.intervals[j].lo, chain.intervals[j - 1].lo + 1e-15);
    EXPECT_GT(chain.intervals[j].hi, chain.intervals[j - 1].hi - 1e-15);
    EXPECT_GT(chain.intervals[j].width(), chain.intervals[j - 1].width());
  }
  ASSERT_EQ(chain.g_x.size(), chain.g_data.size());
  for (std::size_t k = 0; k < chain.g_x.size(); ++k) EXPECT_NEAR(chain.g_data[k], chain.g_closed_form[k], 1e-10);
}

TEST(MovingChord, FixedPointStart) {
  const double r = std::sqrt(3.0);
  const IntervalChain chain = moving_chord_extend(profiles::ball(2.0), 1.0, {-r, r});
  EXPECT_EQ(chain.intervals.size(), 1u);
  EXPECT_TRUE(chain.covered);
  EXPECT_DOUBLE_EQ(chain.terminal.lo, -r);
  EXPECT_DOUBLE_EQ(chain.terminal.hi, r);
}

TEST(MovingChord, PerturbationDetected) {
  const RevolutionProfile f = profiles::perturbed_ball(2.0, 0.05, 4, 0.3);
  try {
    moving_chord_extend(f, 1.0, {-0.3, 0.3});
    FAIL() << "expected an arc mismatch";
  } catch (const ArcMismatchError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArcMismatch);
    EXPECT_GT(std::abs(e.x()), 0.3);
    // Independent deviation of the circle law at the witness.
    const double direct = std::abs(std::sqrt(e.x() * e.x() + f.radius(e.x()) * f.radius(e.x())) - 2.0);
    EXPECT_NEAR(e.deviation(), direct, 1e-9);
    EXPECT_GT(e.deviation(), 1e-8);
  }
}

TEST(MovingChord, StartMustLieOnCircle) {
  expect_code(ErrorCode::ArcMismatch,
              [] { moving_chord_extend(profiles::perturbed_ball(2.0, 0.05, 4), 1.0, {-0.5, 0.5}); });
}
