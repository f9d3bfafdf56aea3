#pragma once

// One-dimensional reduction of equichordality for bodies of revolution.
//
// With outer profile f normalized so the inner apex sits at x = 0 and sigma
// the half-length of the chord tangent at the apex, the section profile is
// phi^2(x) = sigma^2 - x^2 + chi(x) with chi(x) = f^2(x) - f^2(0) + x^2.
// chi vanishes identically exactly for balls.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equichord/geometry.hpp"

namespace equichord {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool contains(const Interval& other) const { return other.lo >= lo && other.hi <= hi; }
};

struct ChiFunction {
  std::function<double(double)> chi;
  Interval support;  // [-tau1, tau2], where sigma^2 - x^2 + chi(x) >= 0
  double sigma = 1.0;
  int dim = 3;

  double operator()(double x) const { return chi(x); }
  double phi_squared(double x) const { return sigma * sigma - x * x + chi(x); }
};

struct TaylorPair {
  double eps1 = 0.0;
  double eps2 = 0.0;
};

struct IntervalChain {
  std::vector<Interval> intervals;  // starts with the verified start interval
  Interval terminal;
  bool covered = false;  // terminal reaches [-sqrt(f0^2 - sigma^2), +sqrt(...)]
  double max_deviation = 0.0;
  // Inner profile over the terminal interval: from the data, sqrt(f^2 - sigma^2),
  // and from the circular closed form sqrt(f0^2 - x^2 - sigma^2).
  std::vector<double> g_x;
  std::vector<double> g_data;
  std::vector<double> g_closed_form;
};

enum class DiffMethod { Central, Richardson };

// Wraps an arbitrary chi; the support is located by scanning outward from 0
// for the first zero of sigma^2 - x^2 + chi(x), within [-limit, limit].
ChiFunction make_chi(std::function<double(double)> chi, double sigma, int dim,
                     double limit = 0.0);

// chi(x) = sigma^2 (eps1 x + eps2 x^2), i.e. q = chi / sigma^2 quadratic.
ChiFunction chi_from_taylor(const TaylorPair& coeffs, double sigma, int dim);

// (d+1) eps1^2 + 4 eps2, the normalized form of the apex condition.
double taylor_comp0_residual(const TaylorPair& coeffs, int dim);

// chi(x) = f^2(x) - f^2(0) + x^2.  BadSigma unless 0 < sigma < f(0).
ChiFunction chi_from_profiles(const RevolutionProfile& outer_f, double sigma, int dim = 3);

// g = sqrt(f^2 - sigma^2) on the interval where f >= sigma.
// SigmaTooLarge if f never exceeds sigma.
RevolutionProfile g_from_f(const RevolutionProfile& outer_f, double sigma);

// |y| for x in [0, tau2]; the partner abscissa is -|y|.
// OutOfRange if x is outside the support or no partner exists.
double partner_point(double x, const ChiFunction& chi);

// (sigma^2 + chi(x))^((d+1)/2) + (sigma^2 + chi(y))^((d+1)/2) - 2 sigma^(d+1)
// with y the partner of x.
double equichordal_residual_1d(const ChiFunction& chi, double x);

// 2 sigma^2 chi''(0) + (d+1) chi'(0)^2 from finite differences at step h.
// SupportTooSmall unless [-2h, 2h] lies in the support.
double verify_comp0(const ChiFunction& chi, double h, DiffMethod method = DiffMethod::Central);

// (r(h) - r(h/2)) / (r(h/2) - r(h/4)) for the central-difference residual;
// close to 4 for smooth chi.
double comp0_convergence_ratio(const ChiFunction& chi, double h);

// A = s * sqrt(f0^2 - a^2 + chi(a) - sigma^2).  RadicandNegative if the
// radicand is negative.
double shift_constant(const ChiFunction& chi, double f0, double a, double s);

// chi_a(x) = -2(a + A)x + chi(a + x) - chi(a).
ChiFunction shifted_chi(const ChiFunction& chi, double a, double A);

// 2 sigma^2 chi''(a) + (d+1)(chi'(a) - 2(a + A))^2 by central differences.
double adif_residual(const ChiFunction& chi, double a, double A, double h);

// Same quantity as equichordal_residual_1d of the shifted chi, computed
// directly from the tilted section of the outer body through the frame.
double section_residual_1d(const RevolutionProfile& outer, const TangentFrame& frame, double sigma,
                           int dim, double x);

// Least-squares fit of |y|/x - 1 on {x, 2x, 3x, 4x} by c1 t + c2 t^2 + c3 t^3;
// returns (c1, c2).  Expansion target: c1 = -eps1, c2 = -eps2 + (3-d)/4 eps1^2.
std::pair<double, double> partner_taylor_fit(const ChiFunction& chi, double x);

enum class HeartVerdict { Consistent, NotApplicable, Inconsistent };

struct HeartReport {
  HeartVerdict verdict = HeartVerdict::NotApplicable;
  double endpoint_residual = 0.0;
  double max_abs_chi = 0.0;
  std::optional<double> witness;  // abscissa of the largest |chi| when inconsistent
  std::string reason;
};

// If chi <= 0 on [-lambda1, lambda2] and the endpoint condition holds, chi
// must vanish on the whole interval.
HeartReport heart_validator(const ChiFunction& chi, double lambda1, double lambda2,
                            double tolerance = 1e-9);

// Propagates f^2(x) = f^2(0) - x^2 outward from `start` with chords of
// half-length sigma centred at tangency points of g = sqrt(f^2 - sigma^2).
// Throws ArcMismatchError when a swept endpoint leaves the circle.
IntervalChain moving_chord_extend(const RevolutionProfile& outer_f, double sigma,
                                  const Interval& start, double tolerance = 1e-8,
                                  int sweep = 512);

enum class IntervalCase { Equal, InnerInsideSupport, SupportInsideInner, Crossing };

struct IntervalReport {
  IntervalCase which = IntervalCase::Crossing;
  Interval inner;    // [-r1, r2], where f >= sigma
  Interval support;  // [-tau1, tau2]
  // Only meaningful for InnerInsideSupport, where r1 = r2 is required.
  bool symmetric = true;
};

IntervalCase interval_case(const Interval& inner, const Interval& support, double tol = 1e-9);
IntervalReport classify_intervals(const RevolutionProfile& outer_f, double sigma,
                                  double tol = 1e-9);

const char* to_string(HeartVerdict v);
const char* to_string(IntervalCase c);

}  // namespace equichord
