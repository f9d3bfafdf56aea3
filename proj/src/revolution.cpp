#include "equichord/revolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/QR>

#include "equichord/error.hpp"
#include "equichord/numeric.hpp"

namespace equichord {

namespace {

constexpr double kSupportTol = 1e-12;

double half_power(double base, int dim) { return std::pow(base, 0.5 * (dim + 1)); }

// First zero of phi^2 walking from 0 towards `limit` (either sign).  Returns
// `limit` if phi^2 stays positive.
double walk_to_zero(const std::function<double(double)>& phi2, double limit, double step) {
  const double dir = limit < 0.0 ? -1.0 : 1.0;
  const double span = std::abs(limit);
  double prev = 0.0;
  double prev_v = phi2(0.0);
  for (int k = 1;; ++k) {
    const double x = dir * std::min(span, step * k);
    const double v = phi2(x);
    if (v <= 0.0) return numeric::bisect_root(phi2, prev, x, prev_v, v, kSupportTol);
    if (std::abs(x) >= span) return limit;
    prev = x;
    prev_v = v;
  }
}

Interval locate_support(const ChiFunction& c, double lo_limit, double hi_limit) {
  const auto phi2 = [&c](double x) { return c.phi_squared(x); };
  if (!(phi2(0.0) > 0.0)) {
    throw Error(ErrorCode::OutOfRange, "sigma^2 + chi(0) must be positive");
  }
  const double step = c.sigma / 64.0;
  return {walk_to_zero(phi2, lo_limit, step), walk_to_zero(phi2, hi_limit, step)};
}

void require_dim(int dim) {
  if (dim < 2) throw Error(ErrorCode::UsageError, "dimension must be at least 2");
}

}  // namespace

ChiFunction make_chi(std::function<double(double)> chi, double sigma, int dim, double limit) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::BadSigma, "sigma must be positive");
  require_dim(dim);
  if (!(limit > 0.0)) limit = 64.0 * sigma;
  ChiFunction out{std::move(chi), {}, sigma, dim};
  out.support = locate_support(out, -limit, limit);
  return out;
}

ChiFunction chi_from_taylor(const TaylorPair& coeffs, double sigma, int dim) {
  const double s2 = sigma * sigma;
  return make_chi([e1 = coeffs.eps1, e2 = coeffs.eps2, s2](double x) { return s2 * x * (e1 + e2 * x); },
                  sigma, dim);
}

double taylor_comp0_residual(const TaylorPair& coeffs, int dim) {
  return (dim + 1) * coeffs.eps1 * coeffs.eps1 + 4.0 * coeffs.eps2;
}

ChiFunction chi_from_profiles(const RevolutionProfile& outer_f, double sigma, int dim) {
  require_dim(dim);
  const double f0 = outer_f.radius(0.0);
  if (!(sigma > 0.0 && sigma < f0)) {
    throw Error(ErrorCode::BadSigma, "sigma must lie in (0, f(0)) = (0, " + std::to_string(f0) + ")");
  }
  const double f02 = f0 * f0;
  ChiFunction out;
  out.chi = [outer_f, f02](double x) {
    const double f = outer_f.radius(x);
    return f * f - f02 + x * x;
  };
  out.sigma = sigma;
  out.dim = dim;
  // phi^2 = f^2 - f(0)^2 + sigma^2 is negative at both ends of the profile,
  // and f^2 is unimodal, so each side has a single sign change.
  const auto phi2 = [&](double x) { return out.phi_squared(x); };
  out.support.lo = numeric::bisect_root(phi2, outer_f.x_min(), 0.0, kSupportTol);
  out.support.hi = numeric::bisect_root(phi2, 0.0, outer_f.x_max(), kSupportTol);
  return out;
}

RevolutionProfile g_from_f(const RevolutionProfile& outer_f, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::BadSigma, "sigma must be positive");
  const double x0 = outer_f.x_min();
  const double x1 = outer_f.x_max();
  const auto f = [&outer_f](double x) { return outer_f.radius(x); };
  const double apex = numeric::golden_max(f, x0, x1, 1e-13 * (x1 - x0));
  if (!(f(apex) > sigma)) {
    throw Error(ErrorCode::SigmaTooLarge, "profile never exceeds sigma (max f = " +
                                              std::to_string(f(apex)) + ")");
  }
  const auto excess = [&](double x) { return f(x) - sigma; };
  const double lo = numeric::bisect_root(excess, x0, apex, kSupportTol);
  const double hi = numeric::bisect_root(excess, apex, x1, kSupportTol);
  const double s2 = sigma * sigma;
  auto radius = [outer_f, s2](double x) {
    const double r = outer_f.radius(x);
    return std::sqrt(std::max(0.0, r * r - s2));
  };
  auto derivative = [outer_f, s2, mid = 0.5 * (lo + hi)](double x) {
    const double r = outer_f.radius(x);
    const double g = std::sqrt(std::max(0.0, r * r - s2));
    if (g > 0.0) return r * outer_f.derivative(x) / g;
    return x < mid ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  };
  return RevolutionProfile(lo, hi, radius, derivative, "g[" + outer_f.label() + "]");
}

double partner_point(double x, const ChiFunction& chi) {
  if (!(x >= 0.0 && x <= chi.support.hi)) {
    throw Error(ErrorCode::OutOfRange, "x = " + std::to_string(x) + " is outside [0, tau2]");
  }
  const double q = chi(x) / (chi.sigma * chi.sigma);
  if (!(q > -1.0)) throw Error(ErrorCode::OutOfRange, "q(x) <= -1 at x = " + std::to_string(x));
  const int n = chi.dim + 1;
  const double rad = 2.0 - half_power(1.0 + q, chi.dim);
  if (rad < 0.0) {
    throw Error(ErrorCode::OutOfRange, "no partner point for x = " + std::to_string(x));
  }
  return x * std::pow(rad, 1.0 / n) / std::sqrt(1.0 + q);
}

double equichordal_residual_1d(const ChiFunction& chi, double x) {
  const double y = -partner_point(x, chi);
  if (!chi.support.contains(y)) {
    throw Error(ErrorCode::OutOfRange, "partner " + std::to_string(y) + " is outside the support");
  }
  const double s2 = chi.sigma * chi.sigma;
  return half_power(s2 + chi(x), chi.dim) + half_power(s2 + chi(y), chi.dim) -
         2.0 * half_power(s2, chi.dim);
}

double verify_comp0(const ChiFunction& chi, double h, DiffMethod method) {
  if (!(h > 0.0)) throw Error(ErrorCode::UsageError, "step must be positive");
  if (chi.support.lo > -2.0 * h || chi.support.hi < 2.0 * h) {
    throw Error(ErrorCode::SupportTooSmall, "[-2h, 2h] is not inside the support of chi");
  }
  const auto d = method == DiffMethod::Central ? numeric::central_differences(chi.chi, 0.0, h)
                                               : numeric::richardson_differences(chi.chi, 0.0, h);
  return 2.0 * chi.sigma * chi.sigma * d.second + (chi.dim + 1) * d.first * d.first;
}

double comp0_convergence_ratio(const ChiFunction& chi, double h) {
  const double r1 = verify_comp0(chi, h);
  const double r2 = verify_comp0(chi, 0.5 * h);
  const double r4 = verify_comp0(chi, 0.25 * h);
  return (r1 - r2) / (r2 - r4);
}

double shift_constant(const ChiFunction& chi, double f0, double a, double s) {
  const double rad = f0 * f0 - a * a + chi(a) - chi.sigma * chi.sigma;
  if (rad < 0.0) {
    throw Error(ErrorCode::RadicandNegative, "f0^2 - a^2 + chi(a) - sigma^2 = " + std::to_string(rad));
  }
  return s * std::sqrt(rad);
}

ChiFunction shifted_chi(const ChiFunction& chi, double a, double A) {
  if (!(a > chi.support.lo && a < chi.support.hi)) {
    throw Error(ErrorCode::OutOfRange, "shift a = " + std::to_string(a) + " is outside the support");
  }
  ChiFunction out;
  const double chi_at_a = chi(a);
  out.chi = [base = chi.chi, a, A, chi_at_a](double x) {
    return -2.0 * (a + A) * x + base(a + x) - chi_at_a;
  };
  out.sigma = chi.sigma;
  out.dim = chi.dim;
  out.support = locate_support(out, chi.support.lo - a, chi.support.hi - a);
  return out;
}

double adif_residual(const ChiFunction& chi, double a, double A, double h) {
  const auto d = numeric::central_differences(chi.chi, a, h);
  const double slope = d.first - 2.0 * (a + A);
  return 2.0 * chi.sigma * chi.sigma * d.second + (chi.dim + 1) * slope * slope;
}

double section_residual_1d(const RevolutionProfile& outer, const TangentFrame& frame, double sigma,
                           int dim, double x) {
  const SectionProfile sec = section_profile(outer, frame);
  const double stretch = std::sqrt(1.0 + frame.slope * frame.slope);
  // Squared distance from the tangency point to the section boundary above
  // axial offset t.
  const auto dist2 = [&](double t) {
    const double psi = sec.psi(t * stretch);
    return t * t * stretch * stretch + psi * psi;
  };
  if (!(x >= 0.0 && x * stretch <= sec.halfwidth_right)) {
    throw Error(ErrorCode::OutOfRange, "x = " + std::to_string(x) + " is outside the section");
  }
  const int n = dim + 1;
  const double px = half_power(dist2(x), dim);
  const double target = 2.0 * std::pow(sigma, n);
  if (target < px) throw Error(ErrorCode::OutOfRange, "no partner point in the section");
  const double y = -x * std::pow((target - px) / px, 1.0 / n);
  if (-y * stretch > sec.halfwidth_left) {
    throw Error(ErrorCode::OutOfRange, "partner lies outside the section");
  }
  return px + half_power(dist2(y), dim) - target;
}

std::pair<double, double> partner_taylor_fit(const ChiFunction& chi, double x) {
  // Fit in the scaled variable k = t / x so the design matrix stays well
  // conditioned; coefficients are rescaled afterwards.
  Eigen::Matrix<double, 4, 3> design;
  Eigen::Vector4d rhs;
  for (int k = 1; k <= 4; ++k) {
    const double t = k * x;
    rhs[k - 1] = partner_point(t, chi) / t - 1.0;
    design(k - 1, 0) = k;
    design(k - 1, 1) = k * k;
    design(k - 1, 2) = k * k * k;
  }
  const Eigen::Vector3d b = design.colPivHouseholderQr().solve(rhs);
  return {b[0] / x, b[1] / (x * x)};
}

HeartReport heart_validator(const ChiFunction& chi, double lambda1, double lambda2, double tolerance) {
  HeartReport rep;
  const double lo = -lambda1;
  const double hi = lambda2;
  if (!(hi > lo)) {
    rep.reason = "empty interval";
    return rep;
  }
  constexpr int kProbes = 2048;
  double worst_x = lo;
  for (int k = 0; k <= kProbes; ++k) {
    const double x = lo + (hi - lo) * k / kProbes;
    const double v = chi(x);
    if (v > tolerance) {
      rep.reason = "chi > 0 at x = " + std::to_string(x);
      return rep;
    }
    if (std::abs(v) > rep.max_abs_chi) {
      rep.max_abs_chi = std::abs(v);
      worst_x = x;
    }
  }
  const double s2 = chi.sigma * chi.sigma;
  const double target = 2.0 * half_power(s2, chi.dim);
  rep.endpoint_residual =
      half_power(s2 + chi(lo), chi.dim) + half_power(s2 + chi(hi), chi.dim) - target;
  if (!(std::abs(rep.endpoint_residual) <= tolerance * target)) {
    rep.reason = "endpoint condition fails";
    return rep;
  }
  if (rep.max_abs_chi < tolerance) {
    rep.verdict = HeartVerdict::Consistent;
  } else {
    rep.verdict = HeartVerdict::Inconsistent;
    rep.witness = worst_x;
    rep.reason = "chi does not vanish although the endpoint condition holds";
  }
  return rep;
}

IntervalChain moving_chord_extend(const RevolutionProfile& outer_f, double sigma, const Interval& start,
                                  double tolerance, int sweep) {
  if (sweep < 2) throw Error(ErrorCode::UsageError, "sweep needs at least two samples");
  if (!(start.hi > start.lo)) throw Error(ErrorCode::UsageError, "start interval is empty");
  const double f0 = outer_f.radius(0.0);
  if (!(sigma > 0.0 && sigma < f0)) {
    throw Error(ErrorCode::BadSigma, "sigma must lie in (0, f(0))");
  }
  const double s2 = sigma * sigma;
  const double reach = std::sqrt(f0 * f0 - s2);
  const auto arc_gap = [&](double x) {
    const double f = outer_f.radius(x);
    return std::abs(std::sqrt(x * x + f * f) - f0);
  };

  IntervalChain chain;
  for (int k = 0; k <= sweep; ++k) {
    const double x = start.lo + start.width() * k / sweep;
    const double dev = arc_gap(x);
    chain.max_deviation = std::max(chain.max_deviation, dev);
    if (dev > tolerance) throw ArcMismatchError(x, dev);
  }

  Interval cur = start;
  chain.intervals.push_back(cur);
  while (cur.lo > -reach || cur.hi < reach) {
    const double b_lo = std::max(cur.lo, -reach);
    const double b_hi = std::min(cur.hi, reach);
    const double cell = (b_hi - b_lo) / (sweep - 1);
    double lo_end = cur.lo;
    double hi_end = cur.hi;
    double worst = 0.0;
    double worst_x = 0.0;
    for (int k = 0; k < sweep; ++k) {
      const double b = b_lo + cell * k;
      const double f = outer_f.radius(b);
      const double g = std::sqrt(std::max(0.0, f * f - s2));
      Vec2 tangent(0.0, 1.0);
      if (g > 0.0) tangent = Vec2(1.0, f * outer_f.derivative(b) / g).normalized();
      for (const double side : {-1.0, 1.0}) {
        const Vec2 end = Vec2(b, g) + side * sigma * tangent;
        const double dev = arc_gap(end.x());
        if (dev > worst) {
          worst = dev;
          worst_x = end.x();
        }
        lo_end = std::min(lo_end, end.x());
        hi_end = std::max(hi_end, end.x());
      }
    }
    chain.max_deviation = std::max(chain.max_deviation, worst);
    if (worst > tolerance) throw ArcMismatchError(worst_x, worst);

    Interval next{std::min(cur.lo, lo_end + cell), std::max(cur.hi, hi_end - cell)};
    next.lo = std::max(next.lo, std::min(cur.lo, -reach));
    next.hi = std::min(next.hi, std::max(cur.hi, reach));
    if (!(next.lo < cur.lo || next.hi > cur.hi)) break;
    cur = next;
    chain.intervals.push_back(cur);
  }
  chain.covered = cur.lo <= -reach && cur.hi >= reach;
  chain.terminal = {std::max(cur.lo, -reach), std::min(cur.hi, reach)};

  constexpr int kSamples = 200;
  for (int k = 0; k <= kSamples; ++k) {
    const double x = chain.terminal.lo + chain.terminal.width() * k / kSamples;
    const double f = outer_f.radius(x);
    chain.g_x.push_back(x);
    chain.g_data.push_back(std::sqrt(std::max(0.0, f * f - s2)));
    chain.g_closed_form.push_back(std::sqrt(std::max(0.0, f0 * f0 - x * x - s2)));
  }
  return chain;
}

IntervalCase interval_case(const Interval& inner, const Interval& support, double tol) {
  const bool lo_eq = std::abs(inner.lo - support.lo) <= tol;
  const bool hi_eq = std::abs(inner.hi - support.hi) <= tol;
  if (lo_eq && hi_eq) return IntervalCase::Equal;
  if (inner.lo >= support.lo - tol && inner.hi <= support.hi + tol) return IntervalCase::InnerInsideSupport;
  if (support.lo >= inner.lo - tol && support.hi <= inner.hi + tol) return IntervalCase::SupportInsideInner;
  return IntervalCase::Crossing;
}

IntervalReport classify_intervals(const RevolutionProfile& outer_f, double sigma, double tol) {
  IntervalReport rep;
  const RevolutionProfile g = g_from_f(outer_f, sigma);
  rep.inner = {g.x_min(), g.x_max()};
  rep.support = chi_from_profiles(outer_f, sigma).support;
  rep.which = interval_case(rep.inner, rep.support, tol);
  if (rep.which == IntervalCase::InnerInsideSupport) {
    rep.symmetric = std::abs(rep.inner.lo + rep.inner.hi) <= tol;
  }
  return rep;
}

const char* to_string(HeartVerdict v) {
  switch (v) {
    case HeartVerdict::Consistent: return "consistent";
    case HeartVerdict::NotApplicable: return "not_applicable";
    case HeartVerdict::Inconsistent: return "inconsistent";
  }
  return "?";
}

const char* to_string(IntervalCase c) {
  switch (c) {
    case IntervalCase::Equal: return "equal";
    case IntervalCase::InnerInsideSupport: return "inner_inside_support";
    case IntervalCase::SupportInsideInner: return "support_inside_inner";
    case IntervalCase::Crossing: return "crossing";
  }
  return "?";
}

}  // namespace equichord
