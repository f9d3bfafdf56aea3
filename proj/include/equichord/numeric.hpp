#pragma once

// Scalar root finding, quadrature and finite differences shared by every
// module.  Everything here is deterministic: no randomness, no dependence on
// thread scheduling.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <type_traits>
#include <utility>

#include <Eigen/Core>

namespace equichord::numeric {

struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

// Shrinks a sign-changing bracket until hi - lo <= tol (or no further
// progress is possible in floating point).  f(lo) and f(hi) must have
// opposite signs or one of them must vanish.
template <class F>
Bracket bisect(F&& f, Bracket b, double tol, int max_iter = 400) {
  if (b.f_lo == 0.0) return {b.lo, b.lo, 0.0, 0.0};
  if (b.f_hi == 0.0) return {b.hi, b.hi, 0.0, 0.0};
  for (int it = 0; it < max_iter && std::abs(b.hi - b.lo) > tol; ++it) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (mid == b.lo || mid == b.hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return {mid, mid, 0.0, 0.0};
    if ((fm < 0.0) == (b.f_lo < 0.0)) {
      b.lo = mid;
      b.f_lo = fm;
    } else {
      b.hi = mid;
      b.f_hi = fm;
    }
  }
  return b;
}

// Root of f inside a bracket: bisection to tol, then one secant step on the
// final bracket.  The secant step never leaves the bracket.
template <class F>
double bisect_root(F&& f, double lo, double hi, double f_lo, double f_hi, double tol) {
  const Bracket b = bisect(f, Bracket{lo, hi, f_lo, f_hi}, tol);
  if (b.lo == b.hi) return b.lo;
  const double den = b.f_hi - b.f_lo;
  if (den == 0.0 || !std::isfinite(den)) return 0.5 * (b.lo + b.hi);
  const double w = -b.f_lo / den;
  if (!(w >= 0.0 && w <= 1.0)) return 0.5 * (b.lo + b.hi);
  return b.lo + w * (b.hi - b.lo);
}

template <class F>
double bisect_root(F&& f, double lo, double hi, double tol) {
  return bisect_root(f, lo, hi, f(lo), f(hi), tol);
}

// Maximizer of a unimodal (e.g. concave) function on [lo, hi].
template <class F>
double golden_max(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

inline double quad_norm(double v) { return std::abs(v); }

template <class Derived>
double quad_norm(const Eigen::MatrixBase<Derived>& v) {
  return v.cwiseAbs().maxCoeff();
}

namespace detail {

template <class F, class T>
T simpson_step(F& f, double a, double b, const T& fa, const T& fm, const T& fb, const T& whole,
               double tol, int depth, int min_depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const T flm = f(lm);
  const T frm = f(rm);
  const T left = ((m - a) / 6.0) * (fa + 4.0 * flm + fm);
  const T right = ((b - m) / 6.0) * (fm + 4.0 * frm + fb);
  const T delta = left + right - whole;
  if (depth <= 0 || (min_depth <= 0 && quad_norm(delta) <= 15.0 * tol)) {
    return T(left + right + delta / 15.0);
  }
  return T(simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, min_depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, min_depth - 1));
}

}  // namespace detail

// Adaptive Simpson quadrature with the usual Richardson correction.  T is
// double or a fixed-size Eigen vector (for moment integrals).
template <class F>
auto adaptive_simpson(F&& f, double a, double b, double abs_tol, int max_depth = 48,
                      int min_depth = 4) {
  using T = std::decay_t<decltype(f(a))>;
  if (a == b) return T(0.0 * f(a));
  const double m = 0.5 * (a + b);
  const T fa = f(a);
  const T fm = f(m);
  const T fb = f(b);
  const T whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, abs_tol, max_depth, min_depth);
}

struct Derivatives {
  double first;
  double second;
};

// Central differences at step h.
template <class F>
Derivatives central_differences(F&& f, double x, double h) {
  const double fp = f(x + h);
  const double f0 = f(x);
  const double fm = f(x - h);
  return {(fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)};
}

// One level of Richardson extrapolation on top of central differences:
// combines steps h and h/2 to cancel the O(h^2) error term.
template <class F>
Derivatives richardson_differences(F&& f, double x, double h) {
  const Derivatives coarse = central_differences(f, x, h);
  const Derivatives fine = central_differences(f, x, 0.5 * h);
  return {(4.0 * fine.first - coarse.first) / 3.0, (4.0 * fine.second - coarse.second) / 3.0};
}

// Worker count from EQUICHORD_THREADS (unset or 0 means hardware concurrency).
unsigned thread_count();

// Runs body(i) for i in [0, n).  Each index is visited exactly once; callers
// write results into pre-sized storage so output order never depends on
// scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace equichord::numeric
