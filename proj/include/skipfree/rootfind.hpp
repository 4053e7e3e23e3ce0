#ifndef SKIPFREE_ROOTFIND_HPP
#define SKIPFREE_ROOTFIND_HPP

#include <cmath>
#include <functional>

#include "skipfree/errors.hpp"

namespace skipfree {

// Brent's method on a sign-changing bracket [a, b].  Derivative-free:
// inverse quadratic / secant steps with a bisection safeguard, so poles
// just outside the bracket (the 1/x term of the generating function)
// cannot derail it.  |b - a| is driven down to xtol plus a few ulps.
template <typename F>
double find_root_bracketed(F&& f, double a, double b, double fa, double fb,
                           double xtol = 1e-15, int max_iter = 200) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw walk_error(errc::root_not_bracketed,
                     "no sign change on the supplied interval");
  }
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a; fc = fa;
      d = b - a; e = d;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * 2.220446049250313e-16 * std::fabs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::fabs(m) <= tol || fb == 0.0) return b;
    if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {  // secant
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {  // inverse quadratic interpolation
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q; else p = -p;
      if (2.0 * p < std::fmin(3.0 * m * q - std::fabs(tol * q),
                              std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m; e = m;
      }
    } else {
      d = m; e = m;
    }
    a = b; fa = fb;
    b += (std::fabs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  return b;
}

template <typename F>
double find_root_bracketed(F&& f, double a, double b, double xtol = 1e-15) {
  const double fa = f(a);
  const double fb = f(b);
  return find_root_bracketed(f, a, b, fa, fb, xtol);
}

}  // namespace skipfree

#endif
