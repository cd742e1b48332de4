#pragma once

#include <cmath>
#include <utility>

#include "awi/errors.hpp"

namespace awi {

// Bisection for f(lo) and f(hi) of opposite sign; returns the midpoint once
// the bracket is narrower than rel_tol.  Deterministic.
template <class F>
double bisect(F&& f, double lo, double hi, double f_lo, double f_hi,
              double rel_tol = 1e-12, int max_iters = 200) {
  if (!(lo < hi)) throw ValidationError("bisect: need lo < hi");
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0) == (f_hi > 0)) throw DomainError("bisect: endpoints do not bracket a root");
  for (int i = 0; i < max_iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (f_lo > 0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
      f_hi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section minimization on [lo, hi]; deterministic.
template <class F>
double golden_min(F&& f, double lo, double hi, double rel_tol = 1e-6,
                  int max_iters = 200) {
  if (!(lo < hi)) throw ValidationError("golden_min: need lo < hi");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iters; ++i) {
    if (hi - lo <= rel_tol * std::max(1.0, std::abs(lo) + std::abs(hi))) break;
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace awi
