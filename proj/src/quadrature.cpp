#include "awi/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "awi/constants.hpp"
#include "awi/errors.hpp"

namespace awi {

namespace {

// Implicit-shift QL on a symmetric tridiagonal matrix, accumulating only the
// first row of the eigenvector matrix (all that Gauss weights need).
// d: diagonal, e: subdiagonal (e[n-1] unused), f: first-row accumulator.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e,
                    std::vector<double>& f) {
  const int n = static_cast<int>(d.size());
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-15 * dd) break;
      }
      if (m != l) {
        if (iter++ == 50) throw ConvergenceError("gauss_hermite: QL failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        for (int i = m - 1; i >= l; --i) {
          double fi = s * e[i];
          const double b = c * e[i];
          r = std::hypot(fi, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = fi / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          const double tmp = f[i + 1];
          f[i + 1] = s * f[i] + c * tmp;
          f[i] = c * f[i] - s * tmp;
        }
        if (r == 0.0 && m - 1 >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

GaussHermite gauss_hermite(int n) {
  if (n < 1) throw ValidationError("gauss_hermite: need at least one node");

  // Jacobi matrix of the (physicists') Hermite polynomials.
  std::vector<double> d(n, 0.0);
  std::vector<double> e(n, 0.0);
  std::vector<double> f(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) e[i] = std::sqrt(0.5 * (i + 1));
  f[0] = 1.0;

  tridiagonal_ql(d, e, f);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

  const double mu0 = std::sqrt(constants::pi);  // integral of exp(-x^2)
  GaussHermite gh;
  gh.nodes.resize(n);
  gh.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    gh.nodes[i] = d[order[i]];
    gh.weights[i] = mu0 * f[order[i]] * f[order[i]];
  }

  // The rule is symmetric; enforce the +/- pairing exactly.
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double x = 0.5 * (gh.nodes[j] - gh.nodes[i]);
    gh.nodes[j] = x;
    gh.nodes[i] = -x;
    const double w = 0.5 * (gh.weights[i] + gh.weights[j]);
    gh.weights[i] = gh.weights[j] = w;
  }
  if (n % 2 == 1) gh.nodes[n / 2] = 0.0;
  return gh;
}

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

struct Worker {
  const std::function<double(double)>& f;
  int max_depth;
  bool converged = true;
  double worst = 0.0;

  double recurse(double a, double b, double fa, double fm, double fb, double whole,
                 double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double err = (left + right - whole) / 15.0;
    if (std::abs(err) <= tol || depth >= max_depth) {
      if (std::abs(err) > tol) {
        converged = false;
        if (tol > 0) worst = std::max(worst, std::abs(err) / tol);
      }
      return left + right + err;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                  double b, double abs_tol, int max_depth) {
  if (!(b > a)) throw ValidationError("integrate_adaptive: need b > a");
  Worker w{f, max_depth};
  const double fa = f(a);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  const double value = w.recurse(a, b, fa, fm, fb, whole, abs_tol, 0);
  return {value, w.converged, w.worst};
}

}  // namespace awi
