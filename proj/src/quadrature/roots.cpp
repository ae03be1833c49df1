#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "reglab/quadrature.hpp"

namespace reglab::quadrature {

namespace {

// |p(z)| / Σ|c_k||z|^k
double backward_error(std::span<const cplx> c, cplx z) {
  cplx p = 0;
  double scale = 0;
  const double az = std::abs(z);
  for (size_t k = c.size(); k-- > 0;) {
    p = p * z + c[k];
    scale = scale * az + std::abs(c[k]);
  }
  return scale == 0 ? 0 : std::abs(p) / scale;
}

std::vector<cplx> quadratic_roots(cplx c0, cplx c1, cplx c2) {
  cplx s = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
  if ((std::conj(c1) * s).real() < 0) s = -s;
  cplx q = -0.5 * (c1 + s);
  if (q == 0.0) return {0.0, 0.0};
  return {q / c2, c0 / q};
}

std::vector<cplx> aberth(std::span<const cplx> c, int& iterations) {
  const size_t d = c.size() - 1;
  // Initial guesses on a circle of radius given by the geometric mean of the roots.
  const double radius = std::pow(std::abs(c[0] / c[d]), 1.0 / static_cast<double>(d));
  std::vector<cplx> z(d);
  for (size_t i = 0; i < d; ++i)
    z[i] = std::polar(radius, 2 * std::numbers::pi * (static_cast<double>(i) + 0.25) / static_cast<double>(d) + 0.4);
  std::vector<bool> done(d, false);
  for (iterations = 0; iterations < 500; ++iterations) {
    bool all = true;
    for (size_t i = 0; i < d; ++i) {
      if (done[i]) continue;
      cplx p = c[d], dp = 0;
      for (size_t k = d; k-- > 0;) {
        dp = dp * z[i] + p;
        p = p * z[i] + c[k];
      }
      if (p == 0.0) {
        done[i] = true;
        continue;
      }
      const cplx ratio = p / dp;
      cplx sum = 0;
      for (size_t j = 0; j < d; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      const cplx w = ratio / (1.0 - ratio * sum);
      z[i] -= w;
      if (std::abs(w) <= 4e-16 * std::max(1.0, std::abs(z[i])))
        done[i] = true;
      else
        all = false;
    }
    if (all) break;
  }
  return z;
}

}  // namespace

RootReport polynomial_roots(std::span<const cplx> coeffs) {
  size_t lo = 0, hi = coeffs.size();
  while (hi > 0 && coeffs[hi - 1] == 0.0) --hi;
  if (hi == 0) throw DomainError("zero polynomial");
  while (coeffs[lo] == 0.0) ++lo;
  RootReport r;
  r.roots.assign(lo, 0.0);
  std::span<const cplx> c = coeffs.subspan(lo, hi - lo);
  const size_t d = c.size() - 1;
  std::vector<cplx> z;
  if (d == 1)
    z = {-c[0] / c[1]};
  else if (d == 2)
    z = quadratic_roots(c[0], c[1], c[2]);
  else if (d > 2)
    z = aberth(c, r.iterations);
  for (cplx root : z) r.max_backward_error = std::max(r.max_backward_error, backward_error(c, root));
  r.roots.insert(r.roots.end(), z.begin(), z.end());
  if (!(r.max_backward_error < 1e-11)) {
    std::ostringstream msg;
    msg << "root finder did not converge: backward error " << r.max_backward_error << " after " << r.iterations
        << " iterations";
    throw ConvergenceError(msg.str());
  }
  return r;
}

double univariate_mahler(std::span<const cplx> coeffs) {
  size_t lo = 0, hi = coeffs.size();
  while (hi > 0 && coeffs[hi - 1] == 0.0) --hi;
  if (hi == 0) throw DomainError("Mahler measure of the zero polynomial");
  while (coeffs[lo] == 0.0) ++lo;
  std::span<const cplx> c = coeffs.subspan(lo, hi - lo);
  if (c.size() == 1) return std::log(std::abs(c[0]));
  if (c.size() == 2) return std::log(std::max(std::abs(c[0]), std::abs(c[1])));
  double m = std::log(std::abs(c.back()));
  for (cplx z : polynomial_roots(c).roots) m += std::max(0.0, std::log(std::abs(z)));
  return m;
}

}  // namespace reglab::quadrature
