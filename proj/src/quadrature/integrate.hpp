#pragma once

#include <functional>
#include <span>
#include <vector>

#include "reglab/quadrature.hpp"

namespace reglab::quadrature::detail {

// `aux` is integrated alongside `value` with the same weights; `error` of an integrand value is the
// inner-integral error carried up through nesting.
struct Estimate {
  double value = 0;
  double aux = 0;
  double error = 0;
  long evals = 0;
};

using Integrand1D = std::function<Estimate(double)>;
using IntegrandND = std::function<Estimate(std::span<const double>)>;

Estimate integrate_1d(const Integrand1D& f, double a, double b, double tol, const QuadratureConfig& cfg,
                      int threads, int initial_panels = 4);

// Iterated adaptive integration over a box, outermost coordinate first.
Estimate integrate_box(const IntegrandND& f, std::span<const double> lo, std::span<const double> hi, double tol,
                       const QuadratureConfig& cfg);

// Randomly shifted Sobol points; error is three standard errors over the shifts.
Estimate integrate_qmc(const IntegrandND& f, std::span<const double> lo, std::span<const double> hi,
                       const QuadratureConfig& cfg);

double pairwise_sum(std::span<const double> v);

// Evaluates fn(0..n−1) on up to `threads` workers; results land in index order.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace reglab::quadrature::detail
