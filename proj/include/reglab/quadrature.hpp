#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "reglab/error.hpp"
#include "reglab/symbolic.hpp"

namespace reglab::quadrature {

using cplx = std::complex<double>;

enum class Rule { gauss_legendre_tensor, adaptive_gk, qmc_sobol };
enum class Chart { automatic, radial, ts_sqrt };

Rule parse_rule(const std::string& s);
std::string to_string(Rule r);
Chart parse_chart(const std::string& s);
std::string to_string(Chart c);

struct QuadratureConfig {
  Rule rule = Rule::gauss_legendre_tensor;
  int level = 8;    // target absolute error 10^-level (adaptive rules); 2^level points per shift (qmc)
  int points = 10;  // Gauss–Legendre nodes per panel
  int depth = 40;   // maximum bisection depth of a panel
  std::uint64_t seed = 1;
  int prec = 15;
  int threads = 1;
  Chart chart = Chart::automatic;
};

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  long evaluations = 0;
  QuadratureConfig config;
  // Imaginary part of the normalized integral; zero up to error for regulator integrals.
  double imag_part = 0;
};

struct RootReport {
  std::vector<cplx> roots;
  double max_backward_error = 0;
  int iterations = 0;
};

// Coefficients in ascending order. Aberth–Ehrlich for degree ≥ 3, closed forms below.
RootReport polynomial_roots(std::span<const cplx> coeffs);
double univariate_mahler(std::span<const cplx> coeffs);

// m(P) over 𝕋ⁿ, the last variable handled by Jensen's formula.
QuadratureResult mahler_measure(const symbolic::MultiPoly& p, const QuadratureConfig& cfg);

// All v ∈ (−π, π) with 8 cos(t/2) cos(s/2) cos(v/2) = 1.
std::vector<double> boundary_chart_solve(double t, double s);

// ((−1)^{n−1}/(2πi)^{n−1}) ∫_{∂Γ} ρ(ξ) for a decomposition whose relation eliminates the last variable
// (P monic in it, so m(P̃) = 0). ∂Γ = {|xᵢ| = 1, |R(x)| = 1} is charted radially around the origin of the
// angle torus, or (automatic for R = −(1+x)(1+y)(1+z)) by the (t, s) chart with a square-root edge substitution.
QuadratureResult regulator_boundary_integral(const symbolic::Decomposition& d, const symbolic::B2WedgeElement& xi,
                                             const QuadratureConfig& cfg);

// Angles of sample points on ∂Γ (for plotting).
std::vector<std::vector<double>> boundary_points(const symbolic::Decomposition& d, int per_axis);

// m(P̃) + ((−1)^{n−1}/(2πi)^{n−1}) ∫_Γ η(x₁,…,xₙ), with η from the forms module.
QuadratureResult deninger_gamma_check(const symbolic::MultiPoly& p, const QuadratureConfig& cfg);

}  // namespace reglab::quadrature
