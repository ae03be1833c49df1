#include <cmath>
#include <numbers>

#include "compiled.hpp"
#include "integrate.hpp"
#include "reglab/forms.hpp"
#include "reglab/quadrature.hpp"

namespace reglab::quadrature {

using detail::CompiledPoly;
using detail::Estimate;

Rule parse_rule(const std::string& s) {
  if (s == "gauss_legendre_tensor" || s == "gl") return Rule::gauss_legendre_tensor;
  if (s == "adaptive_gk" || s == "gk") return Rule::adaptive_gk;
  if (s == "qmc_sobol" || s == "qmc") return Rule::qmc_sobol;
  throw InputError("unknown quadrature rule '" + s + "'");
}

std::string to_string(Rule r) {
  switch (r) {
    case Rule::gauss_legendre_tensor:
      return "gauss_legendre_tensor";
    case Rule::adaptive_gk:
      return "adaptive_gk";
    case Rule::qmc_sobol:
      return "qmc_sobol";
  }
  return "?";
}

Chart parse_chart(const std::string& s) {
  if (s == "automatic") return Chart::automatic;
  if (s == "radial") return Chart::radial;
  if (s == "ts_sqrt") return Chart::ts_sqrt;
  throw InputError("unknown boundary chart '" + s + "'");
}

std::string to_string(Chart c) {
  switch (c) {
    case Chart::automatic:
      return "automatic";
    case Chart::radial:
      return "radial";
    case Chart::ts_sqrt:
      return "ts_sqrt";
  }
  return "?";
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Split {
  std::vector<size_t> outer;  // active variables except the last
  size_t inner;
  std::vector<CompiledPoly> coeffs;  // P = Σ coeffs[k] · x_inner^k
};

// Drops unused variables and monomial factors (neither changes the measure).
Split split_last(const symbolic::MultiPoly& p) {
  std::vector<size_t> active;
  for (size_t v = 0; v < p.nvars(); ++v)
    if (p.uses(v)) active.push_back(v);
  if (active.empty()) throw InputError("constant polynomial has no variables to split");
  if (active.size() > 4) throw InputError("Mahler measures are supported for at most 4 variables");
  symbolic::Exponents shift(p.nvars(), 0);
  for (size_t v = 0; v < p.nvars(); ++v) shift[v] = -p.min_degree_in(v);
  const symbolic::MultiPoly q = p.shifted(shift);
  Split s;
  s.inner = active.back();
  s.outer.assign(active.begin(), active.end() - 1);
  for (const auto& c : q.coefficients_in(s.inner)) s.coeffs.emplace_back(c, s.outer);
  return s;
}

std::vector<cplx> torus_point(std::span<const double> theta) {
  std::vector<cplx> x;
  for (double t : theta) x.push_back(std::polar(1.0, t));
  return x;
}

QuadratureResult finish(const Estimate& e, double scale, const QuadratureConfig& cfg) {
  QuadratureResult r;
  r.value = scale * e.value;
  r.imag_part = scale * e.aux;
  r.error_estimate = std::abs(scale) * e.error;
  r.evaluations = e.evals;
  r.config = cfg;
  return r;
}

double tolerance(const QuadratureConfig& cfg) { return std::pow(10.0, -cfg.level); }

}  // namespace

QuadratureResult mahler_measure(const symbolic::MultiPoly& p, const QuadratureConfig& cfg) {
  if (p.is_zero()) throw DomainError("Mahler measure of the zero polynomial");
  if (p.is_constant()) {
    QuadratureResult r;
    r.value = std::log(std::abs(p.constant_term().get_d()));
    r.config = cfg;
    return r;
  }
  const Split s = split_last(p);
  const size_t k = s.outer.size();
  if (k == 0) {
    std::vector<cplx> c;
    for (const auto& ci : s.coeffs) c.push_back(ci(std::span<const cplx>{}));
    QuadratureResult r;
    r.value = univariate_mahler(c);
    r.evaluations = 1;
    r.config = cfg;
    return r;
  }
  detail::IntegrandND f = [&s](std::span<const double> theta) {
    const std::vector<cplx> x = torus_point(theta);
    std::vector<cplx> c;
    c.reserve(s.coeffs.size());
    for (const auto& ci : s.coeffs) c.push_back(ci(std::span<const cplx>(x)));
    return Estimate{univariate_mahler(c), 0, 0, 1};
  };
  const std::vector<double> lo(k, -kPi), hi(k, kPi);
  const double volume = std::pow(2 * kPi, static_cast<double>(k));
  return finish(detail::integrate_box(f, lo, hi, tolerance(cfg) * volume, cfg), 1 / volume, cfg);
}

QuadratureResult deninger_gamma_check(const symbolic::MultiPoly& p, const QuadratureConfig& cfg) {
  if (p.is_zero()) throw DomainError("Mahler measure of the zero polynomial");
  if (p.is_constant()) return mahler_measure(p, cfg);
  const Split s = split_last(p);
  const size_t k = s.outer.size();
  if (k == 0) {
    // The chain is the set of roots with |x| ≥ 1; m(P̃) is log|lead|.
    std::vector<cplx> c;
    for (const auto& ci : s.coeffs) c.push_back(ci(std::span<const cplx>{}));
    while (c.back() == 0.0) c.pop_back();
    QuadratureResult r;
    r.value = std::log(std::abs(c.back()));
    if (c.size() > 1)
      for (cplx z : polynomial_roots(c).roots)
        if (std::abs(z) >= 1) r.value += std::log(std::abs(z));
    r.evaluations = 1;
    r.config = cfg;
    return r;
  }

  // m(P̃) from the leading coefficient in the last variable
  const auto coeffs = p.coefficients_in(s.inner);
  const QuadratureResult lead = mahler_measure(coeffs.back(), cfg);

  using forms::Jet;
  const int n = static_cast<int>(k) + 1;
  const cplx norm = std::pow(-1.0, n - 1) / std::pow(cplx(0, 2 * kPi), n - 1);
  detail::IntegrandND f = [&s, k, norm](std::span<const double> theta) {
    std::vector<Jet> x(k);
    for (size_t j = 0; j < k; ++j) {
      x[j] = Jet(std::polar(1.0, theta[j]));
      x[j].d[j] = cplx(0, 1) * x[j].v;
    }
    std::vector<Jet> c;
    std::vector<cplx> cv;
    for (const auto& ci : s.coeffs) {
      c.push_back(ci(std::span<const Jet>(x)));
      cv.push_back(c.back().v);
    }
    cplx total = 0;
    for (cplx z : polynomial_roots(cv).roots) {
      if (std::abs(z) < 1) continue;
      Jet dp_theta(0.0);
      cplx dp_z = 0, zk = 1;
      for (size_t i = 0; i < c.size(); ++i) {
        dp_theta += c[i] * Jet(zk);
        if (i + 1 < c.size()) dp_z += static_cast<double>(i + 1) * c[i + 1].v * zk;
        zk *= z;
      }
      if (std::abs(dp_z) < 1e-14) throw DomainError("the chain meets a singular point of the zero locus");
      Jet xn(z);
      for (size_t j = 0; j < k; ++j) xn.d[j] = -dp_theta.d[j] / dp_z;
      std::vector<Jet> all = x;
      all.push_back(xn);
      total += forms::eta_form(all);
    }
    const cplx v = norm * total;
    return Estimate{v.real(), v.imag(), 0, 1};
  };
  const std::vector<double> lo(k, -kPi), hi(k, kPi);
  QuadratureResult r = finish(detail::integrate_box(f, lo, hi, tolerance(cfg), cfg), 1.0, cfg);
  r.value += lead.value;
  r.error_estimate += lead.error_estimate;
  r.evaluations += lead.evaluations;
  return r;
}

}  // namespace reglab::quadrature
