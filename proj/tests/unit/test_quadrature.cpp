#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/trigamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "doctest.h"
#include "reglab/numerics.hpp"
#include "reglab/quadrature.hpp"
#include "support.hpp"

using namespace reglab::quadrature;
using reglab::symbolic::MultiPoly;
using reglab::symbolic::parse_poly;
using reglab::testing::random_complex;
using reglab::testing::uniform;
using reglab::testing::uniform_int;

namespace {

constexpr double kPi = std::numbers::pi;

MultiPoly poly(const std::string& text, std::vector<std::string> vars = {"x", "y", "z", "t"}) {
  return parse_poly(text, vars);
}

reglab::symbolic::Decomposition load(const std::string& name) {
  std::ifstream in(std::string(REGLAB_DEFAULT_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return reglab::symbolic::load_decomposition(ss.str());
}

// (1/N) Σ log|p(e^{iθ_j})| on an equispaced grid.
double trapezoid_mahler(const std::vector<cplx>& c, int n) {
  double s = 0;
  for (int j = 0; j < n; ++j) {
    cplx z = std::polar(1.0, 2 * kPi * (j + 0.5) / n), p = 0;
    for (size_t k = c.size(); k-- > 0;) p = p * z + c[k];
    s += std::log(std::abs(p));
  }
  return s / n;
}

double smith2() { return 3 * std::sqrt(3.0) / (4 * kPi) * (boost::math::trigamma(1.0 / 3) - boost::math::trigamma(2.0 / 3)) / 9; }
double smith3() { return 7 * boost::math::zeta(3.0) / (2 * kPi * kPi); }

QuadratureConfig config(int level, Rule rule = Rule::gauss_legendre_tensor) {
  QuadratureConfig c;
  c.level = level;
  c.rule = rule;
  return c;
}

}  // namespace

TEST_CASE("univariate Mahler measure examples") {
  std::vector<cplx> a{-1.0, 1.0}, b{1.0, 2.0}, c{-1.0, -1.0, 1.0};
  CHECK(std::abs(univariate_mahler(a)) < 1e-15);
  CHECK(std::abs(univariate_mahler(b) - std::log(2.0)) < 1e-15);
  CHECK(std::abs(univariate_mahler(c) - std::log((1 + std::sqrt(5.0)) / 2)) < 1e-15);
  CHECK(std::abs(univariate_mahler(c) - 0.4812118251) < 1e-10);
  std::vector<cplx> zero{0.0, 0.0};
  CHECK_THROWS_AS(univariate_mahler(zero), reglab::DomainError);
  std::vector<cplx> shifted{0.0, 0.0, -1.0, -1.0, 1.0};
  CHECK(std::abs(univariate_mahler(shifted) - univariate_mahler(c)) < 1e-15);
}

TEST_CASE("Aberth roots carry small backward error and match Jensen's formula") {
  for (int trial = 0; trial < 50; ++trial) {
    const int d = uniform_int(3, 12);
    std::vector<cplx> coeffs;
    for (int i = 0; i <= d; ++i) coeffs.push_back(random_complex(0.2, 3.0));
    RootReport r = polynomial_roots(coeffs);
    CHECK(r.roots.size() == static_cast<size_t>(d));
    CHECK(r.max_backward_error < 1e-13);
    CHECK(std::abs(univariate_mahler(coeffs) - trapezoid_mahler(coeffs, 1 << 16)) < 1e-6);
  }
}

TEST_CASE("property: m(p(x)) = m(x^deg p(1/x))") {
  const int prec = 15;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = uniform_int(1, 10);
    std::vector<cplx> coeffs;
    for (int i = 0; i <= d; ++i) coeffs.push_back(cplx(uniform(-5, 5), uniform(-5, 5)));
    std::vector<cplx> rev(coeffs.rbegin(), coeffs.rend());
    CHECK(std::abs(univariate_mahler(coeffs) - univariate_mahler(rev)) < std::pow(10.0, 3 - prec));
  }
}

TEST_CASE("torus Mahler measures") {
  CHECK(mahler_measure(poly("x"), config(8)).value == 0);
  CHECK(std::abs(mahler_measure(poly("3"), config(8)).value - std::log(3.0)) < 1e-15);
  CHECK(std::abs(mahler_measure(poly("2*x^2*y + x^3*y"), config(8)).value - std::log(2.0)) < 1e-9);
  CHECK_THROWS_AS(mahler_measure(poly("0"), config(8)), reglab::DomainError);

  auto m2 = mahler_measure(poly("1+x+y"), config(10));
  CHECK(std::abs(m2.value - smith2()) < 1e-9);
  CHECK(std::abs(m2.value - 0.3230659472) < 1e-10);
  CHECK(m2.error_estimate >= 0);
  CHECK(std::abs(m2.value - smith2()) <= std::max(m2.error_estimate, 1e-12));

  auto g = mahler_measure(poly("1+x+y"), config(10, Rule::adaptive_gk));
  CHECK(std::abs(g.value - smith2()) < 1e-9);

  // |x + y| ≤ 2 < 3 on the torus
  CHECK(std::abs(mahler_measure(poly("3+x+y"), config(9)).value - std::log(3.0)) < 1e-9);
}

TEST_CASE("three-variable Smith identity") {
  auto t0 = std::chrono::steady_clock::now();
  auto m3 = mahler_measure(poly("1+x+y+z"), config(7));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("m(1+x+y+z) = ", m3.value, " err ", m3.error_estimate, " evals ", m3.evaluations, " in ", secs, " s");
  CHECK(std::abs(m3.value - smith3()) < 1e-6);
  CHECK(std::abs(m3.value - 0.4262783988) < 1e-6);
}

TEST_CASE("property: refining the level stays within the coarser error estimate") {
  for (const char* p : {"1+x+y", "2+x+y", "1+x+x^2+y", "1+x-y^2+x*y^2", "(1+x)*(1+y)+z"}) {
    for (Rule rule : {Rule::gauss_legendre_tensor, Rule::adaptive_gk}) {
      for (int level = 4; level <= 6; ++level) {
        auto coarse = mahler_measure(poly(p), config(level, rule));
        auto fine = mahler_measure(poly(p), config(level + 1, rule));
        INFO(p, " level ", level, " rule ", to_string(rule));
        CHECK(std::abs(fine.value - coarse.value) <= coarse.error_estimate);
      }
    }
  }
}

TEST_CASE("results are deterministic and independent of the worker count") {
  auto c1 = config(8);
  auto c3 = c1;
  c3.threads = 3;
  auto a = mahler_measure(poly("1+x+y"), c1);
  auto b = mahler_measure(poly("1+x+y"), c3);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.evaluations == b.evaluations);

  auto q = config(12, Rule::qmc_sobol);
  q.seed = 7;
  auto q1 = mahler_measure(poly("1+x+y"), q);
  auto q2 = mahler_measure(poly("1+x+y"), q);
  CHECK(q1.value == q2.value);
  CHECK(std::abs(q1.value - smith2()) < std::max(q1.error_estimate, 1e-6));
}

TEST_CASE("Deninger's chain integral reproduces the measure") {
  auto c = config(9);
  CHECK(std::abs(deninger_gamma_check(poly("x+2"), c).value - std::log(2.0)) < 1e-15);
  auto d1 = deninger_gamma_check(poly("1+x+y"), c);
  CHECK(std::abs(d1.value - smith2()) < 1e-8);
  CHECK(std::abs(d1.imag_part) < 1e-12);
  CHECK(std::abs(deninger_gamma_check(poly("3+x+y"), c).value - std::log(3.0)) < 1e-8);
  // non-monic in the last variable: m(P̃) = m(1 + x)
  auto d2 = deninger_gamma_check(poly("1+x+(1+x)*y+y^2"), c);
  CHECK(std::abs(d2.value - mahler_measure(poly("1+x+(1+x)*y+y^2"), c).value) < 1e-8);
  auto d3 = deninger_gamma_check(poly("2+x+(1+x)*y"), c);
  CHECK(std::abs(d3.value - mahler_measure(poly("2+x+(1+x)*y"), c).value) < 1e-8);
}

TEST_CASE("boundary chart solve") {
  auto v0 = boundary_chart_solve(0, 0);
  REQUIRE(v0.size() == 2);
  CHECK(std::abs(v0[1] - 2 * std::acos(1.0 / 8)) < 1e-15);
  CHECK(std::abs(v0[1] - 2.8909369913) < 1e-10);
  CHECK(v0[0] == -v0[1]);
  auto v1 = boundary_chart_solve(2 * kPi / 3, 2 * kPi / 3);
  REQUIRE(v1.size() == 2);
  CHECK(std::abs(v1[1] - 2 * kPi / 3) < 1e-12);
  CHECK(boundary_chart_solve(kPi - 1e-9, 0).empty());
  CHECK(boundary_chart_solve(4, 0).empty());
  for (int trial = 0; trial < 200; ++trial) {
    double t = uniform(-kPi, kPi), s = uniform(-kPi, kPi);
    for (double v : boundary_chart_solve(t, s))
      CHECK(std::abs(8 * std::cos(t / 2) * std::cos(s / 2) * std::cos(v / 2) - 1) < 1e-13);
  }
}

TEST_CASE("regulator boundary integral, n = 2") {
  auto d = load("n2_decomposition.json");
  auto xi = reglab::symbolic::build_xi(d).xi;
  auto r = regulator_boundary_integral(d, xi, config(8));
  CHECK(std::abs(r.value - smith2()) < 1e-13);
  CHECK(std::abs(r.value - reglab::numerics::bloch_wigner(std::polar(1.0, kPi / 3)) / kPi) < 1e-13);
}

TEST_CASE("regulator boundary integral, n = 3") {
  auto d = load("n3_decomposition.json");
  auto xi = reglab::symbolic::build_xi(d).xi;
  auto r = regulator_boundary_integral(d, xi, config(10));
  auto m = mahler_measure(poly("(1+x)*(1+y)+z"), config(10));
  MESSAGE("boundary ", r.value, " +- ", r.error_estimate, " direct ", m.value, " +- ", m.error_estimate);
  CHECK(r.value > 0);
  CHECK(std::abs(r.value - m.value) < 1e-6);
  CHECK(std::abs(r.imag_part) < 1e-12);
}

TEST_CASE("regulator boundary integral, flagship") {
  auto d = load("flagship_decomposition.json");
  auto xi = reglab::symbolic::build_xi(d).xi;
  auto cfg = config(7);
  auto ts = regulator_boundary_integral(d, xi, cfg);
  CHECK(ts.config.chart == Chart::ts_sqrt);
  cfg.chart = Chart::radial;
  auto radial = regulator_boundary_integral(d, xi, cfg);
  MESSAGE("ts ", ts.value, " +- ", ts.error_estimate, " (", ts.evaluations, ") radial ", radial.value, " +- ",
          radial.error_estimate, " (", radial.evaluations, ")");
  CHECK(ts.value > 0);
  CHECK(std::abs(ts.value - radial.value) < 1e-6);
  CHECK(std::abs(ts.imag_part) < 10 * std::max(ts.error_estimate, 1e-14));
  CHECK(std::abs(radial.imag_part) < 10 * std::max(radial.error_estimate, 1e-14));
  // −6 L′(f₇, −1) − (48/7) ζ′(−2)
  CHECK(std::abs(ts.value - 0.6041658311) < 1e-6);

  CHECK(regulator_boundary_integral(d, reglab::symbolic::B2WedgeElement(2), config(7)).value == 0);
}

TEST_CASE("flagship: direct measure equals the boundary integral") {
  auto d = load("flagship_decomposition.json");
  auto xi = reglab::symbolic::build_xi(d).xi;
  auto t0 = std::chrono::steady_clock::now();
  auto m = mahler_measure(poly("(x+1)*(y+1)*(z+1)+t"), config(6));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto r = regulator_boundary_integral(d, xi, config(7));
  MESSAGE("direct ", m.value, " +- ", m.error_estimate, " (", m.evaluations, " evals, ", secs, " s) boundary ",
          r.value);
  CHECK(std::abs(m.value - r.value) < 5e-4);
  CHECK(std::abs(m.value - r.value) <= m.error_estimate + r.error_estimate + 1e-7);
}
