#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "reglab/error.hpp"
#include "reglab/numerics.hpp"
#include "support.hpp"

using namespace reglab::numerics;
using reglab::testing::uniform;

namespace {

double rel(const HPReal& a, const HPReal& b) { return (abs(a - b) / abs(b)).to_double(); }
double dist(const HPReal& a, const HPReal& b) { return abs(a - b).to_double(); }

HPReal mpfr_ref_zeta(unsigned long n, int digits) {
  HPReal r = HPReal::with_bits(digits_to_bits(digits));
  mpfr_zeta_ui(r.get(), n, MPFR_RNDN);
  return r;
}

// Cl₂(θ) = θ − θ log|θ| + θ Σ ζ(2n)/(n(2n+1)) (θ/2π)^{2n}
HPReal clausen_oracle(const HPReal& theta, int digits) {
  HPReal two_pi = 2.0 * hp_const_series(Constant::pi, digits + 5);
  HPReal q = theta / two_pi;
  HPReal q2 = q * q, power = q2;
  HPReal sum = theta - theta * log(abs(theta));
  for (unsigned long n = 1; n < 2000; ++n) {
    HPReal term = theta * mpfr_ref_zeta(2 * n, digits + 5) * power / static_cast<double>(n * (2 * n + 1));
    sum += term;
    if (abs(term) < HPReal(1e-40, digits + 5)) break;
    power = power * q2;
  }
  return sum;
}

long double direct_li2_im(std::complex<long double> z, std::complex<long double>* full) {
  std::complex<long double> sum = 0, p = 1;
  for (int k = 1; k < 20000; ++k) {
    p *= z;
    sum += p / static_cast<long double>(k) / static_cast<long double>(k);
  }
  *full = sum;
  return sum.imag();
}

// Γ(s, x) by composite Simpson on ∫_x^{x+L} t^{s-1} e^{-t} dt with a log substitution near x.
long double gamma_upper_oracle(long double s, long double x) {
  const int n = 200000;
  const long double L = 60.0L;
  long double h = L / n, sum = 0;
  auto f = [&](long double u) { return std::pow(x + u, s - 1) * std::exp(-(x + u)); };
  for (int i = 0; i <= n; ++i) {
    long double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    sum += w * f(i * h);
  }
  return sum * h / 3;
}

}  // namespace

TEST_CASE("precision mapping and serialization") {
  CHECK(digits_to_bits(15) >= 53);
  HPReal x = HPReal::parse("-1.25e-3", 20);
  CHECK(x.str(4) == "-1.250e-03");
  HPReal p = hp_const(Constant::pi, 30);
  HPReal back = HPReal::parse(p.str(), 30);
  CHECK(dist(p, back) < 1e-29);
  CHECK(HPReal(0.0, 10).str(3) == "0.00e+00");
}

TEST_CASE("constants agree across two algorithms") {
  for (int digits : {15, 20, 40, 80}) {
    for (Constant c : {Constant::pi, Constant::zeta3, Constant::catalan}) {
      HPReal a = hp_const(c, digits), b = hp_const_series(c, digits);
      CHECK(rel(a, b) < std::pow(10.0, 2 - digits));
    }
  }
  CHECK(hp_const("pi", 20).str(20) == "3.1415926535897932385e+00");
  CHECK_THROWS_AS(hp_const("e", 20), reglab::InputError);
}

TEST_CASE("zeta3 against a raw tail-bounded sum") {
  long double s = 0;
  const long N = 20000;
  for (long n = N; n >= 1; --n) s += 1.0L / (static_cast<long double>(n) * n * n);
  long double Nl = N;
  s += 1 / (2 * Nl * Nl) - 1 / (2 * Nl * Nl * Nl) + 1 / (4 * Nl * Nl * Nl * Nl);
  CHECK(std::fabs(static_cast<double>(s) - hp_const(Constant::zeta3, 15).to_double()) < 1e-14);
  CHECK(hp_const(Constant::zeta3, 15).str(15) == "1.20205690315959e+00");
}

TEST_CASE("catalan against an averaged alternating sum") {
  long double s = 0, prev = 0;
  const long N = 200000;
  for (long n = 0; n <= N; ++n) {
    prev = s;
    long double t = 1.0L / ((2.0L * n + 1) * (2.0L * n + 1));
    s += (n % 2 ? -t : t);
  }
  double avg = static_cast<double>((s + prev) / 2);
  CHECK(std::fabs(avg - hp_const(Constant::catalan, 10).to_double()) < 1e-12);
}

TEST_CASE("hp_eval") {
  std::vector<HPReal> one{HPReal(1.0, 30)};
  CHECK(hp_eval("log", one, 30).is_zero());
  std::vector<HPReal> yx{HPReal(0.0, 30), HPReal(-1.0, 30)};
  CHECK(dist(hp_eval("atan2", yx, 30), hp_const(Constant::pi, 30)) < 1e-29);
  std::vector<HPReal> two{HPReal(2.0, 30)};
  std::vector<HPReal> lg{hp_eval("log", two, 30)};
  CHECK(dist(hp_eval("exp", lg, 30), HPReal(2.0, 30)) < 1e-28);
  std::vector<HPReal> neg{HPReal(-1.0, 30)};
  CHECK_THROWS_AS(hp_eval("log", neg, 30), reglab::DomainError);
  CHECK_THROWS_AS(hp_eval("sqrt", neg, 30), reglab::DomainError);
  std::vector<HPReal> zz{HPReal(0.0, 30), HPReal(0.0, 30)};
  CHECK_THROWS_AS(hp_eval("atan2", zz, 30), reglab::DomainError);
  std::vector<HPReal> bad{HPReal(-2.0, 30), HPReal(0.5, 30)};
  CHECK_THROWS_AS(hp_eval("pow", bad, 30), reglab::DomainError);
  CHECK_THROWS_AS(hp_eval("cosh", one, 30), reglab::InputError);
}

TEST_CASE("complex modulus consistent with pow") {
  for (int i = 0; i < 50; ++i) {
    HPComplex z = make_complex(uniform(-5, 5), uniform(-5, 5), 30);
    std::vector<HPReal> args{abs(z), HPReal(2.0, 30)};
    CHECK(rel(hp_eval("pow", args, 30), norm(z)) < 1e-27);
  }
}

TEST_CASE("gamma_upper closed forms and poles") {
  const int d = 30;
  CHECK(dist(gamma_upper(HPReal(1.0, d), HPReal(1.0, d), d), exp(HPReal(-1.0, d))) < 1e-29);
  CHECK(dist(gamma_upper(HPReal(4.0, d), HPReal(0.0, d), d), HPReal(6.0, d)) < 1e-28);
  HPReal sqrt_pi = sqrt(hp_const(Constant::pi, d));
  CHECK(dist(gamma_upper(HPReal(0.5, d), HPReal(0.0, d), d), sqrt_pi) < 1e-29);
  CHECK_THROWS_AS(gamma_upper(HPReal(-2.0, d), HPReal(0.0, d), d), reglab::DomainError);
  CHECK_THROWS_AS(gamma_upper(HPReal(0.0, d), HPReal(0.0, d), d), reglab::DomainError);
}

TEST_CASE("gamma_upper matches direct quadrature, including negative s") {
  const double cases[][2] = {{2.5, 0.7}, {-0.5, 1.3}, {-1.0, 2.0}, {-1.7, 0.9}, {0.0, 1.5}, {-3.0, 4.0}};
  for (auto& c : cases) {
    double got = gamma_upper(HPReal(c[0], 20), HPReal(c[1], 20), 20).to_double();
    double want = static_cast<double>(gamma_upper_oracle(c[0], c[1]));
    CHECK(std::fabs(got - want) <= 1e-12 * std::fabs(want));
  }
}

TEST_CASE("gamma_upper recurrence on random arguments") {
  const int d = 40;
  for (int i = 0; i < 60; ++i) {
    HPReal s(uniform(-3, 5), d), x(uniform(0.05, 30), d);
    HPReal lhs = gamma_upper(s + 1.0, x, d) - s * gamma_upper(s, x, d) - pow(x, s) * exp(-x);
    HPReal scale = abs(gamma_upper(s + 1.0, x, d));
    CHECK((abs(lhs) / scale).to_double() < 1e-37);
  }
}

TEST_CASE("li2 special values and direct series") {
  const int d = 30;
  CHECK(abs(li2(make_complex(0, 0, d), d)).is_zero());
  HPReal pi = hp_const(Constant::pi, d);
  CHECK(dist(li2(make_complex(1, 0, d), d).re, pi * pi / 6.0) < 1e-29);
  HPReal l2 = log(HPReal(2.0, d));
  CHECK(dist(li2(make_complex(0.5, 0, d), d).re, pi * pi / 12.0 - l2 * l2 / 2.0) < 1e-29);
  for (int i = 0; i < 200; ++i) {
    std::complex<double> z = reglab::testing::random_complex(0.0, 0.9);
    std::complex<long double> ref;
    direct_li2_im(std::complex<long double>(z.real(), z.imag()), &ref);
    std::complex<double> got = li2(z);
    CHECK(std::abs(got - std::complex<double>(static_cast<double>(ref.real()), static_cast<double>(ref.imag()))) < 1e-14);
    HPComplex hp = li2(make_complex(z.real(), z.imag(), d), d);
    CHECK(std::fabs(hp.re.to_double() - static_cast<double>(ref.real())) < 1e-15);
    CHECK(std::fabs(hp.im.to_double() - static_cast<double>(ref.imag())) < 1e-15);
  }
}

TEST_CASE("double and multiprecision li2 agree everywhere") {
  for (int i = 0; i < 500; ++i) {
    std::complex<double> z = reglab::testing::random_complex(0.0, 4.0);
    std::complex<double> a = li2(z);
    HPComplex b = li2(make_complex(z.real(), z.imag(), 30), 30);
    CHECK(std::abs(a - std::complex<double>(b.re.to_double(), b.im.to_double())) < 1e-13 * (1 + std::abs(a)));
  }
}

TEST_CASE("bloch_wigner on the unit circle against the Clausen oracle") {
  const int d = 30;
  HPReal pi = hp_const(Constant::pi, d);
  CHECK(bloch_wigner(make_complex(0.7, 0, d), d).is_zero());
  HPReal g = bloch_wigner(make_complex(0, 1, d), d);
  CHECK(dist(g, hp_const(Constant::catalan, d)) < 1e-28);
  CHECK(g.str(10) == "9.159655942e-01");
  for (double frac : {1.0 / 3, 0.1, 0.77, 0.95}) {
    HPReal theta = pi * frac;
    HPComplex z{cos(theta), sin(theta)};
    CHECK(dist(bloch_wigner(z, d), clausen_oracle(theta, d)) < 1e-27);
  }
  HPComplex w{cos(pi / 3.0), sin(pi / 3.0)};
  CHECK(bloch_wigner(w, d).str(11) == "1.0149416064e+00");
  CHECK(std::fabs(bloch_wigner(std::polar(1.0, M_PI / 3)) - 1.0149416064096536) < 1e-15);
}

TEST_CASE("bloch_wigner symmetries at 30 digits") {
  const int d = 30;
  for (int i = 0; i < 1000; ++i) {
    std::complex<double> zd = reglab::testing::random_complex(0.05, 5.0);
    HPComplex z = make_complex(zd.real(), zd.imag(), d);
    HPReal dz = bloch_wigner(z, d);
    HPReal dconj = bloch_wigner(HPComplex{z.re, -z.im}, d);
    HPReal n = norm(z);
    HPReal dinv = bloch_wigner(HPComplex{z.re / n, -z.im / n}, d);
    CHECK(abs(dz + dconj).to_double() < 1e-25);
    CHECK(abs(dz + dinv).to_double() < 1e-25);
  }
}

TEST_CASE("property: five-term relation at 30 digits") {
  const int d = 30;
  auto one = HPReal::from_int(1, d);
  auto mul = [](const HPComplex& a, const HPComplex& b) {
    return HPComplex{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  };
  auto div = [&](const HPComplex& a, const HPComplex& b) {
    HPReal n = norm(b);
    return mul(a, HPComplex{b.re / n, -b.im / n});
  };
  auto omit = [&](const HPComplex& a) { return HPComplex{one - a.re, -a.im}; };
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    auto xd = reglab::testing::random_complex(0.05, 5.0), yd = reglab::testing::random_complex(0.05, 5.0);
    HPComplex x = make_complex(xd.real(), xd.imag(), d), y = make_complex(yd.real(), yd.imag(), d);
    HPComplex w = omit(mul(x, y));
    HPReal s = bloch_wigner(x, d) + bloch_wigner(y, d) + bloch_wigner(w, d) + bloch_wigner(div(omit(x), w), d) +
               bloch_wigner(div(omit(y), w), d);
    worst = std::max(worst, abs(s).to_double());
  }
  CHECK(worst < 1e-25);
}

TEST_CASE("hurwitz zeta") {
  const int d = 30;
  HPReal pi = hp_const(Constant::pi, d);
  CHECK(dist(hurwitz_zeta(HPReal(2.0, d), HPReal(1.0, d), d), pi * pi / 6.0) < 1e-28);
  CHECK(dist(hurwitz_zeta(HPReal(3.0, d), HPReal(1.0, d), d), mpfr_ref_zeta(3, d)) < 1e-28);
  CHECK(abs(hurwitz_zeta(HPReal(-2.0, d), HPReal(1.0, d), d)).to_double() < 1e-27);
  for (int i = 0; i < 40; ++i) {
    HPReal s(uniform(-3, 4), d), a(uniform(0.1, 3), d);
    if (abs(s - 1.0) < 0.05) continue;
    HPReal lhs = hurwitz_zeta(s, a, d) - hurwitz_zeta(s, a + 1.0, d);
    CHECK(rel(lhs, pow(a, -s)) < 1e-26);
    HPReal z0 = hurwitz_zeta(HPReal(0.0, d), a, d);
    CHECK(dist(z0, 0.5 - a) < 1e-27);
  }
}

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == mpq_class(-1, 2));
  CHECK(bernoulli(2) == mpq_class(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(12) == mpq_class(-691, 2730));
}
