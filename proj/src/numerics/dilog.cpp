#include <mutex>
#include <type_traits>
#include <vector>

#include "reglab/numerics.hpp"

namespace reglab::numerics {

namespace {

using std::abs;
using std::atan2;
using std::log;
using std::sqrt;

template <class R>
Complex<R> add(const Complex<R>& a, const Complex<R>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class R>
Complex<R> sub(const Complex<R>& a, const Complex<R>& b) {
  return {a.re - b.re, a.im - b.im};
}
template <class R>
Complex<R> mul(const Complex<R>& a, const Complex<R>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R>
Complex<R> scale(const Complex<R>& a, const R& s) {
  return {a.re * s, a.im * s};
}
template <class R>
R norm2(const Complex<R>& a) {
  return a.re * a.re + a.im * a.im;
}
template <class R>
Complex<R> inv(const Complex<R>& a) {
  R n = norm2(a);
  return {a.re / n, -a.im / n};
}
template <class R>
Complex<R> clog(const Complex<R>& a) {
  return {log(norm2(a)) * 0.5, atan2(a.im, a.re)};
}

mpq_class li2_coeff(int k) {
  // B_{2k} / (2k+1)!
  mpz_class f = 1;
  for (int i = 2; i <= 2 * k + 1; ++i) f *= i;
  mpq_class c = bernoulli(2 * k) / mpq_class(f);
  c.canonicalize();
  return c;
}

const std::vector<double>& li2_coeffs_double() {
  static const std::vector<double> table = [] {
    std::vector<double> t;
    for (int k = 0; k <= 40; ++k) t.push_back(li2_coeff(k).get_d());
    return t;
  }();
  return table;
}

mpq_class li2_coeff_cached(int k) {
  static std::mutex mu;
  static std::vector<mpq_class> table;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(table.size()) <= k) table.push_back(li2_coeff(static_cast<int>(table.size())));
  return table[static_cast<size_t>(k)];
}

double coeff(double, int k) { return li2_coeffs_double()[static_cast<size_t>(k)]; }
HPReal coeff(const HPReal& ref, int k) { return rational_like(ref, li2_coeff_cached(k)); }

template <class R>
Complex<R> li2_direct(const Complex<R>& z) {
  R eps = epsilon_like(z.re);
  Complex<R> sum = z, power = z;
  for (long k = 2; k < 100000; ++k) {
    power = mul(power, z);
    R k2 = like(z.re, static_cast<double>(k) * static_cast<double>(k));
    Complex<R> term{power.re / k2, power.im / k2};
    sum = add(sum, term);
    if (norm2(term) <= eps * eps * norm2(sum)) break;
  }
  return sum;
}

// Li₂(z) = Σ B_n u^{n+1}/(n+1)! with u = -log(1-z).
template <class R>
Complex<R> li2_bernoulli(const Complex<R>& z) {
  R one = like(z.re, 1.0);
  Complex<R> u = clog(Complex<R>{one - z.re, -z.im});
  u = {-u.re, -u.im};
  Complex<R> u2 = mul(u, u);
  Complex<R> sum = sub(u, scale(u2, like(z.re, 0.25)));
  Complex<R> power = u;
  R eps = epsilon_like(z.re);
  for (int k = 1; k < 200; ++k) {
    if constexpr (std::is_same_v<R, double>)
      if (k > 40) break;
    power = mul(power, u2);
    Complex<R> term = scale(power, coeff(z.re, k));
    sum = add(sum, term);
    if (norm2(term) <= eps * eps * norm2(sum)) break;
  }
  return sum;
}

template <class R>
Complex<R> li2_generic(const Complex<R>& z) {
  R zero = like(z.re, 0.0), one = like(z.re, 1.0);
  R pi = pi_like(z.re);
  R zeta2 = pi * pi / 6.0;
  if (z.re == zero && z.im == zero) return {zero, zero};
  if (z.re == one && z.im == zero) return {zeta2, zero};
  R n2 = norm2(z);
  if (n2 > 1.0) {
    Complex<R> w = li2_generic(inv(z));
    Complex<R> l = clog(Complex<R>{-z.re, -z.im});
    Complex<R> l2 = mul(l, l);
    return {-w.re - zeta2 - l2.re * 0.5, -w.im - l2.im * 0.5};
  }
  if (n2 <= 0.25) return li2_direct(z);
  Complex<R> omz{one - z.re, -z.im};
  if (norm2(omz) <= 0.25) {
    Complex<R> d = li2_direct(omz);
    Complex<R> p = mul(clog(z), clog(omz));
    return {zeta2 - p.re - d.re, -p.im - d.im};
  }
  return li2_bernoulli(z);
}

template <class R>
R bloch_wigner_generic(const Complex<R>& z) {
  R zero = like(z.re, 0.0);
  if (z.re == zero && z.im == zero) return zero;
  R n2 = norm2(z);
  if (n2 > 1.0) return -bloch_wigner_generic(inv(z));
  R one = like(z.re, 1.0);
  if (z.re == one && z.im == zero) return zero;
  Complex<R> l = li2_generic(z);
  return l.im + atan2(-z.im, one - z.re) * log(n2) * 0.5;
}

HPComplex at_digits(const HPComplex& z, int digits) {
  mpfr_prec_t b = digits_to_bits(digits);
  HPComplex r{HPReal::with_bits(b), HPReal::with_bits(b)};
  mpfr_set(r.re.get(), z.re.get(), MPFR_RNDN);
  mpfr_set(r.im.get(), z.im.get(), MPFR_RNDN);
  return r;
}

}  // namespace

std::complex<double> li2(std::complex<double> z) {
  Complex<double> r = li2_generic(Complex<double>{z.real(), z.imag()});
  return {r.re, r.im};
}

HPComplex li2(const HPComplex& z, int digits) {
  return at_digits(li2_generic(at_digits(z, digits + 3)), digits);
}

double bloch_wigner(std::complex<double> z) {
  return bloch_wigner_generic(Complex<double>{z.real(), z.imag()});
}

HPReal bloch_wigner(const HPComplex& z, int digits) {
  HPReal r = bloch_wigner_generic(at_digits(z, digits + 3));
  HPReal out = HPReal::with_bits(digits_to_bits(digits));
  mpfr_set(out.get(), r.get(), MPFR_RNDN);
  return out;
}

}  // namespace reglab::numerics
