#include <cmath>

#include "reglab/error.hpp"
#include "reglab/numerics.hpp"

namespace reglab::numerics {

namespace {

HPReal at_bits(const HPReal& x, mpfr_prec_t bits) {
  HPReal r = HPReal::with_bits(bits);
  mpfr_set(r.get(), x.get(), MPFR_RNDN);
  return r;
}

HPReal gamma_inc_positive(const HPReal& s, const HPReal& x) {
  HPReal r = HPReal::with_bits(std::min(s.bits(), x.bits()));
  mpfr_gamma_inc(r.get(), s.get(), x.get(), MPFR_RNDN);
  return r;
}

// E₁(x) = -Ei(-x) for x > 0.
HPReal expint_e1(const HPReal& x) {
  HPReal r = HPReal::with_bits(x.bits());
  HPReal mx = -x;
  mpfr_eint(r.get(), mx.get(), MPFR_RNDN);
  return -r;
}

}  // namespace

HPReal gamma_upper(const HPReal& s, const HPReal& x, int digits) {
  if (x.sign() < 0) throw DomainError("gamma_upper requires x >= 0");
  const bool integral = mpfr_integer_p(s.get()) != 0;
  const mpfr_prec_t out_bits = digits_to_bits(digits);
  if (x.is_zero()) {
    if (integral && s.sign() <= 0) throw DomainError("gamma_upper pole at non-positive integer s with x = 0");
    return at_bits(gamma(at_bits(s, out_bits + 16)), out_bits);
  }
  if (s.sign() > 0) {
    mpfr_prec_t b = out_bits + 16;
    return at_bits(gamma_inc_positive(at_bits(s, b), at_bits(x, b)), out_bits);
  }
  const double sd = s.to_double();
  const long steps = static_cast<long>(std::ceil(std::fabs(sd))) + 1;
  const double xd = x.to_double();
  const int guard = 10 + static_cast<int>(steps * (1 + std::ceil(std::log10(1.0 + xd))));
  const mpfr_prec_t b = digits_to_bits(digits + guard);
  HPReal xs = at_bits(x, b);
  HPReal emx = exp(-xs);
  HPReal ss = at_bits(s, b);
  HPReal g = HPReal::with_bits(b);
  long count = steps;
  if (integral) {
    // Γ(0, x) = E₁(x), then downward.
    g = expint_e1(xs);
    count = -static_cast<long>(sd);
  } else {
    g = gamma_inc_positive(ss + static_cast<double>(steps), xs);
  }
  for (long j = count - 1; j >= 0; --j) {
    HPReal sj = ss + static_cast<double>(j);
    g = (g - pow(xs, sj) * emx) / sj;
  }
  return at_bits(g, out_bits);
}

HPReal hurwitz_zeta(const HPReal& s, const HPReal& a, int digits) {
  if (a.sign() <= 0) throw DomainError("hurwitz_zeta requires a > 0");
  if (s == like(s, 1.0)) throw DomainError("hurwitz_zeta pole at s = 1");
  const double sd = s.to_double();
  const long n_direct = digits + 10 + static_cast<long>(std::ceil(std::fabs(sd)));
  const int work = digits + 10 + static_cast<int>(std::ceil(std::max(0.0, -sd) * std::log10(n_direct + 2.0)));
  const mpfr_prec_t b = digits_to_bits(work);
  HPReal ss = at_bits(s, b), aa = at_bits(a, b);
  HPReal sum = at_bits(like(ss, 0.0), b);
  for (long n = 0; n < n_direct; ++n) sum += pow(aa + static_cast<double>(n), -ss);
  HPReal xN = aa + static_cast<double>(n_direct);
  HPReal xs = pow(xN, -ss);
  sum += xs * xN / (ss - 1.0) + 0.5 * xs;
  HPReal poch = ss;  // s(s+1)…(s+2k-2)
  HPReal xpow = xs / xN;  // x^{-s-2k+1}
  HPReal inv_x2 = 1.0 / (xN * xN);
  HPReal eps = epsilon_like(sum);
  mpz_class fact = 2;  // (2k)!
  for (int k = 1; k < 4 * work + 50; ++k) {
    if (k > 1) {
      poch = poch * (ss + static_cast<double>(2 * k - 3)) * (ss + static_cast<double>(2 * k - 2));
      xpow = xpow * inv_x2;
      fact *= (2 * k - 1) * (2 * k);
    }
    HPReal term = rational_like(ss, bernoulli(2 * k) / mpq_class(fact)) * poch * xpow;
    sum += term;
    if (term.is_zero() || abs(term) <= eps * abs(sum)) break;
  }
  return at_bits(sum, digits_to_bits(digits));
}

}  // namespace reglab::numerics
