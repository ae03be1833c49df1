#include "reglab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>

#include "reglab/error.hpp"

namespace reglab::numerics {

mpfr_prec_t digits_to_bits(int digits) {
  if (digits < 1) throw InputError("precision must be at least 1 digit");
  return static_cast<mpfr_prec_t>(std::ceil((digits + 2) * 3.321928094887362));
}

HPReal::HPReal() : HPReal(digits_to_bits(15), 0) { mpfr_set_zero(v_, 1); }

HPReal::HPReal(mpfr_prec_t bits, int) { mpfr_init2(v_, bits); }

HPReal::HPReal(double v, int digits) : HPReal(digits_to_bits(digits), 0) {
  mpfr_set_d(v_, v, MPFR_RNDN);
}

HPReal::HPReal(const HPReal& other) : HPReal(other.bits(), 0) {
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

HPReal::HPReal(HPReal&& other) noexcept : HPReal(other.bits(), 0) {
  mpfr_swap(v_, other.v_);
}

HPReal& HPReal::operator=(const HPReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.bits());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

HPReal& HPReal::operator=(HPReal&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

HPReal::~HPReal() { mpfr_clear(v_); }

HPReal HPReal::with_bits(mpfr_prec_t bits) {
  HPReal r(bits, 0);
  mpfr_set_zero(r.v_, 1);
  return r;
}

HPReal HPReal::from_int(long v, int digits) {
  HPReal r(digits_to_bits(digits), 0);
  mpfr_set_si(r.v_, v, MPFR_RNDN);
  return r;
}

HPReal HPReal::from_rational(const mpq_class& q, int digits) {
  HPReal r(digits_to_bits(digits), 0);
  mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
  return r;
}

HPReal HPReal::from_mpz(const mpz_class& z, int digits) {
  HPReal r(digits_to_bits(digits), 0);
  mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
  return r;
}

HPReal HPReal::parse(const std::string& text, int digits) {
  HPReal r(digits_to_bits(digits), 0);
  if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0)
    throw InputError("cannot parse real number '" + text + "'");
  return r;
}

int HPReal::digits() const {
  return std::max(1, static_cast<int>(std::floor(bits() / 3.321928094887362)) - 2);
}

std::string HPReal::str(int sig) const {
  if (sig <= 0) sig = digits();
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
  std::string mant;
  long expo = 0;
  if (mpfr_zero_p(v_)) {
    mant.assign(static_cast<size_t>(sig), '0');
    expo = 1;
  } else {
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(sig), v_, MPFR_RNDN);
    mant = s;
    mpfr_free_str(s);
    expo = e;
  }
  std::string out;
  if (!mant.empty() && mant[0] == '-') {
    out.push_back('-');
    mant.erase(0, 1);
  }
  out.push_back(mant[0]);
  if (mant.size() > 1) {
    out.push_back('.');
    out.append(mant, 1, std::string::npos);
  }
  long k = expo - 1;
  out.push_back('e');
  out.push_back(k < 0 ? '-' : '+');
  std::string ks = std::to_string(std::labs(k));
  if (ks.size() < 2) ks.insert(0, "0");
  out += ks;
  return out;
}

HPReal& HPReal::operator+=(const HPReal& o) { return *this = *this + o; }
HPReal& HPReal::operator-=(const HPReal& o) { return *this = *this - o; }
HPReal& HPReal::operator*=(const HPReal& o) { return *this = *this * o; }
HPReal& HPReal::operator/=(const HPReal& o) { return *this = *this / o; }

namespace {

using Binary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
using BinaryD = int (*)(mpfr_ptr, mpfr_srcptr, double, mpfr_rnd_t);
using DBinary = int (*)(mpfr_ptr, double, mpfr_srcptr, mpfr_rnd_t);
using Unary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

HPReal apply(Binary f, const HPReal& a, const HPReal& b) {
  HPReal r = HPReal::with_bits(std::min(a.bits(), b.bits()));
  f(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

HPReal apply(BinaryD f, const HPReal& a, double b) {
  HPReal r = HPReal::with_bits(a.bits());
  f(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}

HPReal apply(DBinary f, double a, const HPReal& b) {
  HPReal r = HPReal::with_bits(b.bits());
  f(r.get(), a, b.get(), MPFR_RNDN);
  return r;
}

HPReal apply(Unary f, const HPReal& a) {
  HPReal r = HPReal::with_bits(a.bits());
  f(r.get(), a.get(), MPFR_RNDN);
  return r;
}

HPReal checked(HPReal r, const char* what) {
  if (mpfr_nan_p(r.get())) throw DomainError(std::string("domain error in ") + what);
  return r;
}

}  // namespace

HPReal operator-(const HPReal& a) { return apply(mpfr_neg, a); }
HPReal operator+(const HPReal& a, const HPReal& b) { return apply(mpfr_add, a, b); }
HPReal operator-(const HPReal& a, const HPReal& b) { return apply(mpfr_sub, a, b); }
HPReal operator*(const HPReal& a, const HPReal& b) { return apply(mpfr_mul, a, b); }
HPReal operator/(const HPReal& a, const HPReal& b) { return apply(mpfr_div, a, b); }
HPReal operator+(const HPReal& a, double b) { return apply(mpfr_add_d, a, b); }
HPReal operator-(const HPReal& a, double b) { return apply(mpfr_sub_d, a, b); }
HPReal operator*(const HPReal& a, double b) { return apply(mpfr_mul_d, a, b); }
HPReal operator/(const HPReal& a, double b) { return apply(mpfr_div_d, a, b); }
HPReal operator+(double a, const HPReal& b) { return apply(mpfr_add_d, b, a); }
HPReal operator-(double a, const HPReal& b) { return apply(mpfr_d_sub, a, b); }
HPReal operator*(double a, const HPReal& b) { return apply(mpfr_mul_d, b, a); }
HPReal operator/(double a, const HPReal& b) { return apply(mpfr_d_div, a, b); }

int compare(const HPReal& a, const HPReal& b) { return mpfr_cmp(a.get(), b.get()); }
int compare(const HPReal& a, double b) { return mpfr_cmp_d(a.get(), b); }

HPReal abs(const HPReal& x) { return apply(mpfr_abs, x); }

HPReal sqrt(const HPReal& x) {
  if (x.sign() < 0) throw DomainError("sqrt of a negative number");
  return apply(mpfr_sqrt, x);
}

HPReal log(const HPReal& x) {
  if (x.sign() <= 0) throw DomainError("log of a non-positive number");
  return apply(mpfr_log, x);
}

HPReal exp(const HPReal& x) { return apply(mpfr_exp, x); }
HPReal sin(const HPReal& x) { return apply(mpfr_sin, x); }
HPReal cos(const HPReal& x) { return apply(mpfr_cos, x); }

HPReal atan2(const HPReal& y, const HPReal& x) {
  if (y.is_zero() && x.is_zero()) throw DomainError("atan2(0, 0)");
  return apply(mpfr_atan2, y, x);
}

HPReal pow(const HPReal& x, const HPReal& y) { return checked(apply(mpfr_pow, x, y), "pow"); }

HPReal pow(const HPReal& x, long n) {
  HPReal r = HPReal::with_bits(x.bits());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return checked(std::move(r), "pow");
}

HPReal gamma(const HPReal& x) {
  if (mpfr_integer_p(x.get()) && x.sign() <= 0) throw DomainError("gamma pole");
  return apply(mpfr_gamma, x);
}

HPReal like(const HPReal& ref, double v) {
  HPReal r = HPReal::with_bits(ref.bits());
  mpfr_set_d(r.get(), v, MPFR_RNDN);
  return r;
}

HPReal pi_like(const HPReal& ref) {
  HPReal r = HPReal::with_bits(ref.bits());
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

HPReal rational_like(const HPReal& ref, const mpq_class& q) {
  HPReal r = HPReal::with_bits(ref.bits());
  mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

HPReal epsilon_like(const HPReal& ref) {
  HPReal r = HPReal::with_bits(ref.bits());
  mpfr_set_ui_2exp(r.get(), 1, -static_cast<mpfr_exp_t>(ref.bits()), MPFR_RNDN);
  return r;
}

HPReal hp_eval(std::string_view fn, std::span<const HPReal> args, int digits) {
  auto arity = [&](size_t n) {
    if (args.size() != n)
      throw InputError(std::string(fn) + " expects " + std::to_string(n) + " argument(s)");
  };
  auto at = [&](size_t i) {
    HPReal r = HPReal::with_bits(digits_to_bits(digits));
    mpfr_set(r.get(), args[i].get(), MPFR_RNDN);
    return r;
  };
  if (fn == "log") {
    arity(1);
    return log(at(0));
  }
  if (fn == "exp") {
    arity(1);
    return exp(at(0));
  }
  if (fn == "sqrt") {
    arity(1);
    return sqrt(at(0));
  }
  if (fn == "atan2") {
    arity(2);
    return atan2(at(0), at(1));
  }
  if (fn == "pow") {
    arity(2);
    HPReal x = at(0), y = at(1);
    if (x.sign() < 0 && !mpfr_integer_p(y.get()))
      throw DomainError("pow of a negative base with non-integer exponent");
    if (x.is_zero() && y.sign() < 0) throw DomainError("pow of zero with negative exponent");
    return pow(x, y);
  }
  throw InputError("unknown function '" + std::string(fn) + "'");
}

HPComplex make_complex(double re, double im, int digits) {
  return {HPReal(re, digits), HPReal(im, digits)};
}

HPReal norm(const HPComplex& z) { return z.re * z.re + z.im * z.im; }

HPReal abs(const HPComplex& z) {
  HPReal r = HPReal::with_bits(std::min(z.re.bits(), z.im.bits()));
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

HPReal arg(const HPComplex& z) {
  if (z.re.is_zero() && z.im.is_zero()) return like(z.re, 0.0);
  return atan2(z.im, z.re);
}

}  // namespace reglab::numerics
