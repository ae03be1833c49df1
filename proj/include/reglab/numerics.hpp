#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

namespace reglab::numerics {

// Decimal digits -> mantissa bits, with two guard digits.
mpfr_prec_t digits_to_bits(int digits);

class HPReal {
 public:
  HPReal();
  HPReal(double v, int digits);
  HPReal(const HPReal& other);
  HPReal(HPReal&& other) noexcept;
  HPReal& operator=(const HPReal& other);
  HPReal& operator=(HPReal&& other) noexcept;
  ~HPReal();

  static HPReal with_bits(mpfr_prec_t bits);
  static HPReal from_int(long v, int digits);
  static HPReal from_rational(const mpq_class& q, int digits);
  static HPReal from_mpz(const mpz_class& z, int digits);
  static HPReal parse(const std::string& text, int digits);

  int digits() const;
  mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // "±d.ddd…e±k" with `sig` significant digits (defaults to the working precision).
  std::string str(int sig = 0) const;
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  HPReal& operator+=(const HPReal& o);
  HPReal& operator-=(const HPReal& o);
  HPReal& operator*=(const HPReal& o);
  HPReal& operator/=(const HPReal& o);

 private:
  explicit HPReal(mpfr_prec_t bits, int);
  mpfr_t v_;
};

HPReal operator-(const HPReal& a);
HPReal operator+(const HPReal& a, const HPReal& b);
HPReal operator-(const HPReal& a, const HPReal& b);
HPReal operator*(const HPReal& a, const HPReal& b);
HPReal operator/(const HPReal& a, const HPReal& b);
HPReal operator+(const HPReal& a, double b);
HPReal operator-(const HPReal& a, double b);
HPReal operator*(const HPReal& a, double b);
HPReal operator/(const HPReal& a, double b);
HPReal operator+(double a, const HPReal& b);
HPReal operator-(double a, const HPReal& b);
HPReal operator*(double a, const HPReal& b);
HPReal operator/(double a, const HPReal& b);

int compare(const HPReal& a, const HPReal& b);
int compare(const HPReal& a, double b);
inline bool operator<(const HPReal& a, const HPReal& b) { return compare(a, b) < 0; }
inline bool operator>(const HPReal& a, const HPReal& b) { return compare(a, b) > 0; }
inline bool operator<=(const HPReal& a, const HPReal& b) { return compare(a, b) <= 0; }
inline bool operator>=(const HPReal& a, const HPReal& b) { return compare(a, b) >= 0; }
inline bool operator==(const HPReal& a, const HPReal& b) { return compare(a, b) == 0; }
inline bool operator<(const HPReal& a, double b) { return compare(a, b) < 0; }
inline bool operator>(const HPReal& a, double b) { return compare(a, b) > 0; }
inline bool operator<=(const HPReal& a, double b) { return compare(a, b) <= 0; }
inline bool operator>=(const HPReal& a, double b) { return compare(a, b) >= 0; }

HPReal abs(const HPReal& x);
HPReal sqrt(const HPReal& x);
HPReal log(const HPReal& x);
HPReal exp(const HPReal& x);
HPReal sin(const HPReal& x);
HPReal cos(const HPReal& x);
HPReal atan2(const HPReal& y, const HPReal& x);
HPReal pow(const HPReal& x, const HPReal& y);
HPReal pow(const HPReal& x, long n);
HPReal gamma(const HPReal& x);
// Precision-matched value of a double, for generic code shared with double.
HPReal like(const HPReal& ref, double v);
inline double like(double, double v) { return v; }
HPReal pi_like(const HPReal& ref);
inline double pi_like(double) { return 3.14159265358979323846; }
HPReal rational_like(const HPReal& ref, const mpq_class& q);
inline double rational_like(double, const mpq_class& q) { return q.get_d(); }
inline double epsilon_like(double) { return 1.1102230246251565e-16; }
HPReal epsilon_like(const HPReal& ref);

enum class Constant { pi, zeta3, catalan };

Constant parse_constant(std::string_view name);
HPReal hp_const(Constant c, int digits);
HPReal hp_const(std::string_view name, int digits);
// Independent series evaluation used to cross-check hp_const.
HPReal hp_const_series(Constant c, int digits);

// fn in {log, exp, atan2, pow, sqrt}
HPReal hp_eval(std::string_view fn, std::span<const HPReal> args, int digits);

template <class R>
struct Complex {
  R re;
  R im;
};
using HPComplex = Complex<HPReal>;

HPComplex make_complex(double re, double im, int digits);
HPReal abs(const HPComplex& z);
HPReal norm(const HPComplex& z);
HPReal arg(const HPComplex& z);

// Bernoulli number B_n (B_1 = -1/2), exact.
mpq_class bernoulli(int n);

std::complex<double> li2(std::complex<double> z);
HPComplex li2(const HPComplex& z, int digits);
double bloch_wigner(std::complex<double> z);
HPReal bloch_wigner(const HPComplex& z, int digits);

// Upper incomplete gamma Γ(s, x), x ≥ 0.
HPReal gamma_upper(const HPReal& s, const HPReal& x, int digits);

// Hurwitz zeta ζ(s, a) for real s ≠ 1, a > 0, by Euler–Maclaurin.
HPReal hurwitz_zeta(const HPReal& s, const HPReal& a, int digits);

}  // namespace reglab::numerics
