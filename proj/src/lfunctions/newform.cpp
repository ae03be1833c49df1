#include <cmath>

#include "common.hpp"
#include "reglab/lfunctions.hpp"

namespace reglab::lfunctions {

using detail::at_digits;
using numerics::gamma_upper;

NewformSpec NewformSpec::from_eta(const EtaProduct& e, int level, int weight, int epsilon, long n_coeffs) {
  if (e.weight_times_two() != 2 * weight) throw InputError("eta product weight does not match the requested weight");
  const long offset = e.q_offset();
  if (offset < 1) throw InputError("eta product is not a cusp form (q-offset < 1)");
  QExpansion q = eta_qexp(e, std::max(0L, n_coeffs + 1 - offset));
  NewformSpec f;
  f.level = level;
  f.weight = weight;
  f.epsilon = epsilon;
  f.a.assign(static_cast<size_t>(n_coeffs + 1), 0);
  for (size_t i = 0; i < q.coeffs.size(); ++i) {
    const long n = offset + static_cast<long>(i);
    if (n <= n_coeffs) f.a[static_cast<size_t>(n)] = q.coeffs[i];
  }
  f.name = "eta:";
  for (size_t i = 0; i < e.factors.size(); ++i)
    f.name += (i ? "," : "") + std::to_string(e.factors[i].first) + "^" + std::to_string(e.factors[i].second);
  return f;
}

NewformSpec NewformSpec::f7(long n_coeffs) { return from_eta(EtaProduct::parse("1^3,7^3"), 7, 3, 1, n_coeffs); }

NewformSpec NewformSpec::f15(long n_coeffs) {
  return from_eta(EtaProduct::parse("1^1,3^1,5^1,15^1"), 15, 2, 1, n_coeffs);
}

namespace {

double q_scale(const NewformSpec& f) { return std::sqrt(static_cast<double>(f.level)) / (2 * M_PI); }

HPReal q_scale(const NewformSpec& f, int digits) {
  HPReal n = HPReal::from_int(f.level, digits);
  return numerics::sqrt(n) / (2.0 * numerics::pi_like(n));
}

bool nonpositive_integer(const HPReal& s) { return mpfr_integer_p(s.get()) && s.sign() <= 0; }

}  // namespace

long coefficients_needed(const NewformSpec& f, int prec, double A) {
  if (!(A > 0)) throw InputError("split parameter must be positive");
  const double c = std::min(A, 1 / A) / q_scale(f);
  return static_cast<long>(std::ceil(1.1 * (prec + 10 + f.weight) * std::log(10.0) / c)) + 10;
}

HPReal completed_lambda_with_sign(const NewformSpec& f, int epsilon, const HPReal& s, int prec, double A) {
  const long need = coefficients_needed(f, prec, A);
  if (need > f.size())
    throw InputError("insufficient coefficients: " + std::to_string(need) + " needed, " + std::to_string(f.size()) +
                     " available");
  if (!f.a.empty() && f.a[0] != 0) throw InputError("completed L-function needs a cusp form (a_0 = 0)");
  const int work = prec + 10;
  const HPReal ss = at_digits(s, work);
  const HPReal ks = HPReal::from_int(f.weight, work) - ss;
  const HPReal Q = q_scale(f, work);
  const HPReal a = HPReal(A, work), inv_a = 1.0 / a;
  HPReal sum = HPReal::from_int(0, work);
  for (long n = 1; n <= need; ++n) {
    const mpz_class& an = f.a[static_cast<size_t>(n)];
    if (an == 0) continue;
    const HPReal x = HPReal::from_int(n, work) / Q;  // n/Q
    HPReal term = numerics::pow(x, -ss) * gamma_upper(ss, x * a, work);
    term += static_cast<double>(epsilon) * numerics::pow(x, -ks) * gamma_upper(ks, x * inv_a, work);
    sum += HPReal::from_mpz(an, work) * term;
  }
  return at_digits(sum, prec);
}

HPReal completed_lambda(const NewformSpec& f, const HPReal& s, int prec, double A) {
  return completed_lambda_with_sign(f, f.epsilon, s, prec, A);
}

HPReal lfunction(const NewformSpec& f, const HPReal& s, int prec) {
  if (nonpositive_integer(s)) return HPReal(0.0, prec);
  const int work = prec + 10;
  const HPReal ss = at_digits(s, work);
  HPReal lam = completed_lambda(f, ss, work, 1.0);
  HPReal v = lam / (numerics::pow(q_scale(f, work), ss) * numerics::gamma(ss));
  return at_digits(v, prec);
}

int detect_epsilon(const NewformSpec& f, int prec) {
  const HPReal s(1.3, prec + 10);
  double spread[2];
  double scale = 0;
  for (int i = 0; i < 2; ++i) {
    const int e = i == 0 ? 1 : -1;
    HPReal a = completed_lambda_with_sign(f, e, s, prec, 0.5);
    HPReal b = completed_lambda_with_sign(f, e, s, prec, 2.0);
    spread[i] = numerics::abs(a - b).to_double();
    scale = std::max(scale, numerics::abs(a).to_double());
  }
  const double tol = std::pow(10.0, 5 - prec) * std::max(1.0, scale);
  const bool plus = spread[0] < tol, minus = spread[1] < tol;
  if (plus == minus) throw ConvergenceError("functional-equation sign could not be confirmed");
  return plus ? 1 : -1;
}

HPReal lprime_minus1(const NewformSpec& f, int prec) {
  if (f.weight < 2) throw InputError("lprime_minus1 requires weight >= 2");
  const int work = prec + 10;
  const int k = f.weight;
  // Γ(s) ~ −1/(s+1) at s = −1 and Λ(−1) = ε Λ(k+1) = ε Q^{k+1} k! L(k+1)
  const HPReal Q = q_scale(f, work);
  HPReal lam = completed_lambda(f, HPReal::from_int(k + 1, work), work, 1.0);
  HPReal L = lam / (numerics::pow(Q, static_cast<long>(k + 1)) * numerics::gamma(HPReal::from_int(k + 1, work)));
  HPReal fact = numerics::gamma(HPReal::from_int(k + 1, work));
  HPReal v = -static_cast<double>(f.epsilon) * numerics::pow(Q, static_cast<long>(k + 2)) * fact * L;
  return at_digits(v, prec);
}

HPReal lprime_minus1_numeric(const NewformSpec& f, int prec) {
  const int hexp = (prec + 8) / 4 + 1;
  const int work = prec + hexp + 10;
  const HPReal h = numerics::pow(HPReal::from_int(10, work), static_cast<long>(-hexp));
  const HPReal s0 = HPReal::from_int(-1, work);
  auto L = [&](double m) { return lfunction(f, s0 + m * h, work); };
  HPReal d = (-L(2) + 8.0 * L(1) - 8.0 * L(-1) + L(-2)) / (12.0 * h);
  return at_digits(d, prec);
}

}  // namespace reglab::lfunctions
