#include <mutex>
#include <vector>

#include "reglab/error.hpp"
#include "reglab/numerics.hpp"

namespace reglab::numerics {

Constant parse_constant(std::string_view name) {
  if (name == "pi") return Constant::pi;
  if (name == "zeta3") return Constant::zeta3;
  if (name == "catalan") return Constant::catalan;
  throw InputError("unknown constant '" + std::string(name) + "'");
}

HPReal hp_const(Constant c, int digits) {
  HPReal r = HPReal::with_bits(digits_to_bits(digits));
  switch (c) {
    case Constant::pi:
      mpfr_const_pi(r.get(), MPFR_RNDN);
      break;
    case Constant::zeta3:
      mpfr_zeta_ui(r.get(), 3, MPFR_RNDN);
      break;
    case Constant::catalan:
      mpfr_const_catalan(r.get(), MPFR_RNDN);
      break;
  }
  return r;
}

HPReal hp_const(std::string_view name, int digits) { return hp_const(parse_constant(name), digits); }

namespace {

// arctan(1/k) by its Taylor series, exact integer k.
HPReal arctan_inv(long k, int digits) {
  const int work = digits + 10;
  HPReal sum(0.0, work);
  HPReal power = HPReal::from_int(1, work) / static_cast<double>(k);
  const double k2 = static_cast<double>(k) * static_cast<double>(k);
  HPReal tol = epsilon_like(sum);
  for (long n = 0;; ++n) {
    HPReal term = power / static_cast<double>(2 * n + 1);
    if (n % 2 == 0)
      sum += term;
    else
      sum -= term;
    if (abs(term) < tol) break;
    power = power / k2;
  }
  return sum;
}

HPReal machin_pi(int digits) {
  HPReal a = arctan_inv(5, digits), b = arctan_inv(239, digits);
  return 16.0 * a - 4.0 * b;
}

// ζ(3) = (5/2) Σ (-1)^{n+1} / (n^3 C(2n, n))
HPReal zeta3_series(int digits) {
  const int work = digits + 10;
  HPReal sum(0.0, work);
  HPReal tol = epsilon_like(sum);
  mpz_class binom = 2;
  for (long n = 1;; ++n) {
    if (n > 1) binom = binom * (2 * (2 * n - 1)) / n;
    mpz_class den = binom * n * n * n;
    HPReal term = HPReal::from_int(1, work) / HPReal::from_mpz(den, work);
    if (n % 2 == 1)
      sum += term;
    else
      sum -= term;
    if (term < tol) break;
  }
  return 2.5 * sum;
}

// G = (π/8) log(2+√3) + (3/8) Σ_{n≥0} 1 / ((2n+1)^2 C(2n, n))
HPReal catalan_series(int digits) {
  const int work = digits + 10;
  HPReal sum(0.0, work);
  HPReal tol = epsilon_like(sum);
  mpz_class binom = 1;
  for (long n = 0;; ++n) {
    if (n > 0) binom = binom * (2 * (2 * n - 1)) / n;
    mpz_class den = binom * (2 * n + 1) * (2 * n + 1);
    HPReal term = HPReal::from_int(1, work) / HPReal::from_mpz(den, work);
    sum += term;
    if (term < tol) break;
  }
  HPReal three = HPReal::from_int(3, work);
  return machin_pi(work) / 8.0 * log(2.0 + sqrt(three)) + 0.375 * sum;
}

HPReal rounded(const HPReal& x, int digits) {
  HPReal r = HPReal::with_bits(digits_to_bits(digits));
  mpfr_set(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace

HPReal hp_const_series(Constant c, int digits) {
  switch (c) {
    case Constant::pi:
      return rounded(machin_pi(digits), digits);
    case Constant::zeta3:
      return rounded(zeta3_series(digits), digits);
    case Constant::catalan:
      return rounded(catalan_series(digits), digits);
  }
  throw InputError("unknown constant");
}

mpq_class bernoulli(int n) {
  if (n < 0) throw InputError("bernoulli index must be non-negative");
  static std::mutex mu;
  static std::vector<mpq_class> table{mpq_class(1)};
  std::lock_guard<std::mutex> lock(mu);
  // B_m = -1/(m+1) Σ_{k<m} C(m+1, k) B_k
  while (static_cast<int>(table.size()) <= n) {
    const int m = static_cast<int>(table.size());
    mpq_class acc = 0;
    if (m % 2 == 1 && m > 1) {
      table.emplace_back(0);
      continue;
    }
    mpz_class binom = 1;
    for (int k = 0; k < m; ++k) {
      acc += binom * table[static_cast<size_t>(k)];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    mpq_class b = -acc / (m + 1);
    b.canonicalize();
    table.push_back(b);
  }
  return table[static_cast<size_t>(n)];
}

}  // namespace reglab::numerics
