#include <algorithm>
#include <cmath>

#include "reglab/lattice.hpp"

namespace reglab::lattice {

using numerics::HPReal;

InsufficientPrecision::InsufficientPrecision(int have, int need)
    : std::runtime_error("insufficient precision: " + std::to_string(have) + " digits given, " + std::to_string(need) +
                         " needed"),
      have_(have),
      need_(need) {}

int required_digits(size_t len, long max_height) {
  if (len < 2) throw InputError("relation search needs at least two values");
  if (max_height < 1) throw InputError("height bound must be positive");
  const double d = (2.0 * static_cast<double>(len) - 1) * std::log10(static_cast<double>(max_height)) + 10;
  return static_cast<int>(std::ceil(d - 1e-9));
}

namespace {

HPReal at_digits(const HPReal& x, int digits) {
  HPReal r = HPReal::with_bits(numerics::digits_to_bits(digits));
  mpfr_set(r.get(), x.get(), MPFR_RNDN);
  return r;
}

HPReal residual_of(const std::vector<mpz_class>& c, const std::vector<HPReal>& v, int work) {
  HPReal s = HPReal::from_int(0, work);
  for (size_t i = 0; i < c.size(); ++i) s += HPReal::from_mpz(c[i], work) * at_digits(v[i], work);
  return numerics::abs(s);
}

void normalize(std::vector<mpz_class>& c) {
  mpz_class g = 0;
  for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : c) x /= g;
  for (const auto& x : c)
    if (x != 0) {
      if (x < 0)
        for (auto& y : c) y = -y;
      break;
    }
}

}  // namespace

std::optional<RelationReport> find_integer_relation(const std::vector<HPReal>& values, long max_height, int prec) {
  const size_t n = values.size();
  const int need = required_digits(n, max_height);
  if (prec < need) throw InsufficientPrecision(prec, need);
  for (const auto& v : values) {
    if (!v.is_finite()) throw InputError("relation search on a non-finite value");
    if (v.bits() < numerics::digits_to_bits(prec)) throw InsufficientPrecision(v.digits(), need);
  }
  const int work = prec + 10;

  HPReal vmax = HPReal::from_int(0, work);
  for (const auto& v : values)
    if (numerics::abs(v) > vmax) vmax = at_digits(numerics::abs(v), work);
  if (vmax.is_zero()) throw InputError("relation search on all-zero values");

  const HPReal scale = numerics::pow(HPReal::from_int(10, work), static_cast<long>(prec)) / vmax;
  IntMatrix basis(n, std::vector<mpz_class>(n + 1, 0));
  for (size_t i = 0; i < n; ++i) {
    basis[i][i] = 1;
    HPReal a = at_digits(values[i], work) * scale;
    mpfr_get_z(basis[i][n].get_mpz_t(), a.get(), MPFR_RNDN);
  }
  const LLLResult red = lll_reduce(basis);

  const double log_h = std::log10(static_cast<double>(max_height));
  const HPReal threshold =
      numerics::pow(HPReal::from_int(10, work), static_cast<long>(-std::floor(prec - n * log_h - 5))) * vmax;
  std::optional<RelationReport> best;
  mpz_class best_norm;
  for (const auto& row : red.basis) {
    std::vector<mpz_class> c(row.begin(), row.begin() + static_cast<long>(n));
    if (std::all_of(c.begin(), c.end(), [](const mpz_class& x) { return x == 0; })) continue;
    if (std::any_of(c.begin(), c.end(), [&](const mpz_class& x) { return abs(x) > max_height; })) continue;
    normalize(c);
    HPReal r = residual_of(c, values, work);
    if (!(r < threshold)) continue;
    const mpz_class nn = squared_norm(c);
    if (best && nn >= best_norm) continue;
    const HPReal floor_r = numerics::pow(HPReal::from_int(10, work), static_cast<long>(-work)) * vmax;
    const HPReal denom = r > floor_r ? r : floor_r;
    const double conf =
        std::log10(std::sqrt(nn.get_d())) + (numerics::log(vmax / denom) / std::log(10.0)).to_double();
    if (conf < 5) continue;
    best_norm = nn;
    best = RelationReport{c, at_digits(r, work), conf};
  }
  return best;
}

}  // namespace reglab::lattice
