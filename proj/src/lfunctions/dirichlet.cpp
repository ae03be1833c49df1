#include <cmath>

#include <numeric>

#include "common.hpp"
#include "reglab/lfunctions.hpp"

namespace reglab::lfunctions {

using detail::at_digits;

namespace {

bool squarefree(long n) {
  n = std::labs(n);
  for (long p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    if (n % p == 0) n /= p;
  }
  return true;
}

bool fundamental(int d) {
  if (d == 1) return true;
  const int r = ((d % 4) + 4) % 4;
  if (r == 1) return squarefree(d);
  if (r != 0) return false;
  const int m = d / 4, rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && squarefree(m);
}

}  // namespace

DirichletChar::DirichletChar(int modulus, std::vector<int> values) : m_(modulus), values_(std::move(values)) {
  if (m_ < 1 || static_cast<int>(values_.size()) != m_) throw InputError("character table must have `modulus` entries");
  for (int a = 0; a < m_; ++a) {
    const bool unit = std::gcd(a, m_) == 1;
    if (unit != (values_[static_cast<size_t>(a)] != 0)) throw InputError("character must vanish exactly off the units");
  }
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b)
      if (values_[static_cast<size_t>(a * b % m_)] != values_[static_cast<size_t>(a)] * values_[static_cast<size_t>(b)])
        throw InputError("character table is not multiplicative");
  odd_ = m_ > 2 && values_[static_cast<size_t>(m_ - 1)] == -1;
  name_ = "mod " + std::to_string(m_);
}

DirichletChar DirichletChar::trivial() {
  DirichletChar c(1, {1});
  c.name_ = "trivial";
  return c;
}

DirichletChar DirichletChar::kronecker(int d) {
  if (d == 0 || !fundamental(d)) throw InputError("Kronecker character needs a fundamental discriminant");
  if (d == 1) return trivial();
  const int m = std::abs(d);
  std::vector<int> v(static_cast<size_t>(m));
  mpz_class dd(d);
  for (int a = 0; a < m; ++a) v[static_cast<size_t>(a)] = mpz_kronecker_si(dd.get_mpz_t(), a);
  DirichletChar c(m, v);
  c.name_ = "chi_" + std::to_string(d);
  return c;
}

DirichletChar DirichletChar::parse(const std::string& name) {
  if (name == "trivial" || name == "1") return trivial();
  std::string digits = name;
  for (const char* prefix : {"chi_", "chi"})
    if (digits.rfind(prefix, 0) == 0) {
      digits = digits.substr(std::string(prefix).size());
      break;
    }
  try {
    size_t used = 0;
    const int d = std::stoi(digits, &used);
    if (used != digits.size()) throw InputError("");
    return kronecker(d);
  } catch (const std::logic_error&) {
    throw InputError("unknown character '" + name + "'");
  } catch (const InputError&) {
    throw InputError("unknown character '" + name + "' (expected trivial or chi_<fundamental discriminant>)");
  }
}

int DirichletChar::operator()(long n) const {
  long r = n % m_;
  if (r < 0) r += m_;
  return values_[static_cast<size_t>(r)];
}

HPReal dirichlet_L_continued(const DirichletChar& chi, const HPReal& s, int prec) {
  const int work = prec + 10;
  const int m = chi.modulus();
  HPReal ss = at_digits(s, work);
  HPReal sum = HPReal::from_int(0, work);
  for (int a = 1; a <= m; ++a) {
    const int c = chi(a);
    if (c == 0) continue;
    HPReal z = numerics::hurwitz_zeta(ss, HPReal::from_rational(mpq_class(a, m), work), work);
    sum += static_cast<double>(c) * z;
  }
  sum *= numerics::pow(HPReal::from_int(m, work), -ss);
  return at_digits(sum, prec);
}

HPReal dirichlet_L(const DirichletChar& chi, const HPReal& s, int prec) {
  if (!(s > 1.0)) throw DomainError("dirichlet_L requires s > 1");
  return dirichlet_L_continued(chi, s, prec);
}

HPReal dirichlet_Lprime_neg(const DirichletChar& chi, int prec) {
  const int q = chi.modulus();
  if (!chi.is_odd() || (q != 3 && q != 4) || chi(q - 1) != -1)
    throw InputError("L'(chi, -1) is supported for chi_-3 and chi_-4");
  const int work = prec + 10;
  HPReal L2 = dirichlet_L(chi, HPReal::from_int(2, work), work);
  HPReal qq = HPReal::from_int(q, work);
  HPReal v = qq * numerics::sqrt(qq) / (4.0 * numerics::pi_like(qq)) * L2;
  return at_digits(v, prec);
}

HPReal zeta_prime_minus2(int prec) {
  const int work = prec + 10;
  HPReal pi = numerics::hp_const(numerics::Constant::pi, work);
  HPReal v = -numerics::hp_const(numerics::Constant::zeta3, work) / (4.0 * pi * pi);
  return at_digits(v, prec);
}

}  // namespace reglab::lfunctions
