#include <cstdint>
#include <sstream>

#include "reglab/lfunctions.hpp"

namespace reglab::lfunctions {

int EtaProduct::weight_times_two() const {
  int w = 0;
  for (const auto& [d, r] : factors) w += r;
  return w;
}

long EtaProduct::q_offset() const {
  long s = 0;
  for (const auto& [d, r] : factors) s += static_cast<long>(d) * r;
  if (s % 24 != 0) throw InputError("eta product has non-integral q-offset: sum d*r = " + std::to_string(s));
  return s / 24;
}

EtaProduct EtaProduct::parse(const std::string& text) {
  std::string t = text;
  if (t.rfind("eta:", 0) == 0) t = t.substr(4);
  EtaProduct e;
  if (t.empty()) return e;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const size_t caret = item.find('^');
    try {
      size_t used = 0;
      const int d = std::stoi(item.substr(0, caret), &used);
      if (used != item.substr(0, caret).size()) throw std::invalid_argument("");
      int r = 1;
      if (caret != std::string::npos) {
        const std::string rs = item.substr(caret + 1);
        r = std::stoi(rs, &used);
        if (used != rs.size()) throw std::invalid_argument("");
      }
      if (d < 1) throw std::invalid_argument("");
      e.factors.emplace_back(d, r);
    } catch (const std::logic_error&) {
      throw InputError("malformed eta factor '" + item + "' (expected d^r)");
    }
  }
  return e;
}

namespace {

struct Overflow {};

// Sparse q-series with constant term 1: Σ c_j q^{e_j}.
using Sparse = std::vector<std::pair<long, long>>;

Sparse eta_series(long n) {
  // ∏(1 − q^m) = Σ_k (−1)^k q^{k(3k−1)/2}, k ∈ ℤ
  Sparse s{{0, 1}};
  for (long k = 1;; ++k) {
    const long a = k * (3 * k - 1) / 2, b = k * (3 * k + 1) / 2;
    if (a >= n) break;
    const long sign = k % 2 ? -1 : 1;
    s.emplace_back(a, sign);
    if (b < n) s.emplace_back(b, sign);
  }
  return s;
}

Sparse eta_cubed_series(long n) {
  // ∏(1 − q^m)³ = Σ_{k≥0} (−1)^k (2k+1) q^{k(k+1)/2}
  Sparse s;
  for (long k = 0; k * (k + 1) / 2 < n; ++k) s.emplace_back(k * (k + 1) / 2, (k % 2 ? -1 : 1) * (2 * k + 1));
  return s;
}

inline void addmul(std::int64_t& acc, std::int64_t c, std::int64_t x) {
  std::int64_t p;
  if (__builtin_mul_overflow(c, x, &p) || __builtin_add_overflow(acc, p, &acc)) throw Overflow{};
}
inline void addmul(mpz_class& acc, long c, const mpz_class& x) {
  if (c >= 0)
    mpz_addmul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(c));
  else
    mpz_submul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(-c));
}

// acc ← acc · S(q^d), in place from the top
template <class T>
void multiply(std::vector<T>& acc, const Sparse& s, long d) {
  const long n = static_cast<long>(acc.size());
  for (long i = n - 1; i >= 0; --i)
    for (size_t j = 1; j < s.size(); ++j) {
      const long k = i - d * s[j].first;
      if (k < 0) break;
      addmul(acc[static_cast<size_t>(i)], s[j].second, acc[static_cast<size_t>(k)]);
    }
}

// acc ← acc / S(q^d), in place from the bottom
template <class T>
void divide(std::vector<T>& acc, const Sparse& s, long d) {
  const long n = static_cast<long>(acc.size());
  for (long i = 0; i < n; ++i)
    for (size_t j = 1; j < s.size(); ++j) {
      const long k = i - d * s[j].first;
      if (k < 0) break;
      addmul(acc[static_cast<size_t>(i)], -s[j].second, acc[static_cast<size_t>(k)]);
    }
}

template <class T>
std::vector<T> expand(const EtaProduct& e, long n) {
  std::vector<T> acc(static_cast<size_t>(n), T(0));
  if (n > 0) acc[0] = T(1);
  for (const auto& [d, r] : e.factors) {
    const long len = (n + d - 1) / d + 1;
    if (r > 0) {
      const Sparse cube = eta_cubed_series(len), one = eta_series(len);
      for (int i = 0; i < r / 3; ++i) multiply(acc, cube, d);
      for (int i = 0; i < r % 3; ++i) multiply(acc, one, d);
    } else {
      const Sparse one = eta_series(len);
      for (int i = 0; i < -r; ++i) divide(acc, one, d);
    }
  }
  return acc;
}

}  // namespace

QExpansion eta_qexp(const EtaProduct& e, long n_terms) {
  if (n_terms < 0) throw InputError("negative number of terms");
  QExpansion q;
  q.offset = e.q_offset();
  try {
    for (std::int64_t c : expand<std::int64_t>(e, n_terms)) q.coeffs.emplace_back(static_cast<long>(c));
  } catch (const Overflow&) {
    q.coeffs = expand<mpz_class>(e, n_terms);
  }
  return q;
}

}  // namespace reglab::lfunctions
