#include <algorithm>

#include "reglab/lattice.hpp"

namespace reglab::lattice {

namespace {

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  mpz_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Nearest integer to a/b for b > 0, halves rounded up.
mpz_class round_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_class twice = 2 * a + b;
  mpz_class den = 2 * b;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), den.get_mpz_t());
  return q;
}

void check_shape(const IntMatrix& b) {
  if (b.empty()) throw InputError("empty basis");
  if (b.size() > 20) throw InputError("lattice dimension above 20 is not supported");
  for (const auto& row : b)
    if (row.size() != b[0].size()) throw InputError("basis rows have different lengths");
}

}  // namespace

mpz_class squared_norm(const std::vector<mpz_class>& v) { return dot(v, v); }

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.size(), std::vector<mpz_class>(b.empty() ? 0 : b[0].size(), 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k)
      for (size_t j = 0; j < c[i].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

mpz_class determinant(const IntMatrix& m) {
  const size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw InputError("determinant of a non-square matrix");
  if (n == 0) return 1;
  IntMatrix a = m;
  mpz_class prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

LLLResult lll_reduce(const IntMatrix& input, const mpq_class& delta) {
  check_shape(input);
  if (!(delta > mpq_class(1, 4) && delta <= 1)) throw InputError("LLL parameter must lie in (1/4, 1]");
  const size_t n = input.size();
  LLLResult r;
  r.basis = input;
  r.transform.assign(n, std::vector<mpz_class>(n, 0));
  for (size_t i = 0; i < n; ++i) r.transform[i][i] = 1;
  auto& b = r.basis;
  auto& h = r.transform;
  const mpz_class p = delta.get_num(), q = delta.get_den();

  // d[i+1] = Π_{j≤i} |b_j*|², lambda[k][j] = d[j+1] μ_{k,j}
  std::vector<mpz_class> d(n + 1, 0);
  IntMatrix lambda(n, std::vector<mpz_class>(n, 0));
  d[0] = 1;
  d[1] = dot(b[0], b[0]);
  if (d[1] == 0) throw InputError("basis rows are linearly dependent");
  if (n == 1) return r;

  auto red = [&](size_t k, size_t l) {
    if (2 * abs(lambda[k][l]) <= d[l + 1]) return;
    const mpz_class qq = round_div(lambda[k][l], d[l + 1]);
    for (size_t c = 0; c < b[k].size(); ++c) b[k][c] -= qq * b[l][c];
    for (size_t c = 0; c < n; ++c) h[k][c] -= qq * h[l][c];
    lambda[k][l] -= qq * d[l + 1];
    for (size_t i = 0; i < l; ++i) lambda[k][i] -= qq * lambda[l][i];
  };

  size_t k = 1, kmax = 0;
  auto swap = [&](size_t kk, size_t km) {
    std::swap(b[kk], b[kk - 1]);
    std::swap(h[kk], h[kk - 1]);
    for (size_t j = 0; j + 1 < kk; ++j) std::swap(lambda[kk][j], lambda[kk - 1][j]);
    const mpz_class lam = lambda[kk][kk - 1];
    mpz_class B = (d[kk - 1] * d[kk + 1] + lam * lam) / d[kk];
    for (size_t i = kk + 1; i <= km; ++i) {
      const mpz_class t = lambda[i][kk];
      lambda[i][kk] = (d[kk + 1] * lambda[i][kk - 1] - lam * t) / d[kk];
      lambda[i][kk - 1] = (B * t + lam * lambda[i][kk]) / d[kk + 1];
    }
    d[kk] = B;
    ++r.swaps;
  };

  while (k < n) {
    if (k > kmax) {
      kmax = k;
      for (size_t j = 0; j <= k; ++j) {
        mpz_class u = dot(b[k], b[j]);
        for (size_t i = 0; i < j; ++i) u = (d[i + 1] * u - lambda[k][i] * lambda[j][i]) / d[i];
        if (j < k)
          lambda[k][j] = u;
        else
          d[k + 1] = u;
      }
      if (d[k + 1] == 0) throw InputError("basis rows are linearly dependent");
    }
    red(k, k - 1);
    if (q * (d[k + 1] * d[k - 1] + lambda[k][k - 1] * lambda[k][k - 1]) < p * d[k] * d[k]) {
      swap(k, kmax);
      if (k > 1) --k;
      continue;
    }
    for (size_t l = k - 1; l-- > 0;) red(k, l);
    ++k;
  }
  if (!is_lll_reduced(b, delta)) throw ConvergenceError("LLL post-check failed");
  return r;
}

bool is_lll_reduced(const IntMatrix& b, const mpq_class& delta) {
  const size_t n = b.size();
  std::vector<std::vector<mpq_class>> star(n);
  std::vector<mpq_class> B(n);
  mpq_class last_mu;
  for (size_t i = 0; i < n; ++i) {
    star[i].assign(b[i].begin(), b[i].end());
    for (size_t j = 0; j < i; ++j) {
      mpq_class num = 0;
      for (size_t c = 0; c < b[i].size(); ++c) num += mpq_class(b[i][c]) * star[j][c];
      const mpq_class mu = num / B[j];
      if (abs(mu) > mpq_class(1, 2)) return false;
      for (size_t c = 0; c < b[i].size(); ++c) star[i][c] -= mu * star[j][c];
      if (j + 1 == i) last_mu = mu;
    }
    B[i] = 0;
    for (const auto& x : star[i]) B[i] += x * x;
    if (B[i] == 0) return false;
    if (i > 0 && B[i] < (delta - last_mu * last_mu) * B[i - 1]) return false;
  }
  return true;
}

}  // namespace reglab::lattice
