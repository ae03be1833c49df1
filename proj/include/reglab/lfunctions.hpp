#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "reglab/error.hpp"
#include "reglab/numerics.hpp"

namespace reglab::lfunctions {

using numerics::HPReal;

class DirichletChar {
 public:
  // values[a] = χ(a) for 0 ≤ a < modulus
  DirichletChar(int modulus, std::vector<int> values);
  static DirichletChar trivial();
  // Kronecker symbol (d/·) for a fundamental discriminant d.
  static DirichletChar kronecker(int d);
  // "trivial", "chi_-3", "chi_-4", "-3", "-4", ...
  static DirichletChar parse(const std::string& name);

  int modulus() const { return m_; }
  int operator()(long n) const;
  bool is_odd() const { return odd_; }
  const std::string& name() const { return name_; }

 private:
  int m_;
  std::vector<int> values_;
  bool odd_ = false;
  std::string name_;
};

struct EtaProduct {
  std::vector<std::pair<int, int>> factors;  // (multiplier d, exponent r)

  int weight_times_two() const;
  // Σ d·r / 24; throws if not integral.
  long q_offset() const;
  // "1^3,7^3" (an optional "eta:" prefix is accepted)
  static EtaProduct parse(const std::string& text);
};

struct QExpansion {
  long offset = 0;                  // exponent of the first coefficient
  std::vector<mpz_class> coeffs;    // coeffs[i] multiplies q^{offset + i}
};

QExpansion eta_qexp(const EtaProduct& e, long n_terms);

struct NewformSpec {
  std::string name;
  int level = 1;
  int weight = 2;
  int epsilon = 1;
  std::vector<mpz_class> a;  // a[n] for 0 ≤ n < a.size(); a[0] = 0

  static NewformSpec from_eta(const EtaProduct& e, int level, int weight, int epsilon, long n_coeffs);
  static NewformSpec f7(long n_coeffs = 2000);
  static NewformSpec f15(long n_coeffs = 2000);
  long size() const { return static_cast<long>(a.size()) - 1; }
};

HPReal dirichlet_L(const DirichletChar& chi, const HPReal& s, int prec);
// L(χ, s) continued to all real s ≠ 1 (Hurwitz decomposition).
HPReal dirichlet_L_continued(const DirichletChar& chi, const HPReal& s, int prec);
// L′(χ, −1) for χ₋₃, χ₋₄ from the functional equation: (q^{3/2}/4π)·L(χ, 2).
HPReal dirichlet_Lprime_neg(const DirichletChar& chi, int prec);

HPReal zeta_prime_minus2(int prec);

// Number of coefficients the incomplete-gamma series needs for `prec` digits with split A.
long coefficients_needed(const NewformSpec& f, int prec, double A);
// Λ(s) = (√N/2π)^s Γ(s) L(f, s), as the two-sided incomplete-gamma sum split at A.
HPReal completed_lambda(const NewformSpec& f, const HPReal& s, int prec, double A = 1.0);
// Same with a caller-chosen sign in place of f.epsilon (for sign detection).
HPReal completed_lambda_with_sign(const NewformSpec& f, int epsilon, const HPReal& s, int prec, double A);
// L(f, s) = Λ(s) / ((√N/2π)^s Γ(s)); zero at the trivial zeros s ∈ {0, −1, −2, …}.
HPReal lfunction(const NewformSpec& f, const HPReal& s, int prec);

// The sign for which Λ is independent of the split parameter.
int detect_epsilon(const NewformSpec& f, int prec);

// L′(f, −1) = −ε (√N/2π)^{k+2} k! L(f, k+1)
HPReal lprime_minus1(const NewformSpec& f, int prec);
// Central difference of the Λ-based L at s = −1.
HPReal lprime_minus1_numeric(const NewformSpec& f, int prec);

}  // namespace reglab::lfunctions
