#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "reglab/error.hpp"
#include "reglab/numerics.hpp"

namespace reglab::lattice {

using IntMatrix = std::vector<std::vector<mpz_class>>;

class InsufficientPrecision : public std::runtime_error {
 public:
  InsufficientPrecision(int have, int need);
  int have() const { return have_; }
  int need() const { return need_; }

 private:
  int have_, need_;
};

struct LLLResult {
  IntMatrix basis;      // reduced rows
  IntMatrix transform;  // basis = transform · input
  long swaps = 0;
};

// Integral LLL on the rows of b.
LLLResult lll_reduce(const IntMatrix& b, const mpq_class& delta = mpq_class(3, 4));
// Size reduction and the Lovász condition, from an exact rational Gram–Schmidt.
bool is_lll_reduced(const IntMatrix& b, const mpq_class& delta = mpq_class(3, 4));
mpz_class determinant(const IntMatrix& m);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
mpz_class squared_norm(const std::vector<mpz_class>& v);

struct RelationReport {
  std::vector<mpz_class> c;
  numerics::HPReal residual;
  double confidence = 0;  // log₁₀(‖c‖·max|vᵢ| / residual)
};

// Digits needed before a relation of height H among `len` values is searched for.
int required_digits(size_t len, long max_height);
// LLL on [I | round(10^prec · vᵢ / max|v|)]; throws InsufficientPrecision below required_digits.
std::optional<RelationReport> find_integer_relation(const std::vector<numerics::HPReal>& values, long max_height,
                                                    int prec);

}  // namespace reglab::lattice
