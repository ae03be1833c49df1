#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace reglab::symbolic {

class MultiPoly;

// Dense univariate polynomial over ℚ; coefficient i multiplies t^i.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<mpq_class> coeffs);
  static UniPoly constant(const mpq_class& c);
  static UniPoly monomial(int degree, const mpq_class& c = 1);
  // Requires a polynomial in at most the given variable.
  static UniPoly from_multipoly(const MultiPoly& p, size_t var);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  mpq_class coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<size_t>(i)] : mpq_class(0); }
  const mpq_class& leading() const { return c_.back(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  UniPoly operator-() const;
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  UniPoly scaled(const mpq_class& c) const;
  UniPoly pow(unsigned n) const;
  UniPoly monic() const;
  UniPoly derivative() const;
  mpq_class evaluate(const mpq_class& t) const;
  // t^k p(1/t) for k ≥ deg p.
  UniPoly reversed(int k) const;
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }
  bool operator!=(const UniPoly& o) const { return c_ != o.c_; }
  std::string str(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly gcd(const UniPoly& a, const UniPoly& b);
// Monic squarefree factors fᵢ with p = c ∏ fᵢ^i (Yun); entries (fᵢ, i) with deg fᵢ > 0.
std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p);
// Largest e with g^e | p (g non-constant).
int multiplicity(const UniPoly& p, const UniPoly& g);
// Monic, pairwise coprime, non-constant polynomials of which every nonzero input is a constant times a product.
std::vector<UniPoly> coprime_base(const std::vector<UniPoly>& polys);

// Reduced quotient num/den with monic denominator.
class RatFunc {
 public:
  RatFunc() : num_(UniPoly()), den_(UniPoly::constant(1)) {}
  RatFunc(UniPoly num, UniPoly den);
  static RatFunc constant(const mpq_class& c) { return RatFunc(UniPoly::constant(c), UniPoly::constant(1)); }

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  mpq_class constant_value() const { return num_.coeff(0) / den_.coeff(0); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator-() const { return RatFunc(-num_, den_); }
  RatFunc pow(int n) const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }
  bool operator<(const RatFunc& o) const;
  std::string str(const std::string& var = "s") const;

 private:
  UniPoly num_, den_;
};

}  // namespace reglab::symbolic
