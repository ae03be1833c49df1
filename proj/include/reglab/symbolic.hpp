#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "reglab/error.hpp"

namespace reglab::symbolic {

using Rational = mpq_class;
using Exponents = std::vector<int>;

class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars);

  static MultiPoly constant(std::vector<std::string> vars, const Rational& c);
  static MultiPoly variable(std::vector<std::string> vars, size_t index);
  static MultiPoly monomial(std::vector<std::string> vars, const Exponents& e, const Rational& c);

  const std::vector<std::string>& vars() const { return vars_; }
  size_t nvars() const { return vars_.size(); }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  // Leading term in lex order (x₁ > x₂ > …).
  const std::pair<const Exponents, Rational>& leading() const;
  int total_degree() const;
  int degree_in(size_t var) const;
  bool uses(size_t var) const { return degree_in(var) > 0 || min_degree_in(var) < 0; }
  int min_degree_in(size_t var) const;

  void add_term(const Exponents& e, const Rational& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const MultiPoly& b) { return a *= b; }
  MultiPoly scaled(const Rational& c) const;
  MultiPoly pow(unsigned n) const;
  bool operator==(const MultiPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly substitute(size_t var, const MultiPoly& value) const;
  // P = Σ_k coefficient[k] · var^k
  std::vector<MultiPoly> coefficients_in(size_t var) const;
  // Multiply by a monomial (exponents may be negative only if the result stays polynomial).
  MultiPoly shifted(const Exponents& e) const;

  template <class T>
  T evaluate(std::span<const T> x) const;

  std::string str() const;

 private:
  std::vector<std::string> vars_;
  std::map<Exponents, Rational> terms_;
};

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);

// numerator / x^denominator
struct LaurentPoly {
  MultiPoly numerator;
  Exponents denominator;
};

LaurentPoly parse_laurent(std::string_view text, const std::vector<std::string>& vars);
// Throws if the text has a non-trivial monomial denominator.
MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars);

class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, size_t pos);
  size_t position() const { return pos_; }

 private:
  size_t pos_;
};

struct RationalFunction {
  MultiPoly numerator;
  MultiPoly denominator;
};

RationalFunction to_rational_function(const LaurentPoly& l);

class MultiplicativeBasis {
 public:
  MultiplicativeBasis(std::vector<std::string> vars, std::vector<MultiPoly> elements);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<MultiPoly>& elements() const { return elements_; }
  size_t size() const { return elements_.size(); }
  const MultiPoly& operator[](size_t i) const { return elements_[i]; }
  // Index of the basis element equal to the given variable, if any.
  std::optional<size_t> variable_index(size_t var) const;

 private:
  std::vector<std::string> vars_;
  std::vector<MultiPoly> elements_;
};

struct FactoredElement {
  Rational constant{1};
  std::map<int, int> exponents;  // basis index -> exponent, zeros omitted

  bool is_one() const { return constant == 1 && exponents.empty(); }
  FactoredElement inverse() const;
  FactoredElement operator*(const FactoredElement& o) const;
  FactoredElement pow(int n) const;
  bool operator==(const FactoredElement& o) const { return constant == o.constant && exponents == o.exponents; }
  bool operator<(const FactoredElement& o) const;
};

class NotFactorable : public InputError {
 public:
  explicit NotFactorable(const MultiPoly& remainder);
  const MultiPoly& remainder() const { return remainder_; }

 private:
  MultiPoly remainder_;
};

FactoredElement factor_over_basis(const MultiPoly& f, const MultiplicativeBasis& basis);
FactoredElement factor_over_basis(const RationalFunction& f, const MultiplicativeBasis& basis);
RationalFunction expand(const FactoredElement& f, const MultiplicativeBasis& basis);
std::string to_string(const FactoredElement& f, const MultiplicativeBasis& basis);

// A generator of F×⊗ℚ: a basis polynomial or a rational prime.
struct Generator {
  enum class Kind { basis, prime };
  Kind kind = Kind::basis;
  long index = 0;  // basis index or prime value
  bool operator==(const Generator& o) const { return kind == o.kind && index == o.index; }
  bool operator<(const Generator& o) const {
    return kind != o.kind ? kind < o.kind : index < o.index;
  }
};

using GenTuple = std::vector<Generator>;
using LogVector = std::map<Generator, Rational>;

// Additive image in F×⊗ℚ (sign and torsion dropped, constant split into primes).
LogVector log_vector(const FactoredElement& f);

class WedgeElement {
 public:
  WedgeElement() = default;
  explicit WedgeElement(int degree) : degree_(degree) {}

  int degree() const { return degree_; }
  const std::map<GenTuple, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Adds c · g₁∧…∧g_k, sorting the tuple with its sign; repeated generators vanish.
  void add(GenTuple tuple, const Rational& c);

  WedgeElement& operator+=(const WedgeElement& o);
  WedgeElement& operator-=(const WedgeElement& o);
  friend WedgeElement operator+(WedgeElement a, const WedgeElement& b) { return a += b; }
  friend WedgeElement operator-(WedgeElement a, const WedgeElement& b) { return a -= b; }
  WedgeElement scaled(const Rational& c) const;
  bool operator==(const WedgeElement& o) const { return degree_ == o.degree_ && terms_ == o.terms_; }

 private:
  int degree_ = 0;
  std::map<GenTuple, Rational> terms_;
};

struct WedgeTerm {
  Rational coefficient;
  std::vector<FactoredElement> factors;
};

WedgeElement wedge_normalize(const std::vector<WedgeTerm>& terms);
std::string to_string(const WedgeElement& w, const MultiplicativeBasis& basis);

class B2WedgeElement {
 public:
  using Key = std::pair<FactoredElement, GenTuple>;

  B2WedgeElement() = default;
  explicit B2WedgeElement(int wedge_degree) : degree_(wedge_degree) {}

  int wedge_degree() const { return degree_; }
  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Adds c · {f}₂ ⊗ w with the normalizations {1}₂ = 0 and {1/f}₂ = −{f}₂.
  void add(const FactoredElement& f, const WedgeElement& w, const Rational& c);

  B2WedgeElement& operator+=(const B2WedgeElement& o);
  B2WedgeElement scaled(const Rational& c) const;
  friend B2WedgeElement operator+(B2WedgeElement a, const B2WedgeElement& b) { return a += b; }
  friend B2WedgeElement operator-(B2WedgeElement a, const B2WedgeElement& b) { return a += b.scaled(-1); }
  bool operator==(const B2WedgeElement& o) const { return degree_ == o.degree_ && terms_ == o.terms_; }

 private:
  int degree_ = 0;
  std::map<Key, Rational> terms_;
};

std::string to_string(const B2WedgeElement& x, const MultiplicativeBasis& basis);

// Pullback by τ: xᵢ ↦ 1/xᵢ.
class Involution {
 public:
  explicit Involution(const MultiplicativeBasis& basis);

  FactoredElement apply(const FactoredElement& f) const;
  WedgeElement apply(const WedgeElement& w) const;
  B2WedgeElement apply(const B2WedgeElement& x) const;
  // τ*(bᵢ) for each basis element.
  const std::vector<FactoredElement>& table() const { return table_; }

 private:
  std::vector<FactoredElement> table_;
};

struct DecompositionTerm {
  Rational coefficient;
  FactoredElement f;
  std::vector<FactoredElement> g;
};

// A Lalín-type decomposition x₁∧…∧xₙ = Σ cⱼ fⱼ∧(1−fⱼ)∧gⱼ over a basis, in ℚ(V_P).
struct Decomposition {
  std::vector<std::string> vars;  // all n variables of P
  std::map<std::string, std::string> relations;  // eliminated variable -> expression
  MultiplicativeBasis basis;
  std::vector<std::string> basis_text;
  WedgeElement lhs;
  std::vector<DecompositionTerm> terms;
};

Decomposition load_decomposition(const std::string& json_text);

struct DecompositionCheck {
  bool equal = false;
  WedgeElement difference;  // lhs − rhs
};

DecompositionCheck check_decomposition(const WedgeElement& lhs, const std::vector<DecompositionTerm>& rhs,
                                       const MultiplicativeBasis& basis);

struct XiTriple {
  B2WedgeElement xi;
  B2WedgeElement xi_star;
  B2WedgeElement lambda;
};

XiTriple build_xi(const Decomposition& d);

// ---- implementation of the evaluation template ----

template <class T>
T MultiPoly::evaluate(std::span<const T> x) const {
  T sum(0.0);
  for (const auto& [e, c] : terms_) {
    T term(c.get_d());
    for (size_t j = 0; j < e.size(); ++j) {
      if (e[j] > 0) {
        for (int k = 0; k < e[j]; ++k) term = term * x[j];
      } else if (e[j] < 0) {
        for (int k = 0; k < -e[j]; ++k) term = term / x[j];
      }
    }
    sum = sum + term;
  }
  return sum;
}

}  // namespace reglab::symbolic
