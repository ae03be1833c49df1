#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "reglab/error.hpp"
#include "reglab/symbolic.hpp"

namespace reglab::forms {

using cplx = std::complex<double>;
constexpr int kMaxTangents = 3;

// Value and first derivatives along up to three tangent directions (forward mode).
struct Jet {
  cplx v{};
  std::array<cplx, kMaxTangents> d{};

  Jet() = default;
  Jet(double x) : v(x) {}
  Jet(cplx x) : v(x) {}
  static Jet variable(double x, int direction);

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  Jet operator-() const;
  Jet conj() const;
};

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
Jet cos(const Jet& a);
Jet sin(const Jet& a);
Jet acos(const Jet& a);
Jet pow(const Jet& a, int n);
Jet polar(const Jet& r, const Jet& theta);

// A map from a box in ℝᵏ into (ℂ×)ⁿ, differentiated in forward mode.
class Parametrization {
 public:
  using Map = std::function<std::vector<Jet>(std::span<const Jet>)>;
  Parametrization(int ambient_dim, int param_dim, Map map);

  int ambient_dim() const { return n_; }
  int param_dim() const { return k_; }
  // Coordinates with derivatives along the coordinate directions ∂/∂u₁, …, ∂/∂u_k.
  std::vector<Jet> evaluate(std::span<const double> u) const;

 private:
  int n_, k_;
  Map map_;
};

double factorial(int n);
// 1/((2j+1)!(n−2j−1)!)
double c_coefficient(int j, int n);

// Deninger's η(x₁,…,xₙ) on n−1 tangents; x holds the coordinate jets.
cplx eta_form(std::span<const Jet> x);
// Goncharov's r_n(n)(g₁∧…∧gₙ) on n−1 tangents.
cplx rnn_form(std::span<const Jet> g);
// r_n(n−1)({f}₂⊗g₁∧…∧g_{n−2}) on n−2 tangents (n = g.size() + 2).
cplx rho_form(const Jet& f, std::span<const Jet> g);
// Jets of the basis polynomials at a point given by coordinate jets.
std::vector<Jet> basis_jets(const symbolic::MultiplicativeBasis& basis, std::span<const Jet> coords);
Jet element_jet(const symbolic::FactoredElement& f, std::span<const Jet> basis_values);
Jet generator_jet(const symbolic::Generator& g, std::span<const Jet> basis_values);

// ρ(ξ) = Σ c ρ(f, g…) evaluated on the frame carried by the jets.
cplx rho_xi(const symbolic::B2WedgeElement& xi, std::span<const Jet> basis_values);

// Finite-difference exterior derivative of ρ(ξ) on a flat (n−1)-cell inside V_P, against η(x₁,…,xₙ).
// The free variables move along point + Σ uᵢ·directions[i]; the eliminated one follows the relation.
struct ExactnessSample {
  cplx d_rho;
  cplx eta;
  double residual;
};

ExactnessSample exactness_sample(const symbolic::Decomposition& d, const symbolic::B2WedgeElement& xi,
                                 std::span<const cplx> point, const std::vector<std::vector<cplx>>& directions,
                                 double h);

}  // namespace reglab::forms
