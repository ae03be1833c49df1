#pragma once

#include <complex>
#include <span>
#include <vector>

#include "reglab/symbolic.hpp"

namespace reglab::quadrature::detail {

// A polynomial with double coefficients restricted to a subset of its variables, for fast evaluation.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  CompiledPoly(const symbolic::MultiPoly& p, const std::vector<size_t>& vars) {
    for (const auto& [e, c] : p.terms()) {
      Term t{c.get_d(), {}};
      for (size_t k = 0; k < vars.size(); ++k) {
        t.exps.push_back(e[vars[k]]);
        max_degree_ = std::max(max_degree_, e[vars[k]]);
      }
      terms_.push_back(std::move(t));
    }
  }

  bool is_zero() const { return terms_.empty(); }

  template <class T>
  T operator()(std::span<const T> x) const {
    std::vector<std::vector<T>> powers(x.size());
    for (size_t k = 0; k < x.size(); ++k) {
      powers[k].push_back(T(1.0));
      for (int d = 1; d <= max_degree_; ++d) powers[k].push_back(powers[k].back() * x[k]);
    }
    T sum(0.0);
    for (const auto& t : terms_) {
      T term(t.coefficient);
      for (size_t k = 0; k < x.size(); ++k)
        if (t.exps[k]) term = term * powers[k][static_cast<size_t>(t.exps[k])];
      sum = sum + term;
    }
    return sum;
  }

 private:
  struct Term {
    double coefficient;
    std::vector<int> exps;
  };
  std::vector<Term> terms_;
  int max_degree_ = 0;
};

}  // namespace reglab::quadrature::detail
