#include <algorithm>

#include "reglab/forms.hpp"

namespace reglab::forms {

namespace {

struct CellMap {
  const symbolic::Decomposition& d;
  std::vector<size_t> free_vars;
  size_t eliminated;
  symbolic::MultiPoly relation;

  explicit CellMap(const symbolic::Decomposition& dec) : d(dec) {
    if (dec.relations.size() != 1) throw InputError("exactness check needs exactly one eliminated variable");
    const auto& [name, expr] = *dec.relations.begin();
    eliminated = static_cast<size_t>(std::find(dec.vars.begin(), dec.vars.end(), name) - dec.vars.begin());
    relation = symbolic::parse_poly(expr, dec.vars);
    for (size_t i = 0; i < dec.vars.size(); ++i)
      if (i != eliminated) free_vars.push_back(i);
  }

  // Coordinate jets with derivatives along the chosen directions.
  std::vector<Jet> coords(std::span<const cplx> base, const std::vector<std::vector<cplx>>& dirs,
                          std::span<const int> which) const {
    std::vector<Jet> x(d.vars.size());
    for (size_t j = 0; j < free_vars.size(); ++j) {
      Jet c(base[j]);
      for (size_t w = 0; w < which.size(); ++w) c.d[w] = dirs[static_cast<size_t>(which[w])][j];
      x[free_vars[j]] = c;
    }
    x[eliminated] = relation.evaluate<Jet>(x);
    return x;
  }
};

}  // namespace

ExactnessSample exactness_sample(const symbolic::Decomposition& d, const symbolic::B2WedgeElement& xi,
                                 std::span<const cplx> point, const std::vector<std::vector<cplx>>& directions,
                                 double h) {
  CellMap cell(d);
  const int k = static_cast<int>(cell.free_vars.size());
  if (static_cast<int>(directions.size()) != k || static_cast<int>(point.size()) != k)
    throw InputError("exactness cell needs n−1 directions in n−1 free variables");

  auto rho_on = [&](std::span<const cplx> base, std::span<const int> which) {
    std::vector<Jet> x = cell.coords(base, directions, which);
    return rho_xi(xi, basis_jets(d.basis, x));
  };

  // dω(∂₁,…,∂_k) = Σᵢ (−1)^{i−1} ∂ᵢ ω(∂₁,…,∂̂ᵢ,…,∂_k)
  cplx d_rho = 0;
  std::vector<cplx> shifted(point.begin(), point.end());
  for (int i = 0; i < k; ++i) {
    std::vector<int> rest;
    for (int j = 0; j < k; ++j)
      if (j != i) rest.push_back(j);
    auto at = [&](double s) {
      for (int j = 0; j < k; ++j) shifted[static_cast<size_t>(j)] = point[static_cast<size_t>(j)] + s * directions[static_cast<size_t>(i)][static_cast<size_t>(j)];
      return rho_on(shifted, rest);
    };
    cplx deriv = (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
    d_rho += (i % 2 ? -1.0 : 1.0) * deriv;
  }

  std::vector<int> all(static_cast<size_t>(k));
  for (int j = 0; j < k; ++j) all[static_cast<size_t>(j)] = j;
  cplx eta = eta_form(cell.coords(point, directions, all));
  return {d_rho, eta, std::abs(d_rho - eta)};
}

}  // namespace reglab::forms
