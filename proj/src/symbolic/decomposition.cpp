#include <json.hpp>

#include "reglab/symbolic.hpp"

namespace reglab::symbolic {

Involution::Involution(const MultiplicativeBasis& basis) {
  const auto& vars = basis.vars();
  for (size_t i = 0; i < basis.size(); ++i) {
    const MultiPoly& b = basis[i];
    Exponents m(vars.size());
    for (size_t v = 0; v < vars.size(); ++v) m[v] = b.degree_in(v);
    MultiPoly reciprocal(vars);
    for (const auto& [e, c] : b.terms()) {
      Exponents r(e.size());
      for (size_t v = 0; v < e.size(); ++v) r[v] = m[v] - e[v];
      reciprocal.add_term(r, c);
    }
    FactoredElement f;
    try {
      f = factor_over_basis(reciprocal, basis);
    } catch (const NotFactorable& err) {
      throw InputError("basis is not closed under the involution: " + std::string(err.what()));
    }
    for (size_t v = 0; v < vars.size(); ++v) {
      if (m[v] == 0) continue;
      auto idx = basis.variable_index(v);
      if (!idx) throw InputError("basis is not closed under the involution: variable " + vars[v] + " missing");
      FactoredElement mono;
      mono.exponents[static_cast<int>(*idx)] = -m[v];
      f = f * mono;
    }
    table_.push_back(f);
  }
}

FactoredElement Involution::apply(const FactoredElement& f) const {
  FactoredElement r;
  r.constant = f.constant;
  for (const auto& [i, e] : f.exponents) r = r * table_[static_cast<size_t>(i)].pow(e);
  return r;
}

WedgeElement Involution::apply(const WedgeElement& w) const {
  WedgeElement out(w.degree());
  for (const auto& [tuple, c] : w.terms()) {
    std::vector<LogVector> images;
    for (const Generator& g : tuple) {
      if (g.kind == Generator::Kind::prime) {
        images.push_back({{g, Rational(1)}});
      } else {
        images.push_back(log_vector(table_[static_cast<size_t>(g.index)]));
      }
    }
    GenTuple t(tuple.size());
    auto rec = [&](auto&& self, size_t pos, const Rational& coeff) -> void {
      if (pos == images.size()) {
        out.add(t, coeff);
        return;
      }
      for (const auto& [g, e] : images[pos]) {
        t[pos] = g;
        self(self, pos + 1, coeff * e);
      }
    };
    rec(rec, 0, c);
  }
  return out;
}

B2WedgeElement Involution::apply(const B2WedgeElement& x) const {
  B2WedgeElement out(x.wedge_degree());
  for (const auto& [key, c] : x.terms()) {
    WedgeElement w(x.wedge_degree());
    w.add(key.second, 1);
    out.add(apply(key.first), apply(w), c);
  }
  return out;
}

namespace {

using nlohmann::json;

Rational parse_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw InputError("bad rational '" + j.get<std::string>() + "'");
    q.canonicalize();
    return q;
  }
  throw InputError("coefficient must be an integer or a rational string");
}

RationalFunction substitute_relations(RationalFunction r, const std::vector<std::string>& vars,
                                      const std::map<std::string, MultiPoly>& rel) {
  for (const auto& [name, value] : rel) {
    size_t idx = static_cast<size_t>(std::find(vars.begin(), vars.end(), name) - vars.begin());
    r.numerator = r.numerator.substitute(idx, value);
    r.denominator = r.denominator.substitute(idx, value);
  }
  return r;
}

}  // namespace

Decomposition load_decomposition(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed decomposition document: ") + e.what());
  }
  try {
    std::vector<std::string> vars = doc.at("variables").get<std::vector<std::string>>();
    std::map<std::string, std::string> relations;
    std::map<std::string, MultiPoly> rel;
    if (doc.contains("relations")) {
      for (const auto& [k, v] : doc["relations"].items()) {
        if (std::find(vars.begin(), vars.end(), k) == vars.end()) throw InputError("relation for unknown variable " + k);
        relations[k] = v.get<std::string>();
        rel[k] = parse_poly(relations[k], vars);
      }
    }
    std::vector<std::string> basis_text = doc.at("basis").get<std::vector<std::string>>();
    std::vector<MultiPoly> elems;
    for (const auto& b : basis_text) elems.push_back(parse_poly(b, vars));
    MultiplicativeBasis basis(vars, elems);

    auto element = [&](const json& j) {
      RationalFunction r;
      if (j.is_string()) {
        r = to_rational_function(parse_laurent(j.get<std::string>(), vars));
      } else if (j.is_array() && j.size() == 2) {
        r.numerator = parse_poly(j[0].get<std::string>(), vars);
        r.denominator = parse_poly(j[1].get<std::string>(), vars);
      } else {
        throw InputError("function must be a string or a [numerator, denominator] pair");
      }
      return factor_over_basis(substitute_relations(r, vars, rel), basis);
    };

    WedgeElement lhs;
    std::vector<WedgeTerm> lhs_terms;
    if (doc.contains("lhs")) {
      for (const auto& t : doc["lhs"]) {
        WedgeTerm wt{parse_rational(t.at(0)), {}};
        for (const auto& f : t.at(1)) wt.factors.push_back(element(f));
        lhs_terms.push_back(wt);
      }
    } else {
      WedgeTerm wt{1, {}};
      for (const auto& v : vars) wt.factors.push_back(element(json(v)));
      lhs_terms.push_back(wt);
    }
    for (const auto& wt : lhs_terms)
      if (wt.factors.size() != vars.size()) throw InputError("lhs must have degree n");
    lhs = lhs_terms.empty() ? WedgeElement(static_cast<int>(vars.size())) : wedge_normalize(lhs_terms);

    std::vector<DecompositionTerm> terms;
    for (const auto& t : doc.at("terms")) {
      DecompositionTerm d{parse_rational(t.at(0)), element(t.at(1)), {}};
      for (const auto& g : t.at(2)) d.g.push_back(element(g));
      if (d.g.size() + 2 != vars.size()) throw InputError("each term needs n - 2 functions g");
      terms.push_back(d);
    }
    return Decomposition{vars, relations, basis, basis_text, lhs, terms};
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed decomposition document: ") + e.what());
  }
}

DecompositionCheck check_decomposition(const WedgeElement& lhs, const std::vector<DecompositionTerm>& rhs,
                                       const MultiplicativeBasis& basis) {
  std::vector<WedgeTerm> terms;
  for (const auto& t : rhs) {
    RationalFunction f = expand(t.f, basis);
    RationalFunction one_minus{f.denominator - f.numerator, f.denominator};
    if (one_minus.numerator.is_zero()) continue;
    WedgeTerm w{t.coefficient, {t.f, factor_over_basis(one_minus, basis)}};
    for (const auto& g : t.g) w.factors.push_back(g);
    terms.push_back(w);
  }
  WedgeElement right = terms.empty() ? WedgeElement(lhs.degree()) : wedge_normalize(terms);
  DecompositionCheck out;
  out.difference = lhs - right;
  out.equal = out.difference.is_zero();
  return out;
}

XiTriple build_xi(const Decomposition& d) {
  DecompositionCheck chk = check_decomposition(d.lhs, d.terms, d.basis);
  if (!chk.equal)
    throw InputError("decomposition does not hold; difference " + to_string(chk.difference, d.basis));
  const int n = static_cast<int>(d.vars.size());
  XiTriple out{B2WedgeElement(n - 2), B2WedgeElement(n - 2), B2WedgeElement(n - 2)};
  for (const auto& t : d.terms) {
    WedgeElement w = wedge_normalize({WedgeTerm{1, t.g}});
    out.xi.add(t.f, w, t.coefficient);
  }
  Involution tau(d.basis);
  out.xi_star = tau.apply(out.xi);
  const Rational sign = (n - 1) % 2 == 0 ? 1 : -1;
  out.lambda = (out.xi + out.xi_star.scaled(sign)).scaled(Rational(1, 2));
  return out;
}

}  // namespace reglab::symbolic
