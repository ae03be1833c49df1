#include "reglab/residues.hpp"

namespace reglab::residues {

using symbolic::FactoredElement;
using symbolic::Generator;

namespace {

const FunctionRecord& lookup(const DivisorData& p, const std::vector<std::string>& basis_text, int index) {
  const std::string& name = basis_text.at(static_cast<size_t>(index));
  auto it = p.records.find(name);
  if (it == p.records.end()) throw InputError("divisor " + p.name + " has no record for function '" + name + "'");
  return it->second;
}

FunctionRecord restrict(const FactoredElement& f, const DivisorData& p, const std::vector<std::string>& basis_text) {
  std::vector<std::pair<FunctionRecord, long>> factors;
  for (const auto& [i, e] : f.exponents) factors.emplace_back(lookup(p, basis_text, i), e);
  return product(factors, f.constant);
}

FunctionRecord restrict(const Generator& g, const DivisorData& p, const std::vector<std::string>& basis_text) {
  if (g.kind == Generator::Kind::prime) return {Order::known(0), Leading::of(RatFunc::constant(Rational(g.index)))};
  return lookup(p, basis_text, static_cast<int>(g.index));
}

std::string generator_name(const Generator& g, const std::vector<std::string>& basis_text) {
  if (g.kind == Generator::Kind::prime) return std::to_string(g.index);
  return basis_text.at(static_cast<size_t>(g.index));
}

std::optional<std::string> special_value(const FunctionRecord& f) {
  const auto s = f.order.sign();
  if (!s) return std::nullopt;
  if (*s > 0) return "0";
  if (*s < 0) return "inf";
  if (f.leading.kind != Leading::Kind::value || !f.leading.value.is_constant()) return std::nullopt;
  const Rational v = f.leading.value.constant_value();
  if (v == 1) return "1";
  if (v == -1) return "-1";
  return std::nullopt;
}

bool value_known(const FunctionRecord& f) {
  return f.order.is_known() && f.order.value == 0 && f.leading.kind == Leading::Kind::value;
}

void conclude(DivisorCertificate& cert) {
  bool undecided = false, survivors = false, torsion = false;
  cert.residue = B2Residue{};
  for (const auto& t : cert.terms) {
    if (t.reason) {
      torsion = torsion || *t.reason == Reason::torsion_tensor_factor;
      continue;
    }
    if (value_known(t.f_at_p) && t.tame.decided) {
      cert.residue.add(t.f_at_p.leading.value, t.tame.value, t.coefficient);
      survivors = true;
    } else {
      undecided = true;
    }
  }
  cert.reason.reset();
  if (undecided) {
    cert.verdict = Verdict::undecidable;
  } else if (!cert.residue.is_zero()) {
    cert.verdict = Verdict::nontrivial;
  } else {
    cert.verdict = Verdict::trivial;
    cert.reason = survivors || cert.terms.empty() ? Reason::exact_cancellation
                  : torsion                       ? Reason::torsion_tensor_factor
                                                  : Reason::steinberg_degenerate;
  }
}

}  // namespace

DivisorCertificate residue_43(const symbolic::B2WedgeElement& xi, const symbolic::MultiplicativeBasis& basis,
                              const std::vector<std::string>& basis_text, const DivisorData& p) {
  if (basis_text.size() != basis.size()) throw InputError("basis text does not match the basis");
  if (!xi.is_zero() && xi.wedge_degree() != 2) throw InputError("residue map needs B2 (x) wedge^2 elements");
  DivisorCertificate cert;
  cert.divisor = p.name;
  for (const auto& [key, c] : xi.terms()) {
    const auto& [f, gens] = key;
    TermCertificate t;
    t.coefficient = c;
    t.term = "{" + symbolic::to_string(f, basis) + "}_2 (x) " + generator_name(gens[0], basis_text) + "^" +
             generator_name(gens[1], basis_text);
    t.f_at_p = restrict(f, p, basis_text);
    t.f_special = special_value(t.f_at_p);
    t.tame = tame_symbol(restrict(gens[0], p, basis_text), restrict(gens[1], p, basis_text));
    if (t.f_special)
      t.reason = Reason::steinberg_degenerate;
    else if (t.tame.is_torsion())
      t.reason = Reason::torsion_tensor_factor;
    cert.terms.push_back(std::move(t));
  }
  conclude(cert);
  return cert;
}

ResidueReport certify_all_residues(const symbolic::B2WedgeElement& xi, const symbolic::MultiplicativeBasis& basis,
                                   const std::vector<std::string>& basis_text, const std::vector<DivisorData>& divisors) {
  ResidueReport r;
  bool undecided = false, nontrivial = false;
  for (const auto& p : divisors) {
    r.divisors.push_back(residue_43(xi, basis, basis_text, p));
    undecided = undecided || r.divisors.back().verdict == Verdict::undecidable;
    nontrivial = nontrivial || r.divisors.back().verdict == Verdict::nontrivial;
  }
  r.overall = nontrivial ? Verdict::nontrivial : undecided ? Verdict::undecidable : Verdict::trivial;
  return r;
}

Verdict recheck(const DivisorCertificate& cert) {
  DivisorCertificate copy = cert;
  for (auto& t : copy.terms) {
    // a claimed reason only counts if the recorded data supports it
    if (t.reason == Reason::steinberg_degenerate && special_value(t.f_at_p) != t.f_special) t.reason.reset();
    if (t.reason == Reason::steinberg_degenerate && !t.f_special) t.reason.reset();
    if (t.reason == Reason::torsion_tensor_factor && !t.tame.is_torsion()) t.reason.reset();
    if (t.reason == Reason::exact_cancellation) t.reason.reset();
  }
  conclude(copy);
  return copy.verdict;
}

}  // namespace reglab::residues
