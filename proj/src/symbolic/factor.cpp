#include <algorithm>
#include <sstream>

#include "reglab/symbolic.hpp"

namespace reglab::symbolic {

namespace {

bool is_rational_square(const Rational& q) {
  if (q < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

// Sanity layer: a univariate quadratic with a rational root is reducible.
void check_quadratic(const MultiPoly& p) {
  if (p.total_degree() != 2) return;
  int used = -1;
  for (size_t v = 0; v < p.nvars(); ++v) {
    if (p.degree_in(v) == 0) continue;
    if (used >= 0) return;
    used = static_cast<int>(v);
  }
  if (used < 0 || p.degree_in(static_cast<size_t>(used)) != 2) return;
  auto c = p.coefficients_in(static_cast<size_t>(used));
  Rational a = c[2].constant_term(), b = c[1].constant_term(), e = c[0].constant_term();
  if (is_rational_square(b * b - 4 * a * e))
    throw InputError("basis element " + p.str() + " is reducible over Q");
}

void append_prime_factors(mpz_class n, int sign, LogVector& out) {
  if (n < 0) n = -n;
  for (unsigned long p = 2; p <= 1000000 && n > 1; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      out[{Generator::Kind::prime, static_cast<long>(p)}] += sign;
    }
    if (mpz_class(p) * p > n) break;
  }
  if (n > 1) {
    if (!mpz_probab_prime_p(n.get_mpz_t(), 30) || !n.fits_slong_p())
      throw InputError("constant " + n.get_str() + " is too large to factor");
    out[{Generator::Kind::prime, n.get_si()}] += sign;
  }
}

}  // namespace

MultiplicativeBasis::MultiplicativeBasis(std::vector<std::string> vars, std::vector<MultiPoly> elements)
    : vars_(std::move(vars)), elements_(std::move(elements)) {
  for (auto& e : elements_) {
    if (e.vars() != vars_) e = e + MultiPoly(vars_);
    if (e.is_constant()) throw InputError("basis element must be non-constant");
    check_quadratic(e);
  }
  for (size_t i = 0; i < elements_.size(); ++i) {
    for (size_t j = 0; j < elements_.size(); ++j) {
      if (i == j) continue;
      if (divide_exact(elements_[i], elements_[j]))
        throw InputError("basis elements " + elements_[j].str() + " and " + elements_[i].str() +
                         " are not coprime");
    }
  }
}

std::optional<size_t> MultiplicativeBasis::variable_index(size_t var) const {
  MultiPoly x = MultiPoly::variable(vars_, var);
  for (size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == x) return i;
  return std::nullopt;
}

FactoredElement FactoredElement::inverse() const {
  FactoredElement r;
  r.constant = 1 / constant;
  for (const auto& [i, e] : exponents) r.exponents[i] = -e;
  return r;
}

FactoredElement FactoredElement::operator*(const FactoredElement& o) const {
  FactoredElement r = *this;
  r.constant *= o.constant;
  for (const auto& [i, e] : o.exponents) {
    int v = (r.exponents[i] += e);
    if (v == 0) r.exponents.erase(i);
  }
  return r;
}

FactoredElement FactoredElement::pow(int n) const {
  FactoredElement r;
  mpz_class num = constant.get_num(), den = constant.get_den();
  mpz_class pn, pd;
  unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
  mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), m);
  mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), m);
  r.constant = n < 0 ? Rational(pd, pn) : Rational(pn, pd);
  r.constant.canonicalize();
  if (n != 0)
    for (const auto& [i, e] : exponents) r.exponents[i] = e * n;
  return r;
}

bool FactoredElement::operator<(const FactoredElement& o) const {
  if (constant != o.constant) return constant < o.constant;
  return exponents < o.exponents;
}

NotFactorable::NotFactorable(const MultiPoly& remainder)
    : InputError("not factorable over the basis: remaining factor " + remainder.str()), remainder_(remainder) {}

FactoredElement factor_over_basis(const MultiPoly& f, const MultiplicativeBasis& basis) {
  if (f.is_zero()) throw InputError("cannot factor the zero polynomial");
  MultiPoly p = f.vars() == basis.vars() ? f : f + MultiPoly(basis.vars());
  FactoredElement out;
  for (size_t i = 0; i < basis.size(); ++i) {
    while (!p.is_constant()) {
      auto q = divide_exact(p, basis[i]);
      if (!q) break;
      p = std::move(*q);
      ++out.exponents[static_cast<int>(i)];
    }
  }
  if (!p.is_constant()) throw NotFactorable(p);
  out.constant = p.constant_term();
  return out;
}

FactoredElement factor_over_basis(const RationalFunction& f, const MultiplicativeBasis& basis) {
  return factor_over_basis(f.numerator, basis) * factor_over_basis(f.denominator, basis).inverse();
}

RationalFunction expand(const FactoredElement& f, const MultiplicativeBasis& basis) {
  const auto& vars = basis.vars();
  MultiPoly num = MultiPoly::constant(vars, f.constant.get_num());
  MultiPoly den = MultiPoly::constant(vars, f.constant.get_den());
  for (const auto& [i, e] : f.exponents) {
    if (e > 0)
      num *= basis[static_cast<size_t>(i)].pow(static_cast<unsigned>(e));
    else
      den *= basis[static_cast<size_t>(i)].pow(static_cast<unsigned>(-e));
  }
  return {num, den};
}

std::string to_string(const FactoredElement& f, const MultiplicativeBasis& basis) {
  std::ostringstream os;
  os << f.constant.get_str();
  for (const auto& [i, e] : f.exponents) {
    os << "*(" << basis[static_cast<size_t>(i)].str() << ")";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

LogVector log_vector(const FactoredElement& f) {
  LogVector out;
  for (const auto& [i, e] : f.exponents) out[{Generator::Kind::basis, i}] += e;
  append_prime_factors(f.constant.get_num(), 1, out);
  append_prime_factors(f.constant.get_den(), -1, out);
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

void WedgeElement::add(GenTuple tuple, const Rational& c) {
  if (static_cast<int>(tuple.size()) != degree_) throw InputError("wedge degree mismatch");
  if (c == 0) return;
  int sign = 1;
  for (size_t i = 1; i < tuple.size(); ++i) {
    for (size_t j = i; j > 0 && tuple[j] < tuple[j - 1]; --j) {
      std::swap(tuple[j], tuple[j - 1]);
      sign = -sign;
    }
  }
  for (size_t i = 1; i < tuple.size(); ++i)
    if (tuple[i] == tuple[i - 1]) return;
  Rational& slot = terms_[tuple];
  slot += sign * c;
  if (slot == 0) terms_.erase(tuple);
}

WedgeElement& WedgeElement::operator+=(const WedgeElement& o) {
  if (terms_.empty() && degree_ != o.degree_) degree_ = o.degree_;
  for (const auto& [t, c] : o.terms_) add(t, c);
  return *this;
}

WedgeElement& WedgeElement::operator-=(const WedgeElement& o) { return *this += o.scaled(-1); }

WedgeElement WedgeElement::scaled(const Rational& c) const {
  WedgeElement r(degree_);
  if (c == 0) return r;
  for (const auto& [t, v] : terms_) r.terms_.emplace(t, v * c);
  return r;
}

WedgeElement wedge_normalize(const std::vector<WedgeTerm>& terms) {
  if (terms.empty()) return WedgeElement(0);
  const int k = static_cast<int>(terms.front().factors.size());
  WedgeElement out(k);
  for (const auto& term : terms) {
    if (static_cast<int>(term.factors.size()) != k) throw InputError("wedge terms of unequal length");
    std::vector<LogVector> vecs;
    for (const auto& f : term.factors) vecs.push_back(log_vector(f));
    GenTuple tuple(static_cast<size_t>(k));
    auto rec = [&](auto&& self, size_t pos, const Rational& c) -> void {
      if (pos == vecs.size()) {
        out.add(tuple, c);
        return;
      }
      for (const auto& [g, e] : vecs[pos]) {
        tuple[pos] = g;
        self(self, pos + 1, c * e);
      }
    };
    rec(rec, 0, term.coefficient);
  }
  return out;
}

namespace {

std::string generator_name(const Generator& g, const MultiplicativeBasis& basis) {
  if (g.kind == Generator::Kind::prime) return std::to_string(g.index);
  std::string s = basis[static_cast<size_t>(g.index)].str();
  return s.find_first_of("+- ") == std::string::npos ? s : "(" + s + ")";
}

void write_coefficient(std::ostringstream& os, const Rational& c, bool first) {
  if (first)
    os << (c < 0 ? "-" : "");
  else
    os << (c < 0 ? " - " : " + ");
  if (abs(c) != 1) os << Rational(abs(c)).get_str() << "*";
}

}  // namespace

std::string to_string(const WedgeElement& w, const MultiplicativeBasis& basis) {
  if (w.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : w.terms()) {
    write_coefficient(os, c, first);
    first = false;
    for (size_t i = 0; i < t.size(); ++i) os << (i ? "^" : "") << generator_name(t[i], basis);
    if (t.empty()) os << "1";
  }
  return os.str();
}

void B2WedgeElement::add(const FactoredElement& f, const WedgeElement& w, const Rational& c) {
  if (c == 0 || f.is_one() || w.is_zero()) return;
  if (w.degree() != degree_) throw InputError("B2 wedge degree mismatch");
  FactoredElement inv = f.inverse();
  if (inv == f) return;
  bool flip;
  if (!f.exponents.empty())
    flip = f.exponents.begin()->second < 0;
  else
    flip = abs(f.constant) < 1;
  const FactoredElement& key = flip ? inv : f;
  const Rational s = flip ? Rational(-c) : c;
  for (const auto& [t, v] : w.terms()) {
    Key k{key, t};
    Rational& slot = terms_[k];
    slot += s * v;
    if (slot == 0) terms_.erase(k);
  }
}

B2WedgeElement& B2WedgeElement::operator+=(const B2WedgeElement& o) {
  if (terms_.empty() && degree_ != o.degree_) degree_ = o.degree_;
  for (const auto& [k, c] : o.terms_) {
    Rational& slot = terms_[k];
    slot += c;
    if (slot == 0) terms_.erase(k);
  }
  return *this;
}

B2WedgeElement B2WedgeElement::scaled(const Rational& c) const {
  B2WedgeElement r(degree_);
  if (c == 0) return r;
  for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
  return r;
}

std::string to_string(const B2WedgeElement& x, const MultiplicativeBasis& basis) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : x.terms()) {
    write_coefficient(os, c, first);
    first = false;
    os << "{" << to_string(k.first, basis) << "}_2";
    for (size_t i = 0; i < k.second.size(); ++i) os << (i ? "^" : " (x) ") << generator_name(k.second[i], basis);
  }
  return os.str();
}

}  // namespace reglab::symbolic
