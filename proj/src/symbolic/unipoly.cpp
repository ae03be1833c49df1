#include "reglab/unipoly.hpp"

#include <sstream>

#include "reglab/error.hpp"
#include "reglab/symbolic.hpp"

namespace reglab::symbolic {

UniPoly::UniPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::constant(const mpq_class& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(int degree, const mpq_class& c) {
  std::vector<mpq_class> v(static_cast<size_t>(degree) + 1, mpq_class(0));
  v.back() = c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::from_multipoly(const MultiPoly& p, size_t var) {
  std::vector<mpq_class> v;
  for (const auto& [e, c] : p.terms()) {
    for (size_t i = 0; i < e.size(); ++i)
      if (i != var && e[i] != 0) throw InputError("expected a polynomial in " + p.vars()[var] + " only");
    int d = e.empty() ? 0 : e[var];
    if (d < 0) throw InputError("negative power in univariate polynomial");
    if (static_cast<int>(v.size()) <= d) v.resize(static_cast<size_t>(d) + 1, mpq_class(0));
    v[static_cast<size_t>(d)] += c;
  }
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<mpq_class> v(std::max(a.c_.size(), b.c_.size()), mpq_class(0));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return UniPoly(std::move(v));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<mpq_class> v(a.c_.size() + b.c_.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return UniPoly(std::move(v));
}

UniPoly UniPoly::scaled(const mpq_class& c) const {
  UniPoly r = *this;
  for (auto& x : r.c_) x *= c;
  r.trim();
  return r;
}

UniPoly UniPoly::pow(unsigned n) const {
  UniPoly r = constant(1), b = *this;
  while (n) {
    if (n & 1u) r = r * b;
    n >>= 1u;
    if (n) b = b * b;
  }
  return r;
}

UniPoly UniPoly::monic() const { return is_zero() ? *this : scaled(1 / leading()); }

UniPoly UniPoly::derivative() const {
  std::vector<mpq_class> v;
  for (size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * static_cast<long>(i));
  return UniPoly(std::move(v));
}

mpq_class UniPoly::evaluate(const mpq_class& t) const {
  mpq_class r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * t + c_[i];
  return r;
}

UniPoly UniPoly::reversed(int k) const {
  if (degree() > k) throw InputError("reversal degree below polynomial degree");
  std::vector<mpq_class> v(static_cast<size_t>(k) + 1, mpq_class(0));
  for (size_t i = 0; i < c_.size(); ++i) v[static_cast<size_t>(k) - i] = c_[i];
  return UniPoly(std::move(v));
}

std::string UniPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    const mpq_class& c = c_[i];
    if (c == 0) continue;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    mpq_class m(abs(c));
    if (i == 0 || m != 1) os << m.get_str() << (i ? "*" : "");
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw InputError("polynomial division by zero");
  std::vector<mpq_class> q(static_cast<size_t>(std::max(0, a.degree() - b.degree() + 1)), mpq_class(0));
  UniPoly r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int shift = r.degree() - b.degree();
    mpq_class c = r.leading() / b.leading();
    q[static_cast<size_t>(shift)] += c;
    r = r - UniPoly::monomial(shift, c) * b;
  }
  return {UniPoly(std::move(q)), r};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p) {
  std::vector<std::pair<UniPoly, int>> out;
  if (p.degree() < 1) return out;
  UniPoly f = p.monic();
  UniPoly a = gcd(f, f.derivative());
  UniPoly b = divmod(f, a).first;
  UniPoly c = divmod(f.derivative(), a).first;
  UniPoly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    UniPoly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
  }
  return out;
}

int multiplicity(const UniPoly& p, const UniPoly& g) {
  if (g.degree() < 1) throw InputError("multiplicity needs a non-constant factor");
  if (p.is_zero()) throw InputError("multiplicity in the zero polynomial");
  int e = 0;
  UniPoly cur = p;
  for (;;) {
    auto [q, r] = divmod(cur, g);
    if (!r.is_zero()) return e;
    cur = std::move(q);
    ++e;
  }
}

std::vector<UniPoly> coprime_base(const std::vector<UniPoly>& polys) {
  std::vector<UniPoly> base;
  for (const auto& p : polys)
    if (p.degree() >= 1) base.push_back(p.monic());
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < base.size() && !changed; ++i)
      for (size_t j = i + 1; j < base.size() && !changed; ++j) {
        UniPoly g = gcd(base[i], base[j]);
        if (g.degree() < 1) continue;
        UniPoly u = divmod(base[i], g).first, v = divmod(base[j], g).first;
        base.erase(base.begin() + static_cast<long>(j));
        base.erase(base.begin() + static_cast<long>(i));
        for (UniPoly* t : {&u, &v, &g})
          if (t->degree() >= 1) base.push_back(t->monic());
        changed = true;
      }
  }
  return base;
}

RatFunc::RatFunc(UniPoly num, UniPoly den) {
  if (den.is_zero()) throw InputError("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = UniPoly();
    den_ = UniPoly::constant(1);
    return;
  }
  UniPoly g = gcd(num, den);
  num_ = divmod(num, g).first;
  den_ = divmod(den, g).first;
  mpq_class lc = den_.leading();
  num_ = num_.scaled(1 / lc);
  den_ = den_.scaled(1 / lc);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.num_, a.den_ * b.den_); }
RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw InputError("division by zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::pow(int n) const {
  if (n >= 0) return RatFunc(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
  if (is_zero()) throw InputError("negative power of zero");
  return RatFunc(den_.pow(static_cast<unsigned>(-n)), num_.pow(static_cast<unsigned>(-n)));
}

bool RatFunc::operator<(const RatFunc& o) const {
  if (num_.coeffs() != o.num_.coeffs()) return num_.coeffs() < o.num_.coeffs();
  return den_.coeffs() < o.den_.coeffs();
}

std::string RatFunc::str(const std::string& var) const {
  if (den_.is_constant()) return num_.str(var);
  return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

}  // namespace reglab::symbolic
