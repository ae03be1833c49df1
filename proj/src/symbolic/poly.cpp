#include <algorithm>
#include <cctype>
#include <sstream>

#include "reglab/symbolic.hpp"

namespace reglab::symbolic {

namespace {

MultiPoly promote(const MultiPoly& p, const std::vector<std::string>& vars) {
  MultiPoly out(vars);
  for (const auto& [e, c] : p.terms()) {
    Exponents ex(vars.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) ex[i] = e[i];
    out.add_term(ex, c);
  }
  return out;
}

void align(MultiPoly& a, const MultiPoly& b) {
  if (a.vars() == b.vars()) return;
  if (a.nvars() == 0) {
    a = promote(a, b.vars());
    return;
  }
  if (b.nvars() == 0) return;
  throw InputError("polynomials over different variable lists");
}

}  // namespace

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const Rational& c) {
  MultiPoly p(std::move(vars));
  p.add_term(Exponents(p.nvars(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, size_t index) {
  MultiPoly p(std::move(vars));
  Exponents e(p.nvars(), 0);
  e.at(index) = 1;
  p.add_term(e, 1);
  return p;
}

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, const Exponents& e, const Rational& c) {
  MultiPoly p(std::move(vars));
  p.add_term(e, c);
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Exponents& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

Rational MultiPoly::constant_term() const {
  auto it = terms_.find(Exponents(nvars(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

const std::pair<const Exponents, Rational>& MultiPoly::leading() const {
  if (terms_.empty()) throw InputError("leading term of zero polynomial");
  return *terms_.rbegin();
}

int MultiPoly::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

int MultiPoly::degree_in(size_t var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

int MultiPoly::min_degree_in(size_t var) const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    d = first ? e[var] : std::min(d, e[var]);
    first = false;
  }
  return d;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != nvars()) throw InputError("exponent vector length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  align(*this, o);
  MultiPoly b = o.vars_ == vars_ ? o : promote(o, vars_);
  for (const auto& [e, c] : b.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  align(*this, o);
  MultiPoly b = o.vars_ == vars_ ? o : promote(o, vars_);
  MultiPoly r(vars_);
  Exponents e(nvars());
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  *this = std::move(r);
  return *this;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  MultiPoly r(vars_);
  if (c == 0) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly result = constant(vars_, 1), base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::substitute(size_t var, const MultiPoly& value) const {
  MultiPoly v = value.vars_ == vars_ ? value : promote(value, vars_);
  int deg = degree_in(var);
  std::vector<MultiPoly> powers{constant(vars_, 1)};
  for (int k = 1; k <= deg; ++k) powers.push_back(powers.back() * v);
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] < 0) throw InputError("cannot substitute into a negative power");
    Exponents rest = e;
    rest[var] = 0;
    r += monomial(vars_, rest, c) * powers[static_cast<size_t>(e[var])];
  }
  return r;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(size_t var) const {
  std::vector<MultiPoly> out(static_cast<size_t>(degree_in(var)) + 1, MultiPoly(vars_));
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    rest[var] = 0;
    out[static_cast<size_t>(e[var])].add_term(rest, c);
  }
  return out;
}

MultiPoly MultiPoly::shifted(const Exponents& s) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents n = e;
    for (size_t i = 0; i < n.size(); ++i) n[i] += s[i];
    r.terms_.emplace(n, c);
  }
  return r;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    bool unit_monomial = std::any_of(e.begin(), e.end(), [](int v) { return v != 0; });
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool wrote = false;
    if (!(unit_monomial && mag == 1)) {
      os << mag.get_str();
      wrote = true;
    }
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << vars_[i];
      if (e[i] != 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw InputError("division by zero polynomial");
  MultiPoly r = a, q(a.vars().empty() ? b.vars() : a.vars());
  if (r.vars() != q.vars()) r = r + MultiPoly(q.vars());
  const auto& [lb, cb] = b.leading();
  while (!r.is_zero()) {
    const auto& [lr, cr] = r.leading();
    Exponents d(lr.size());
    for (size_t i = 0; i < d.size(); ++i) {
      d[i] = lr[i] - lb[i];
      if (d[i] < 0) return std::nullopt;
    }
    Rational c = cr / cb;
    MultiPoly m = MultiPoly::monomial(q.vars(), d, c);
    q += m;
    r -= m * b;
  }
  return q;
}

// ---- parser ----

ParseError::ParseError(const std::string& msg, size_t pos)
    : InputError(msg + " at position " + std::to_string(pos)), pos_(pos) {}

namespace {

LaurentPoly laurent_const(const std::vector<std::string>& vars, const Rational& c) {
  return {MultiPoly::constant(vars, c), Exponents(vars.size(), 0)};
}

LaurentPoly normalize(LaurentPoly l) {
  if (l.numerator.is_zero()) {
    std::fill(l.denominator.begin(), l.denominator.end(), 0);
    return l;
  }
  Exponents common(l.denominator.size());
  for (size_t i = 0; i < common.size(); ++i)
    common[i] = std::min(l.denominator[i], l.numerator.min_degree_in(i));
  for (int& v : common) v = -v;
  l.numerator = l.numerator.shifted(common);
  for (size_t i = 0; i < common.size(); ++i) l.denominator[i] += common[i];
  return l;
}

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b, int sign) {
  Exponents d(a.denominator.size()), sa(d.size()), sb(d.size());
  for (size_t i = 0; i < d.size(); ++i) {
    d[i] = std::max(a.denominator[i], b.denominator[i]);
    sa[i] = d[i] - a.denominator[i];
    sb[i] = d[i] - b.denominator[i];
  }
  MultiPoly n = a.numerator.shifted(sa);
  if (sign > 0)
    n += b.numerator.shifted(sb);
  else
    n -= b.numerator.shifted(sb);
  return normalize({n, d});
}

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) {
  Exponents d(a.denominator.size());
  for (size_t i = 0; i < d.size(); ++i) d[i] = a.denominator[i] + b.denominator[i];
  return normalize({a.numerator * b.numerator, d});
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  LaurentPoly run() {
    LaurentPoly r = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  LaurentPoly expr() {
    LaurentPoly r = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        r = add(r, term(), 1);
      } else if (peek('-')) {
        ++pos_;
        r = add(r, term(), -1);
      } else {
        return r;
      }
    }
  }

  LaurentPoly term() {
    LaurentPoly r = factor();
    while (peek('*')) {
      ++pos_;
      r = mul(r, factor());
    }
    return r;
  }

  LaurentPoly factor() {
    LaurentPoly b = base();
    if (!peek('^')) return b;
    ++pos_;
    skip();
    size_t at = pos_;
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    mpz_class n = integer();
    if (n > 1000) throw ParseError("exponent too large", at);
    long e = n.get_si();
    if (neg) {
      if (b.numerator.terms().size() != 1) throw ParseError("negative power of a non-monomial", at);
      const auto& [ex, c] = *b.numerator.terms().begin();
      Exponents num(ex.size()), den(ex.size());
      for (size_t i = 0; i < ex.size(); ++i) {
        int v = ex[i] - b.denominator[i];
        num[i] = v < 0 ? -v : 0;
        den[i] = v > 0 ? v : 0;
      }
      b = {MultiPoly::monomial(vars_, num, 1 / c), den};
    }
    LaurentPoly r = laurent_const(vars_, 1);
    for (long k = 0; k < e; ++k) r = mul(r, b);
    return r;
  }

  LaurentPoly base() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      LaurentPoly r = expr();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return r;
    }
    if (c == '-') {
      ++pos_;
      LaurentPoly r = factor();
      r.numerator = -r.numerator;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      mpz_class den = 1;
      if (peek('/')) {
        ++pos_;
        size_t at = pos_;
        den = integer();
        if (den == 0) throw ParseError("zero denominator", at);
      }
      Rational q(num, den);
      q.canonicalize();
      return laurent_const(vars_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) throw ParseError("unknown variable '" + name + "'", start);
      return {MultiPoly::variable(vars_, static_cast<size_t>(it - vars_.begin())), Exponents(vars_.size(), 0)};
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  mpz_class integer() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", start);
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(std::string_view text, const std::vector<std::string>& vars) {
  return Parser(text, vars).run();
}

MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  LaurentPoly l = parse_laurent(text, vars);
  for (int v : l.denominator)
    if (v != 0) throw InputError("expression '" + std::string(text) + "' is not a polynomial");
  return l.numerator;
}

RationalFunction to_rational_function(const LaurentPoly& l) {
  const auto& vars = l.numerator.vars();
  return {l.numerator, MultiPoly::monomial(vars, l.denominator, 1)};
}

}  // namespace reglab::symbolic
