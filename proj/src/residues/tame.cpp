#include <algorithm>
#include <sstream>

#include "reglab/residues.hpp"

namespace reglab::residues {

using symbolic::UniPoly;

std::optional<int> Order::sign() const {
  switch (kind) {
    case Kind::known:
      return value > 0 ? 1 : value < 0 ? -1 : 0;
    case Kind::unknown_positive:
      return 1;
    case Kind::unknown_negative:
      return -1;
    default:
      return std::nullopt;
  }
}

Order Order::operator+(const Order& o) const {
  if (kind == Kind::known && o.kind == Kind::known) return known(value + o.value);
  if (kind == Kind::indeterminate || o.kind == Kind::indeterminate) return {Kind::indeterminate, 0};
  const auto a = sign(), b = o.sign();
  // unknown + same-signed or zero known part keeps the sign
  if (*a >= 0 && *b >= 0) return positive();
  if (*a <= 0 && *b <= 0) return negative();
  return {Kind::indeterminate, 0};
}

Order Order::times(long e) const {
  if (e == 0) return known(0);
  switch (kind) {
    case Kind::known:
      return known(value * e);
    case Kind::unknown_positive:
      return e > 0 ? positive() : negative();
    case Kind::unknown_negative:
      return e > 0 ? negative() : positive();
    default:
      return *this;
  }
}

FunctionRecord product(const std::vector<std::pair<FunctionRecord, long>>& factors, const Rational& constant) {
  if (constant == 0) throw InputError("zero constant in a residue-field product");
  FunctionRecord r{Order::known(0), Leading::of(RatFunc::constant(constant))};
  bool rou = false, unknown = false;
  for (const auto& [f, e] : factors) {
    if (e == 0) continue;
    r.order = r.order + f.order.times(e);
    switch (f.leading.kind) {
      case Leading::Kind::value:
        r.leading.value = r.leading.value * f.leading.value.pow(static_cast<int>(e));
        break;
      case Leading::Kind::root_of_unity:
        rou = true;
        break;
      default:
        unknown = true;
    }
  }
  if (unknown) {
    r.leading = Leading{};
  } else if (rou) {
    const auto& v = r.leading.value;
    r.leading = v.is_constant() && abs(v.constant_value()) == 1 ? Leading::root_of_unity() : Leading{};
  }
  return r;
}

bool TameValue::is_torsion() const { return decided && value.is_constant() && abs(value.constant_value()) == 1; }

namespace {

TameValue power(const Leading& l, const Order& e) {
  if (e.is_known() && e.value == 0) return {true, RatFunc::constant(1), false};
  switch (l.kind) {
    case Leading::Kind::unknown:
      return {};
    case Leading::Kind::root_of_unity:
      return {true, RatFunc::constant(1), true};
    default:
      break;
  }
  if (e.is_known()) return {true, l.value.pow(static_cast<int>(e.value)), false};
  if (l.value == RatFunc::constant(1)) return {true, l.value, false};
  if (l.value == RatFunc::constant(-1)) return {true, RatFunc::constant(1), true};
  return {};
}

TameValue times(const TameValue& a, const TameValue& b) {
  if (!a.decided || !b.decided) return {};
  return {true, a.value * b.value, a.modulo_torsion || b.modulo_torsion};
}

bool known_even(const Order& o) { return o.is_known() && o.value % 2 == 0; }

}  // namespace

// (−1)^{ab} f^b / g^a with a = ord f, b = ord g
TameValue tame_symbol(const FunctionRecord& f, const FunctionRecord& g) {
  const Order& a = f.order;
  const Order& b = g.order;
  TameValue sign{true, RatFunc::constant(1), false};
  if (a.is_known() && b.is_known()) {
    if ((a.value * b.value) % 2 != 0) sign.value = RatFunc::constant(-1);
  } else if (!known_even(a) && !known_even(b)) {
    sign.modulo_torsion = true;
  }
  return times(sign, times(power(f.leading, b), power(g.leading, a.times(-1))));
}

std::string to_string(Reason r) {
  switch (r) {
    case Reason::steinberg_degenerate:
      return "steinberg_degenerate";
    case Reason::torsion_tensor_factor:
      return "torsion_tensor_factor";
    default:
      return "exact_cancellation";
  }
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::trivial:
      return "trivial";
    case Verdict::nontrivial:
      return "nontrivial";
    default:
      return "undecidable";
  }
}

namespace {

// Pairwise-coprime refinement of positive integers.
std::vector<mpz_class> coprime_integers(const std::vector<mpz_class>& items) {
  std::vector<mpz_class> base;
  for (const auto& x : items)
    if (x > 1) base.push_back(x);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < base.size() && !changed; ++i)
      for (size_t j = i + 1; j < base.size() && !changed; ++j) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), base[i].get_mpz_t(), base[j].get_mpz_t());
        if (g == 1) continue;
        mpz_class u = base[i] / g, v = base[j] / g;
        base.erase(base.begin() + static_cast<long>(j));
        base.erase(base.begin() + static_cast<long>(i));
        for (mpz_class* t : {&u, &v, &g})
          if (*t > 1) base.push_back(*t);
        changed = true;
      }
  }
  return base;
}

int poly_mult(const UniPoly& p, const UniPoly& g) { return multiplicity(p, g); }

int int_mult(mpz_class n, const mpz_class& g) {
  int m = 0;
  n = abs(n);
  while (n != 0 && mpz_divisible_p(n.get_mpz_t(), g.get_mpz_t())) {
    n /= g;
    ++m;
  }
  return m;
}

RatFunc canonical_a(const RatFunc& a, Rational& c) {
  const RatFunc inv = RatFunc(a.den(), a.num());
  if (inv < a) {
    c = -c;
    return inv;
  }
  return a;
}

}  // namespace

void B2Residue::add(const RatFunc& a, const RatFunc& b, const Rational& c) {
  if (a.is_zero() || b.is_zero()) throw InputError("zero in a residue term");
  raw_.push_back({a, b, c});
}

std::vector<B2Residue::Entry> B2Residue::canonical(const std::string& var) const {
  std::vector<UniPoly> polys;
  std::vector<mpz_class> ints;
  auto content = [](const UniPoly& p) { return p.is_zero() ? mpq_class(0) : p.leading(); };
  for (const auto& t : raw_) {
    polys.push_back(t.b.num().monic());
    polys.push_back(t.b.den().monic());
    const mpq_class lc = content(t.b.num()) / content(t.b.den());
    ints.push_back(abs(lc.get_num()));
    ints.push_back(abs(lc.get_den()));
  }
  const auto pbase = symbolic::coprime_base(polys);
  const auto ibase = coprime_integers(ints);

  // (a, factor label) -> coefficient
  std::map<RatFunc, std::map<std::string, Rational>> acc;
  for (const auto& t : raw_) {
    if (t.a.is_constant()) {
      const Rational v = t.a.constant_value();
      if (v == 1 || v == -1) continue;
    }
    Rational c = t.c;
    const RatFunc a = canonical_a(t.a, c);
    auto& slot = acc[a];
    for (const auto& p : pbase) {
      const int e = poly_mult(t.b.num(), p) - poly_mult(t.b.den(), p);
      if (e) slot["(" + p.str(var) + ")"] += c * e;
    }
    const mpq_class lc = content(t.b.num()) / content(t.b.den());
    for (const auto& q : ibase) {
      const int e = int_mult(lc.get_num(), q) - int_mult(lc.get_den(), q);
      if (e) slot[q.get_str()] += c * e;
    }
  }
  std::vector<Entry> out;
  for (const auto& [a, logs] : acc) {
    Entry e{a, {}};
    for (const auto& [label, c] : logs)
      if (c != 0) e.b.emplace_back(label, c);
    if (!e.b.empty()) out.push_back(std::move(e));
  }
  return out;
}

std::string B2Residue::str(const std::string& var) const {
  const auto entries = canonical(var);
  if (entries.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) os << " + ";
    os << "{" << entries[i].a.str(var) << "}_2 (x) [";
    for (size_t j = 0; j < entries[i].b.size(); ++j)
      os << (j ? " + " : "") << entries[i].b[j].second.get_str() << "*log" << entries[i].b[j].first;
    os << "]";
  }
  return os.str();
}

}  // namespace reglab::residues
