#include <algorithm>
#include <sstream>

#include "reglab/k3.hpp"
#include "reglab/symbolic.hpp"

namespace reglab::k3 {

using symbolic::RatFunc;

WeierstrassCurveQt WeierstrassCurveQt::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 5) throw InputError("curve needs five coefficients a1,a2,a3,a4,a6; got " + std::to_string(parts.size()));
  std::vector<UniPoly> a;
  for (const auto& p : parts) a.push_back(UniPoly::from_multipoly(symbolic::parse_poly(p, {"t"}), 0));
  return {a[0], a[1], a[2], a[3], a[4]};
}

std::string WeierstrassCurveQt::str() const {
  return a1.str() + "," + a2.str() + "," + a3.str() + "," + a4.str() + "," + a6.str();
}

DiscriminantData discriminant(const WeierstrassCurveQt& c) {
  DiscriminantData d;
  auto n = [](long v) { return UniPoly::constant(v); };
  d.b2 = c.a1 * c.a1 + n(4) * c.a2;
  d.b4 = n(2) * c.a4 + c.a1 * c.a3;
  d.b6 = c.a3 * c.a3 + n(4) * c.a6;
  d.b8 = c.a1 * c.a1 * c.a6 + n(4) * c.a2 * c.a6 - c.a1 * c.a3 * c.a4 + c.a2 * c.a3 * c.a3 - c.a4 * c.a4;
  d.c4 = d.b2 * d.b2 - n(24) * d.b4;
  d.c6 = -(d.b2 * d.b2 * d.b2) + n(36) * d.b2 * d.b4 - n(216) * d.b6;
  d.delta = -(d.b2 * d.b2 * d.b8) - n(8) * d.b4 * d.b4 * d.b4 - n(27) * d.b6 * d.b6 + n(9) * d.b2 * d.b4 * d.b6;
  if (d.c4 * d.c4 * d.c4 - d.c6 * d.c6 != n(1728) * d.delta)
    throw ConvergenceError("internal: c4^3 - c6^2 != 1728 Delta");
  if (d.delta.is_zero()) throw InputError("singular curve: discriminant vanishes identically");
  return d;
}

void minimalize(int& v4, int& v6, int& vd) {
  while (v4 >= 4 && v6 >= 6 && vd >= 12) {
    if (v4 != kInfiniteOrder) v4 -= 4;
    if (v6 != kInfiniteOrder) v6 -= 6;
    vd -= 12;
  }
}

FiberData kodaira_type(int v4, int v6, int vd) {
  if (vd < 0 || v4 < 0 || v6 < 0 || vd == kInfiniteOrder) throw InputError("invalid valuation triple");
  if (v4 >= 4 && v6 >= 6 && vd >= 12) throw InputError("valuation triple is not minimal");
  FiberData f;
  f.v_c4 = v4;
  f.v_c6 = v6;
  f.v_delta = vd;
  auto set = [&](std::string type, int m, int m1, int e) {
    f.type = std::move(type);
    f.components = m;
    f.simple_components = m1;
    f.euler = e;
  };
  auto bad = [&] {
    throw InputError("inconsistent valuation triple (" + std::to_string(v4) + ", " + std::to_string(v6) + ", " +
                     std::to_string(vd) + ")");
  };
  if (vd == 0) {
    set("I0", 1, 1, 0);
    return f;
  }
  if (v4 == 0) {
    if (v6 != 0) bad();
    set("I" + std::to_string(vd), vd, vd, vd);
    return f;
  }
  if (v6 == 0) bad();
  // additive reduction: v4 ≥ 1, v6 ≥ 1
  if (vd == 2 && v6 == 1) {
    set("II", 1, 1, 2);
  } else if (vd == 3 && v4 == 1 && v6 >= 2) {
    set("III", 2, 2, 3);
  } else if (vd == 4 && v4 >= 2 && v6 == 2) {
    set("IV", 3, 3, 4);
  } else if (vd == 6 && v4 >= 2 && v6 >= 3) {
    set("I0*", 5, 4, 6);
  } else if (vd > 6 && v4 == 2 && v6 == 3) {
    set("I" + std::to_string(vd - 6) + "*", vd - 1, 4, vd);
  } else if (vd == 8 && v4 >= 3 && v6 == 4) {
    set("IV*", 7, 3, 8);
  } else if (vd == 9 && v4 == 3 && v6 >= 5) {
    set("III*", 8, 2, 9);
  } else if (vd == 10 && v4 >= 4 && v6 == 5) {
    set("II*", 9, 1, 10);
  } else {
    bad();
  }
  return f;
}

namespace {

int valuation(const UniPoly& p, const UniPoly& g) { return p.is_zero() ? kInfiniteOrder : multiplicity(p, g); }

int valuation_at_infinity(const UniPoly& p, int weight) { return p.is_zero() ? kInfiniteOrder : weight - p.degree(); }

int ceil_div(int a, int b) { return a <= 0 ? 0 : (a + b - 1) / b; }

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n == 0 || n > mpz_class("1000000000000")) return out;
  for (mpz_class d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

// Splits off the linear factors t − r for rational roots r.
std::vector<UniPoly> split_rational_roots(const UniPoly& g) {
  if (g.degree() <= 1) return {g};
  mpz_class lcm = 1;
  for (const auto& c : g.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> z;
  for (const auto& c : g.coeffs()) z.push_back(mpz_class(c * lcm));
  std::vector<UniPoly> out;
  UniPoly rest = g;
  if (z.front() == 0) {
    out.push_back(UniPoly::monomial(1));
    rest = divmod(rest, UniPoly::monomial(1)).first;
  } else {
    for (const auto& p : divisors(z.front()))
      for (const auto& q : divisors(z.back()))
        for (int sign : {1, -1}) {
          mpq_class r(sign * p, q);
          r.canonicalize();
          if (rest.degree() >= 1 && rest.evaluate(r) == 0) {
            const UniPoly lin({-r, mpq_class(1)});
            if (std::find(out.begin(), out.end(), lin) != out.end()) continue;
            out.push_back(lin);
            rest = divmod(rest, lin).first;
          }
        }
  }
  if (rest.degree() >= 1) {
    if (rest.degree() < g.degree()) {
      for (const auto& h : split_rational_roots(rest.monic())) out.push_back(h);
    } else {
      out.push_back(rest.monic());
    }
  }
  return out;
}

}  // namespace

std::vector<FiberData> singular_fibers(const WeierstrassCurveQt& c) {
  const DiscriminantData d = discriminant(c);
  std::vector<UniPoly> pieces;
  for (const UniPoly* p : {&d.delta, &d.c4, &d.c6})
    for (const auto& [f, e] : symbolic::squarefree_decomposition(*p)) pieces.push_back(f);
  std::vector<UniPoly> places;
  for (const auto& g : symbolic::coprime_base(pieces))
    for (const auto& h : split_rational_roots(g)) places.push_back(h);
  std::sort(places.begin(), places.end(), [](const UniPoly& a, const UniPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.degree() == 1) return -a.coeff(0) < -b.coeff(0);
    return a.coeffs() < b.coeffs();
  });

  std::vector<FiberData> out;
  for (const auto& g : places) {
    int v4 = valuation(d.c4, g), v6 = valuation(d.c6, g), vd = valuation(d.delta, g);
    if (vd == 0) continue;
    minimalize(v4, v6, vd);
    FiberData f = kodaira_type(v4, v6, vd);
    if (f.v_delta == 0) continue;
    f.place = g.str("t");
    f.degree = g.degree();
    out.push_back(f);
  }

  // t = 1/s with weight m: aᵢ ↦ s^{m i} aᵢ(1/s)
  const int m = std::max({ceil_div(c.a1.degree(), 1), ceil_div(c.a2.degree(), 2), ceil_div(c.a3.degree(), 3),
                          ceil_div(c.a4.degree(), 4), ceil_div(c.a6.degree(), 6)});
  int v4 = valuation_at_infinity(d.c4, 4 * m), v6 = valuation_at_infinity(d.c6, 6 * m),
      vd = valuation_at_infinity(d.delta, 12 * m);
  minimalize(v4, v6, vd);
  if (vd > 0) {
    FiberData f = kodaira_type(v4, v6, vd);
    f.place = "inf";
    out.push_back(f);
  }
  return out;
}

int shioda_tate_rho(int mw_rank, const std::vector<FiberData>& fibers) {
  int rho = mw_rank + 2;
  for (const auto& f : fibers) rho += f.degree * (f.components - 1);
  return rho;
}

Rational transcendental_det(const std::vector<FiberData>& fibers, long torsion_order) {
  if (torsion_order < 1) throw InputError("torsion order must be positive");
  mpz_class num = 1;
  for (const auto& f : fibers)
    for (int i = 0; i < f.degree; ++i) num *= f.simple_components;
  Rational r(num, mpz_class(torsion_order) * torsion_order);
  r.canonicalize();
  return r;
}

SchuettData schuett_level(long d) {
  if (d < 1) throw InputError("determinant must be a positive integer");
  long sf = 1, rest = d;
  for (long p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e % 2) sf *= p;
  }
  sf *= rest;
  // ℚ(√−sf): discriminant −sf if −sf ≡ 1 (mod 4), else −4 sf
  const long dk = ((-sf) % 4 + 4) % 4 == 1 ? -sf : -4 * sf;
  if (dk == -3 || dk == -4)
    throw DomainError("imaginary quadratic field of discriminant " + std::to_string(dk) + " is excluded");
  SchuettData s;
  s.d = d;
  s.d_K = dk;
  s.level = dk % 4 != 0 ? -dk : -dk / 4;
  return s;
}

namespace {

struct Point {
  bool infinity = true;
  RatFunc x, y;
};

Point add(const Point& p, const Point& q, const WeierstrassCurveQt& c) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  const RatFunc a1(c.a1, UniPoly::constant(1)), a2(c.a2, UniPoly::constant(1)), a3(c.a3, UniPoly::constant(1)),
      a4(c.a4, UniPoly::constant(1));
  RatFunc lambda;
  if (p.x == q.x) {
    if ((p.y + q.y + a1 * q.x + a3).is_zero()) return {};
    lambda = (RatFunc::constant(3) * p.x * p.x + RatFunc::constant(2) * a2 * p.x + a4 - a1 * p.y) /
             (RatFunc::constant(2) * p.y + a1 * p.x + a3);
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  const RatFunc nu = p.y - lambda * p.x;
  Point r;
  r.infinity = false;
  r.x = lambda * lambda + a1 * lambda - a2 - p.x - q.x;
  r.y = -(lambda + a1) * r.x - nu - a3;
  return r;
}

}  // namespace

std::optional<int> point_order_origin(const WeierstrassCurveQt& c, int max_order) {
  if (!c.a6.is_zero()) return std::nullopt;
  const Point p{false, RatFunc::constant(0), RatFunc::constant(0)};
  Point q = p;
  for (int n = 1; n <= max_order; ++n) {
    if (q.infinity) return n;
    q = add(q, p, c);
  }
  return std::nullopt;
}

SurfaceInvariants analyze(const WeierstrassCurveQt& c, std::optional<int> mw_rank, std::optional<long> torsion_order) {
  SurfaceInvariants s;
  s.disc = discriminant(c);
  s.fibers = singular_fibers(c);
  for (const auto& f : s.fibers) s.euler_number += f.degree * f.euler;
  s.is_k3 = s.euler_number == 24;
  if (torsion_order) {
    s.torsion_order = *torsion_order;
  } else if (auto n = point_order_origin(c)) {
    s.torsion_order = *n;
  }
  if (mw_rank) {
    s.mw_rank = *mw_rank;
  } else if (s.is_k3) {
    s.mw_rank = 20 - shioda_tate_rho(0, s.fibers);
    s.mw_rank_forced = true;
    if (s.mw_rank < 0) throw InputError("fiber configuration alone exceeds Picard rank 20");
  }
  s.rho = shioda_tate_rho(s.mw_rank, s.fibers);
  if (s.is_k3 && s.rho > 20) throw InputError("Picard rank " + std::to_string(s.rho) + " exceeds 20 on a K3 surface");
  s.det_t = transcendental_det(s.fibers, s.torsion_order);
  s.det_integral = s.det_t.get_den() == 1;
  if (s.is_k3 && s.rho == 20 && s.det_integral) {
    try {
      s.schuett = schuett_level(s.det_t.get_num().get_si());
    } catch (const DomainError& e) {
      s.schuett_error = e.what();
    }
  }
  return s;
}

}  // namespace reglab::k3
