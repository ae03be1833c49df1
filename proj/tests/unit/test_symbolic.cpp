#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "reglab/symbolic.hpp"
#include "reglab/unipoly.hpp"
#include "support.hpp"

using namespace reglab::symbolic;
using reglab::InputError;
using reglab::testing::uniform_int;

namespace {

const std::vector<std::string> XYZT{"x", "y", "z", "t"};

MultiPoly P(const std::string& s, const std::vector<std::string>& vars = XYZT) { return parse_poly(s, vars); }

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(REGLAB_DEFAULT_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Reference expansion by explicit term-by-term multiplication, independent of MultiPoly::operator*.
std::map<Exponents, Rational> naive_product(const std::vector<std::map<Exponents, Rational>>& fs, size_t nv) {
  std::map<Exponents, Rational> acc{{Exponents(nv, 0), Rational(1)}};
  for (const auto& f : fs) {
    std::map<Exponents, Rational> next;
    for (const auto& [ea, ca] : acc)
      for (const auto& [eb, cb] : f) {
        Exponents e(nv);
        for (size_t i = 0; i < nv; ++i) e[i] = ea[i] + eb[i];
        next[e] += ca * cb;
      }
    for (auto it = next.begin(); it != next.end();) it = it->second == 0 ? next.erase(it) : std::next(it);
    acc = next;
  }
  return acc;
}

MultiplicativeBasis flagship_basis() {
  return MultiplicativeBasis(XYZT, {P("x"), P("y"), P("z"), P("1+x"), P("1+y"), P("1+z")});
}

FactoredElement fe(const std::map<int, int>& e, Rational c = 1) { return FactoredElement{c, e}; }

}  // namespace

TEST_CASE("parser expands powers and products") {
  CHECK(P("(x+1)^2") == P("x^2 + 2*x + 1"));
  MultiPoly flag = P("(x+1)*(y+1)*(z+1)+t");
  CHECK(flag.terms().size() == 9);
  CHECK(flag.total_degree() == 3);
  CHECK(flag.degree_in(3) == 1);

  std::vector<std::string> xyz{"x", "y", "z"};
  MultiPoly w = parse_poly("x*y*z - (x+1)^2*(y+1)^2*(z+1)^2", xyz);
  CHECK(w.total_degree() == 6);
  CHECK(w.terms().size() == 27);
  auto it = w.terms().find(Exponents{1, 1, 1});
  REQUIRE(it != w.terms().end());
  CHECK(it->second == -7);

  CHECK(P("-x^2") == P("x^2").scaled(-1));
  CHECK(P("3/6*x") == P("x").scaled(Rational(1, 2)));
  CHECK(P("2^3") == MultiPoly::constant(XYZT, 8));
  CHECK(P("x - -y") == P("x+y"));
}

TEST_CASE("parser reports errors with positions") {
  try {
    (void)P("x + (y * ");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() >= 8);
  }
  try {
    (void)P("x + w");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
    CHECK(std::string(e.what()).find("w") != std::string::npos);
  }
  CHECK_THROWS_AS(P("x y"), ParseError);
  CHECK_THROWS_AS(P("1/0"), InputError);
  CHECK_THROWS_AS(P("x^-1"), InputError);
}

TEST_CASE("laurent input yields monomial denominators") {
  LaurentPoly l = parse_laurent("1 + x^-1 + 1/2*y", XYZT);
  CHECK(l.denominator == Exponents{1, 0, 0, 0});
  CHECK(l.numerator == P("x + 1 + 1/2*x*y"));
  RationalFunction r = to_rational_function(parse_laurent("(1+x)*x^-2", XYZT));
  CHECK(r.numerator == P("1+x"));
  CHECK(r.denominator == P("x^2"));
}

TEST_CASE("exact division") {
  auto q = divide_exact(P("x^2 - 1"), P("x + 1"));
  REQUIRE(q);
  CHECK(*q == P("x - 1"));
  CHECK_FALSE(divide_exact(P("x^2 + 1"), P("x + 1")));
  auto q2 = divide_exact(P("(x+y)*(1+z)*(t-2)"), P("t-2"));
  REQUIRE(q2);
  CHECK(*q2 == P("(x+y)*(1+z)"));
}

TEST_CASE("factor over basis examples") {
  MultiplicativeBasis b2(XYZT, {P("x+1"), P("y+1")});
  FactoredElement f = factor_over_basis(P("(x+1)^2*(y+1)"), b2);
  CHECK(f.constant == 1);
  CHECK(f.exponents == std::map<int, int>{{0, 2}, {1, 1}});

  MultiplicativeBasis b3(XYZT, {P("1+x"), P("1+y"), P("1+z")});
  FactoredElement g = factor_over_basis(P("-(1+x)*(1+y)*(1+z)"), b3);
  CHECK(g.constant == -1);
  CHECK(g.exponents == std::map<int, int>{{0, 1}, {1, 1}, {2, 1}});

  MultiplicativeBasis b1(XYZT, {P("x+1")});
  try {
    (void)factor_over_basis(P("x^2 - 1"), b1);
    FAIL("expected NotFactorable");
  } catch (const NotFactorable& e) {
    CHECK(e.remainder() == P("x - 1"));
  }
}

TEST_CASE("basis validation") {
  CHECK_THROWS_AS(MultiplicativeBasis(XYZT, {P("x"), P("3")}), InputError);
  CHECK_THROWS_AS(MultiplicativeBasis(XYZT, {P("x^2-1")}), InputError);
  CHECK_THROWS_AS(MultiplicativeBasis(XYZT, {P("1+x"), P("2+2*x")}), InputError);
  CHECK_NOTHROW(MultiplicativeBasis(XYZT, {P("x^2+1"), P("1+x")}));
}

TEST_CASE("property: factor_over_basis inverts expand") {
  MultiplicativeBasis b(XYZT, {P("x"), P("1+x"), P("1-y"), P("x+y+z"), P("1+t^2"), P("x*y-z")});
  for (int trial = 0; trial < 200; ++trial) {
    FactoredElement f;
    f.constant = Rational(uniform_int(-30, 30) | 1, uniform_int(1, 12));
    f.constant.canonicalize();
    std::vector<std::map<Exponents, Rational>> num_factors, den_factors;
    for (int i = 0; i < 6; ++i) {
      int e = uniform_int(-2, 2);
      if (e) f.exponents[i] = e;
      for (int k = 0; k < std::abs(e); ++k) (e > 0 ? num_factors : den_factors).push_back(b[static_cast<size_t>(i)].terms());
    }
    RationalFunction r = expand(f, b);
    auto ref_num = naive_product(num_factors, 4);
    auto ref_den = naive_product(den_factors, 4);
    // r.num / r.den = c · N / D, so r.num · D == c · N · r.den
    MultiPoly N(XYZT), D(XYZT);
    for (const auto& [e, c] : ref_num) N.add_term(e, c);
    for (const auto& [e, c] : ref_den) D.add_term(e, c);
    CHECK(r.numerator * D == (N * r.denominator).scaled(f.constant));
    CHECK(factor_over_basis(r, b) == f);
  }
}

TEST_CASE("wedge normalization examples") {
  MultiplicativeBasis b = flagship_basis();
  FactoredElement x = fe({{0, 1}}), y = fe({{1, 1}}), z = fe({{2, 1}});
  FactoredElement ox = fe({{3, 1}}), oy = fe({{4, 1}}), oz = fe({{5, 1}});

  CHECK(wedge_normalize({{1, {x, x}}}).is_zero());
  FactoredElement f = fe({{0, 1}, {4, -2}}, Rational(-3, 5)), g = fe({{2, 1}, {3, 1}}, 2), h = fe({{1, 3}});
  CHECK(wedge_normalize({{1, {f * g, h}}, {-1, {f, h}}, {-1, {g, h}}}).is_zero());

  FactoredElement t = factor_over_basis(P("-(1+x)*(1+y)*(1+z)"), b);
  WedgeElement lhs = wedge_normalize({{1, {x, y, z, t}}});
  WedgeElement rhs = wedge_normalize({{1, {x, y, z, ox}}, {1, {x, y, z, oy}}, {1, {x, y, z, oz}}});
  CHECK(lhs == rhs);
  CHECK(lhs.terms().size() == 3);

  // constants split into primes, −1 is torsion
  WedgeElement c = wedge_normalize({{1, {fe({}, Rational(-12)), x}}});
  CHECK(c.terms().size() == 2);
  CHECK(c.terms().at(GenTuple{{Generator::Kind::basis, 0}, {Generator::Kind::prime, 2}}) == -2);
  CHECK(c.terms().at(GenTuple{{Generator::Kind::basis, 0}, {Generator::Kind::prime, 3}}) == -1);
  CHECK(to_string(lhs, b) == "x^y^z^(x + 1) + x^y^z^(y + 1) + x^y^z^(z + 1)");
}

TEST_CASE("check_decomposition trivial cases") {
  MultiplicativeBasis b = flagship_basis();
  FactoredElement x = fe({{0, 1}}), y = fe({{1, 1}});
  WedgeElement xy = wedge_normalize({{1, {x, y}}});
  WedgeElement minus_xy = wedge_normalize({{-1, {x, y}}});
  CHECK((xy - xy).is_zero());
  WedgeElement diff = xy - minus_xy;
  CHECK(diff == xy.scaled(2));

  // x∧(1+x) = (−x)∧(1−(−x))
  WedgeElement lhs = wedge_normalize({{1, {x, fe({{3, 1}})}}});
  auto chk = check_decomposition(lhs, {DecompositionTerm{1, fe({{0, 1}}, -1), {}}}, b);
  CHECK(chk.equal);
  auto bad = check_decomposition(lhs, {DecompositionTerm{-1, fe({{0, 1}}, -1), {}}}, b);
  CHECK_FALSE(bad.equal);
  CHECK(bad.difference == lhs.scaled(2));
}

TEST_CASE("property: wedge normalize is idempotent, linear and alternating") {
  std::vector<FactoredElement> pool;
  for (int i = 0; i < 6; ++i) pool.push_back(fe({{i, 1}}));
  pool.push_back(fe({}, 6));
  auto random_elem = [&] {
    FactoredElement f = fe({}, uniform_int(0, 1) ? 1 : -1);
    for (int k = 0; k < 3; ++k) f = f * pool[static_cast<size_t>(uniform_int(0, 6))].pow(uniform_int(-2, 2));
    return f;
  };
  for (int trial = 0; trial < 150; ++trial) {
    const int k = uniform_int(1, 4);
    std::vector<FactoredElement> a, b;
    for (int i = 0; i < k; ++i) a.push_back(random_elem());
    for (int i = 0; i < k; ++i) b.push_back(random_elem());
    Rational ca(uniform_int(-5, 5), uniform_int(1, 4)), cb(uniform_int(-5, 5), uniform_int(1, 4));
    ca.canonicalize();
    cb.canonicalize();

    WedgeElement wa = wedge_normalize({{1, a}}), wb = wedge_normalize({{1, b}});
    CHECK(wedge_normalize({{ca, a}, {cb, b}}) == wa.scaled(ca) + wb.scaled(cb));

    WedgeElement again(k);
    for (const auto& [tuple, c] : wa.terms()) again.add(tuple, c);
    CHECK(again == wa);

    std::vector<int> perm(static_cast<size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), reglab::testing::rng());
    int inversions = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) inversions += perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)];
    std::vector<FactoredElement> permuted;
    for (int p : perm) permuted.push_back(a[static_cast<size_t>(p)]);
    CHECK(wedge_normalize({{1, permuted}}) == wa.scaled(inversions % 2 ? -1 : 1));
  }
}

TEST_CASE("involution tau") {
  MultiplicativeBasis b = flagship_basis();
  Involution tau(b);
  CHECK(tau.apply(fe({{0, 1}})) == fe({{0, -1}}));
  CHECK(tau.apply(fe({{3, 1}})) == fe({{3, 1}, {0, -1}}));

  // free variables: (−1)^4
  MultiplicativeBasis free4(XYZT, {P("x"), P("y"), P("z"), P("t")});
  Involution tau4(free4);
  WedgeElement w = wedge_normalize({{1, {fe({{0, 1}}), fe({{1, 1}}), fe({{2, 1}}), fe({{3, 1}})}}});
  CHECK(tau4.apply(w) == w);

  // on V_P, t = −(1+x)(1+y)(1+z)
  FactoredElement t = factor_over_basis(P("-(1+x)*(1+y)*(1+z)"), b);
  WedgeElement wp = wedge_normalize({{1, {fe({{0, 1}}), fe({{1, 1}}), fe({{2, 1}}), t}}});
  CHECK(tau.apply(wp) == wp.scaled(-1));

  MultiplicativeBasis bad(XYZT, {P("x"), P("1+x+y")});
  CHECK_THROWS_AS(Involution{bad}, InputError);
}

TEST_CASE("property: tau is an involution") {
  MultiplicativeBasis b = flagship_basis();
  Involution tau(b);
  for (int trial = 0; trial < 100; ++trial) {
    FactoredElement f = fe({}, Rational(uniform_int(1, 20), uniform_int(1, 20)));
    f.constant.canonicalize();
    for (int i = 0; i < 6; ++i)
      if (int e = uniform_int(-2, 2)) f.exponents[i] = e;
    CHECK(tau.apply(tau.apply(f)) == f);

    FactoredElement g = fe({{uniform_int(0, 5), 1}, {uniform_int(0, 5), -1}}, 3);
    FactoredElement h = fe({{uniform_int(0, 5), 2}});
    WedgeElement w = wedge_normalize({{1, {f, g}}, {Rational(1, 3), {g, h}}});
    CHECK(tau.apply(tau.apply(w)) == w);

    B2WedgeElement x(2);
    x.add(f, w, 2);
    x.add(g, wedge_normalize({{1, {h, f}}}), -1);
    CHECK(tau.apply(tau.apply(x)) == x);
  }
}

TEST_CASE("B2 normalization") {
  B2WedgeElement x(1);
  WedgeElement w = wedge_normalize({{1, {fe({{0, 1}})}}});
  x.add(fe({}), w, 5);
  CHECK(x.is_zero());
  x.add(fe({}, -1), w, 5);
  CHECK(x.is_zero());
  x.add(fe({{1, 1}}), w, 1);
  x.add(fe({{1, -1}}), w, 1);
  CHECK(x.is_zero());
  x.add(fe({{1, 1}}), WedgeElement(1), 1);
  CHECK(x.is_zero());
}

TEST_CASE("flagship decomposition and xi") {
  Decomposition d = load_decomposition(read_data("flagship_decomposition.json"));
  auto chk = check_decomposition(d.lhs, d.terms, d.basis);
  CHECK(chk.equal);
  CHECK(chk.difference.is_zero());
  CHECK(d.lhs.terms().size() == 3);

  XiTriple xi = build_xi(d);
  B2WedgeElement expected(2);
  auto var = [](int i) { return fe({{i, 1}}); };
  expected.add(fe({{0, 1}}, -1), wedge_normalize({{1, {var(1), var(2)}}}), 1);
  expected.add(fe({{1, 1}}, -1), wedge_normalize({{1, {var(0), var(2)}}}), -1);
  expected.add(fe({{2, 1}}, -1), wedge_normalize({{1, {var(0), var(1)}}}), 1);
  CHECK(xi.xi == expected);
  CHECK(xi.xi_star == xi.xi.scaled(-1));
  CHECK(xi.lambda == xi.xi);
  CHECK(to_string(xi.xi, d.basis) == "{-1*(x)}_2 (x) y^z - {-1*(y)}_2 (x) x^z + {-1*(z)}_2 (x) x^y");
}

TEST_CASE("lower-dimensional decompositions") {
  for (const char* name : {"n3_decomposition.json", "n2_decomposition.json"}) {
    Decomposition d = load_decomposition(read_data(name));
    CHECK(check_decomposition(d.lhs, d.terms, d.basis).equal);
    XiTriple xi = build_xi(d);
    CHECK_FALSE(xi.xi.is_zero());
  }
}

TEST_CASE("corrupted and empty decompositions") {
  std::string text = read_data("flagship_decomposition.json");
  std::string corrupted = text;
  corrupted.replace(corrupted.find("[-1, \"-y\""), 9, "[1, \"-y\"");
  Decomposition d = load_decomposition(corrupted);
  auto chk = check_decomposition(d.lhs, d.terms, d.basis);
  CHECK_FALSE(chk.equal);
  CHECK(chk.difference.terms().size() == 1);
  CHECK_THROWS_AS(build_xi(d), InputError);

  Decomposition empty = load_decomposition(
      R"({"variables": ["x", "y", "z", "t"], "basis": ["x", "y", "z", "t"], "lhs": [], "terms": []})");
  XiTriple xi = build_xi(empty);
  CHECK(xi.xi.is_zero());
  CHECK(xi.lambda.is_zero());

  CHECK_THROWS_AS(load_decomposition("{not json"), InputError);
  CHECK_THROWS_AS(load_decomposition(R"({"variables": ["x"], "basis": ["x"], "terms": [[1, "x-1", []]]})"),
                  InputError);
}

TEST_CASE("univariate polynomials") {
  UniPoly t = UniPoly::monomial(1);
  UniPoly p = (t - UniPoly::constant(1)).pow(3) * (t + UniPoly::constant(2)).pow(2) * (t * t + UniPoly::constant(1));
  auto sqf = squarefree_decomposition(p.scaled(5));
  REQUIRE(sqf.size() == 3);
  CHECK(sqf[0] == std::make_pair(t * t + UniPoly::constant(1), 1));
  CHECK(sqf[1] == std::make_pair(t + UniPoly::constant(2), 2));
  CHECK(sqf[2] == std::make_pair(t - UniPoly::constant(1), 3));
  CHECK(multiplicity(p, t - UniPoly::constant(1)) == 3);
  CHECK(multiplicity(p, t) == 0);
  CHECK(gcd(p, p.derivative()) == ((t - UniPoly::constant(1)).pow(2) * (t + UniPoly::constant(2))));
  auto [q, r] = divmod(p, t * t + UniPoly::constant(1));
  CHECK(r.is_zero());
  CHECK(q * (t * t + UniPoly::constant(1)) == p);
  CHECK(UniPoly({1, 2, 3}).reversed(3) == UniPoly({0, 3, 2, 1}));
  CHECK(UniPoly({1, 2, 3}).evaluate(2) == 17);

  RatFunc a(t + UniPoly::constant(1), t.pow(2) - UniPoly::constant(1));
  CHECK(a == RatFunc(UniPoly::constant(1), t - UniPoly::constant(1)));
  CHECK((a * a.pow(-1)) == RatFunc::constant(1));
  CHECK((a - a).is_zero());
  CHECK(RatFunc(UniPoly::constant(6), UniPoly::constant(4)).constant_value() == Rational(3, 2));
}
