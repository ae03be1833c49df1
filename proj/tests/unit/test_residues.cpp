#include <fstream>
#include <sstream>

#include "doctest.h"
#include "reglab/residues.hpp"
#include "support.hpp"

using namespace reglab::residues;
using reglab::symbolic::B2WedgeElement;
using reglab::symbolic::FactoredElement;
using reglab::symbolic::Generator;
using reglab::symbolic::MultiplicativeBasis;
using reglab::symbolic::UniPoly;
using reglab::symbolic::WedgeElement;
using reglab::testing::uniform_int;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(REGLAB_DEFAULT_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RatFunc c(long v) { return RatFunc::constant(v); }
RatFunc s_plus(long a) { return RatFunc(UniPoly({Rational(a), Rational(1)}), UniPoly::constant(1)); }

FunctionRecord rec(Order o, RatFunc v) { return {o, Leading::of(std::move(v))}; }
FunctionRecord rec(Order o) { return {o, Leading{}}; }

RatFunc random_ratfunc() {
  for (;;) {
    std::vector<Rational> n, d;
    for (int i = 0, deg = uniform_int(0, 2); i <= deg; ++i) n.emplace_back(uniform_int(-4, 4));
    for (int i = 0, deg = uniform_int(0, 1); i <= deg; ++i) d.emplace_back(uniform_int(-3, 3));
    UniPoly num(n), den(d);
    if (!num.is_zero() && !den.is_zero()) return RatFunc(num, den);
  }
}

FunctionRecord random_record() { return rec(Order::known(uniform_int(-3, 3)), random_ratfunc()); }

struct Setup {
  MultiplicativeBasis basis;
  std::vector<std::string> text;
};

Setup xyzw() {
  std::vector<std::string> vars{"x", "y", "z", "w"};
  std::vector<reglab::symbolic::MultiPoly> elems;
  for (const auto& v : vars) elems.push_back(reglab::symbolic::parse_poly(v, vars));
  return {MultiplicativeBasis(vars, elems), vars};
}

FactoredElement fe(int index, Rational constant = 1) {
  FactoredElement f;
  f.constant = constant;
  f.exponents[index] = 1;
  return f;
}

WedgeElement wedge(int a, int b) {
  WedgeElement w(2);
  w.add({Generator{Generator::Kind::basis, a}, Generator{Generator::Kind::basis, b}}, 1);
  return w;
}

}  // namespace

TEST_CASE("tame symbol examples") {
  auto t = tame_symbol(rec(Order::known(0), c(3)), rec(Order::known(0), c(5)));
  CHECK(t.decided);
  CHECK(t.value == c(1));

  t = tame_symbol(rec(Order::known(1), c(1)), rec(Order::known(0), c(7)));
  CHECK(t.value == RatFunc::constant(Rational(1, 7)));
  CHECK_FALSE(t.modulo_torsion);

  const auto f = rec(Order::known(1), s_plus(2));
  t = tame_symbol(f, f);
  CHECK(t.value == c(-1));
  CHECK(t.is_torsion());

  // unknown order meets a unit restriction
  t = tame_symbol(rec(Order::positive()), rec(Order::known(0), c(-1)));
  CHECK(t.decided);
  CHECK(t.is_torsion());
  t = tame_symbol(rec(Order::positive()), rec(Order::known(0), c(1)));
  CHECK(t.value == c(1));
  CHECK_FALSE(tame_symbol(rec(Order::positive()), rec(Order::known(0), c(2))).decided);
  CHECK_FALSE(tame_symbol(rec(Order::positive()), rec(Order::known(0), s_plus(1))).decided);
  CHECK_FALSE(tame_symbol(rec(Order::negative()), rec(Order::positive())).decided);
  t = tame_symbol(rec(Order::negative()), {Order::known(0), Leading::root_of_unity()});
  CHECK(t.is_torsion());
}

TEST_CASE("order arithmetic") {
  CHECK(Order::positive() + Order::known(2) == Order::positive());
  CHECK(Order::positive().times(-2) == Order::negative());
  CHECK((Order::positive() + Order::negative()).kind == Order::Kind::indeterminate);
  CHECK((Order::positive() + Order::known(-1)).kind == Order::Kind::indeterminate);
  CHECK(Order::known(3).times(-2) == Order::known(-6));
  CHECK(Order::negative().times(0) == Order::known(0));
}

TEST_CASE("property: tame symbol antisymmetry") {
  for (int trial = 0; trial < 300; ++trial) {
    auto f = random_record(), g = random_record();
    auto a = tame_symbol(f, g), b = tame_symbol(g, f);
    REQUIRE(a.decided);
    REQUIRE(b.decided);
    REQUIRE(a.value * b.value == c(1));
  }
  for (int trial = 0; trial < 100; ++trial) {
    auto f = rec(uniform_int(0, 1) ? Order::positive() : Order::negative());
    auto g = rec(Order::known(0), c(uniform_int(0, 1) ? 1 : -1));
    auto a = tame_symbol(f, g), b = tame_symbol(g, f);
    REQUIRE((a.decided && b.decided));
    REQUIRE(a.is_torsion());
    REQUIRE(b.is_torsion());
  }
}

TEST_CASE("property: tame symbol bimultiplicativity") {
  for (int trial = 0; trial < 300; ++trial) {
    auto f1 = random_record(), f2 = random_record(), g = random_record();
    auto f12 = product({{f1, 1}, {f2, 1}});
    REQUIRE(tame_symbol(f12, g).value == tame_symbol(f1, g).value * tame_symbol(f2, g).value);
    REQUIRE(tame_symbol(g, f12).value == tame_symbol(g, f1).value * tame_symbol(g, f2).value);
    auto f1_sq_inv = product({{f1, -2}});
    REQUIRE(tame_symbol(f1_sq_inv, g).value == tame_symbol(f1, g).value.pow(-2));
  }
}

TEST_CASE("residue map on constructed elements") {
  auto setup = xyzw();
  DivisorData p;
  p.name = "control";
  p.records["x"] = rec(Order::known(1), c(1));
  p.records["y"] = rec(Order::known(0), s_plus(0));
  p.records["z"] = rec(Order::known(0), c(2));
  p.records["w"] = rec(Order::known(0), c(4));

  SUBCASE("vanishing first argument") {
    B2WedgeElement xi(2);
    xi.add(fe(0), wedge(1, 2), 1);
    auto cert = residue_43(xi, setup.basis, setup.text, p);
    CHECK(cert.verdict == Verdict::trivial);
    CHECK(cert.reason == Reason::steinberg_degenerate);
    CHECK(cert.terms[0].f_special == "0");
  }
  SUBCASE("nontrivial control") {
    B2WedgeElement xi(2);
    xi.add(fe(1), wedge(0, 2), 1);
    auto cert = residue_43(xi, setup.basis, setup.text, p);
    CHECK(cert.verdict == Verdict::nontrivial);
    CHECK_FALSE(cert.reason);
    CHECK(cert.terms[0].tame.value == RatFunc::constant(Rational(1, 2)));
    B2Residue expected;
    expected.add(s_plus(0), RatFunc::constant(Rational(1, 2)), 1);
    CHECK(cert.residue.str() == expected.str());
    CHECK_FALSE(expected.is_zero());
    CHECK(recheck(cert) == Verdict::nontrivial);
    // a forged reason does not survive re-evaluation
    cert.terms[0].reason = Reason::torsion_tensor_factor;
    CHECK(recheck(cert) == Verdict::nontrivial);
  }
  SUBCASE("exact cancellation") {
    B2WedgeElement xi(2);
    xi.add(fe(1), wedge(0, 2), 2);
    xi.add(fe(1), wedge(0, 3), -1);
    auto cert = residue_43(xi, setup.basis, setup.text, p);
    CHECK(cert.verdict == Verdict::trivial);
    CHECK(cert.reason == Reason::exact_cancellation);
    CHECK(recheck(cert) == Verdict::trivial);
  }
  SUBCASE("torsion tensor factor with unknown order") {
    DivisorData q = p;
    q.records["x"] = rec(Order::positive());
    q.records["z"] = rec(Order::known(0), c(-1));
    B2WedgeElement xi(2);
    xi.add(fe(1), wedge(0, 2), 1);
    auto cert = residue_43(xi, setup.basis, setup.text, q);
    CHECK(cert.verdict == Verdict::trivial);
    CHECK(cert.reason == Reason::torsion_tensor_factor);
    q.records["z"] = rec(Order::known(0), c(3));
    CHECK(residue_43(xi, setup.basis, setup.text, q).verdict == Verdict::undecidable);
  }
  SUBCASE("zero element and missing records") {
    auto cert = residue_43(B2WedgeElement(2), setup.basis, setup.text, p);
    CHECK(cert.verdict == Verdict::trivial);
    CHECK(cert.reason == Reason::exact_cancellation);
    DivisorData q = p;
    q.records.erase("z");
    B2WedgeElement xi(2);
    xi.add(fe(1), wedge(0, 2), 1);
    CHECK_THROWS_AS(residue_43(xi, setup.basis, setup.text, q), reglab::InputError);
  }
}

TEST_CASE("property: residue map is linear") {
  auto setup = xyzw();
  for (int trial = 0; trial < 50; ++trial) {
    DivisorData p;
    p.name = "random";
    for (const auto& name : setup.text) p.records[name] = rec(Order::known(uniform_int(-2, 2)), random_ratfunc());
    B2WedgeElement a(2), b(2);
    for (int k = 0; k < 3; ++k) {
      const int i = uniform_int(0, 3), j = uniform_int(0, 3), l = uniform_int(0, 3);
      if (j != l) a.add(fe(i, uniform_int(1, 3)), wedge(j, l), uniform_int(-3, 3));
      const int i2 = uniform_int(0, 3), j2 = uniform_int(0, 3), l2 = uniform_int(0, 3);
      if (j2 != l2) b.add(fe(i2), wedge(j2, l2), uniform_int(-3, 3));
    }
    Rational lam(uniform_int(-5, 5), uniform_int(1, 4));
    lam.canonicalize();
    auto ra = residue_43(a, setup.basis, setup.text, p);
    auto rb = residue_43(b, setup.basis, setup.text, p);
    auto rab = residue_43(a + b.scaled(lam), setup.basis, setup.text, p);
    if (ra.verdict == Verdict::undecidable || rb.verdict == Verdict::undecidable) continue;
    // ∂(a + λb) − ∂a − λ∂b = 0, evaluated inside one residue so factors share a coprime base
    B2Residue diff;
    for (const auto& [cert, scale] :
         std::vector<std::pair<const DivisorCertificate*, Rational>>{{&rab, 1}, {&ra, -1}, {&rb, -lam}})
      for (const auto& t : cert->terms)
        if (!t.reason) diff.add(t.f_at_p.leading.value, t.tame.value, scale * t.coefficient);
    REQUIRE(diff.is_zero());
  }
}

TEST_CASE("flagship residues vanish on every tabulated divisor") {
  auto d = reglab::symbolic::load_decomposition(slurp("flagship_decomposition.json"));
  auto xi = reglab::symbolic::build_xi(d).xi;
  auto divisors = load_divisors(slurp("flagship_divisors.json"));
  CHECK(divisors.size() == 48);
  auto report = certify_all_residues(xi, d.basis, d.basis_text, divisors);
  CHECK(report.overall == Verdict::trivial);
  int torsion = 0;
  for (const auto& cert : report.divisors) {
    INFO(cert.divisor);
    CHECK(cert.verdict == Verdict::trivial);
    REQUIRE(cert.reason);
    CHECK(recheck(cert) == Verdict::trivial);
    for (const auto& t : cert.terms) CHECK(t.reason);
    torsion += cert.reason == Reason::torsion_tensor_factor;
  }
  CHECK(torsion > 0);

  auto zero = certify_all_residues(B2WedgeElement(2), d.basis, d.basis_text, divisors);
  CHECK(zero.overall == Verdict::trivial);

  // the same divisors see a nontrivial residue once a restriction is perturbed
  auto perturbed = divisors;
  perturbed[0].records["z"] = rec(Order::known(0), c(2));
  CHECK(certify_all_residues(xi, d.basis, d.basis_text, perturbed).overall == Verdict::undecidable);
  perturbed[0].records["x"] = rec(Order::known(1), c(1));
  CHECK(certify_all_residues(xi, d.basis, d.basis_text, perturbed).overall == Verdict::nontrivial);
}

TEST_CASE("divisor data validation") {
  CHECK_THROWS_AS(load_divisors("{"), reglab::InputError);
  CHECK_THROWS_AS(load_divisors(R"({"divisors":[{"name":"a","records":{"x":{"order":0}}}]})"), reglab::InputError);
  CHECK_THROWS_AS(load_divisors(R"({"divisors":[{"name":"a","records":{"x":{"order":"big"}}}]})"),
                  reglab::InputError);
  CHECK_THROWS_AS(load_divisors(R"({"divisors":[{"name":"a","records":{"x":{"order":0,"value":"0"}}}]})"),
                  reglab::InputError);
  auto ds = load_divisors(
      R"({"divisors":[{"name":"a","records":{"x":{"order":0,"value":{"num":"-s-1","den":"s"}},"y":{"order":"unknown_positive"}}}],
          "symmetries":[{"suffix":"'","swap":{"x":"y","y":"x"}}]})");
  REQUIRE(ds.size() == 2);
  CHECK(ds[1].name == "a'");
  CHECK(ds[1].records.at("x").order == Order::positive());
  CHECK(ds[0].records.at("x").leading.value ==
        RatFunc(UniPoly({Rational(-1), Rational(-1)}), UniPoly({Rational(0), Rational(1)})));
}
