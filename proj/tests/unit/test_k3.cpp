#include "doctest.h"
#include "reglab/k3.hpp"
#include "support.hpp"

using namespace reglab::k3;
using reglab::testing::uniform_int;

namespace {

UniPoly P(std::vector<long> c) {
  std::vector<mpq_class> q(c.begin(), c.end());
  return UniPoly(q);
}

const char* kFlagship = "1+t-t^2,t^2-t^3,t^2-t^3,0,0";

// 16Δ as the discriminant of 4x³ + b₂x² + 2b₄x + b₆ at a rational t, from the aᵢ directly.
mpq_class cubic_discriminant_oracle(const WeierstrassCurveQt& c, const mpq_class& t) {
  const mpq_class a1 = c.a1.evaluate(t), a2 = c.a2.evaluate(t), a3 = c.a3.evaluate(t), a4 = c.a4.evaluate(t),
                  a6 = c.a6.evaluate(t);
  const mpq_class A = 4, B = a1 * a1 + 4 * a2, C = 2 * (2 * a4 + a1 * a3), D = a3 * a3 + 4 * a6;
  return B * B * C * C - 4 * A * C * C * C - 4 * B * B * B * D - 27 * A * A * D * D + 18 * A * B * C * D;
}

std::vector<std::tuple<std::string, std::string, int>> shape(const std::vector<FiberData>& fibers) {
  std::vector<std::tuple<std::string, std::string, int>> out;
  for (const auto& f : fibers) out.emplace_back(f.place, f.type, f.degree);
  return out;
}

WeierstrassCurveQt scaled(const WeierstrassCurveQt& c, const UniPoly& u) {
  return {u * c.a1, u.pow(2) * c.a2, u.pow(3) * c.a3, u.pow(4) * c.a4, u.pow(6) * c.a6};
}

}  // namespace

TEST_CASE("discriminant of the flagship fibration") {
  auto c = WeierstrassCurveQt::parse(kFlagship);
  auto d = discriminant(c);
  const UniPoly t = P({0, 1});
  const UniPoly expected = t.pow(7) * P({-1, 1}).pow(7) * P({1, 5, -8, 1});
  CHECK(d.delta == expected);
  CHECK(d.c4 * d.c4 * d.c4 - d.c6 * d.c6 == UniPoly::constant(1728) * d.delta);
  for (long k = -5; k <= 5; ++k) {
    mpq_class tv(k, 3);
    tv.canonicalize();
    CHECK(cubic_discriminant_oracle(c, tv) == 16 * d.delta.evaluate(tv));
  }
  // dropping the x² term does not reproduce the discriminant
  auto other = WeierstrassCurveQt::parse("1+t-t^2,0,t^2-t^3,0,0");
  CHECK(discriminant(other).delta != expected);
}

TEST_CASE("discriminant examples") {
  auto d = discriminant(WeierstrassCurveQt::parse("0,0,0,0,t"));
  CHECK(d.delta == P({0, 0, -432}));
  auto cst = WeierstrassCurveQt::parse("0,0,1,-1,0");
  CHECK(discriminant(cst).delta.is_constant());
  CHECK(singular_fibers(cst).empty());
  CHECK_THROWS_AS(discriminant(WeierstrassCurveQt::parse("0,0,0,0,0")), reglab::InputError);
  CHECK_THROWS_AS(WeierstrassCurveQt::parse("1,2,3"), reglab::InputError);

  for (int trial = 0; trial < 40; ++trial) {
    std::vector<UniPoly> a;
    for (int i = 0; i < 5; ++i) {
      std::vector<long> coeffs;
      for (int k = 0, deg = uniform_int(0, 3); k <= deg; ++k) coeffs.push_back(uniform_int(-3, 3));
      a.push_back(P(coeffs));
    }
    WeierstrassCurveQt c{a[0], a[1], a[2], a[3], a[4]};
    UniPoly delta;
    try {
      delta = discriminant(c).delta;
    } catch (const reglab::InputError&) {
      continue;
    }
    for (long k = -3; k <= 3; ++k) {
      mpq_class tv(k, 2);
      tv.canonicalize();
      REQUIRE(cubic_discriminant_oracle(c, tv) == 16 * delta.evaluate(tv));
    }
  }
}

TEST_CASE("Kodaira types from valuations") {
  auto f = kodaira_type(0, 0, 7);
  CHECK(f.type == "I7");
  CHECK(f.components == 7);
  CHECK(f.simple_components == 7);
  CHECK(kodaira_type(0, 0, 1).type == "I1");
  CHECK(kodaira_type(1, 1, 2).type == "II");
  CHECK(kodaira_type(kInfiniteOrder, 1, 2).type == "II");
  CHECK(kodaira_type(1, 2, 3).type == "III");
  CHECK(kodaira_type(2, 2, 4).type == "IV");
  CHECK(kodaira_type(2, 3, 6).type == "I0*");
  auto in = kodaira_type(2, 3, 9);
  CHECK(in.type == "I3*");
  CHECK(in.components == 8);
  CHECK(in.simple_components == 4);
  CHECK(kodaira_type(3, 4, 8).type == "IV*");
  CHECK(kodaira_type(3, 5, 9).type == "III*");
  auto ii = kodaira_type(4, 5, 10);
  CHECK(ii.type == "II*");
  CHECK(ii.euler == 10);
  CHECK_THROWS_AS(kodaira_type(0, 1, 3), reglab::InputError);
  CHECK_THROWS_AS(kodaira_type(1, 0, 2), reglab::InputError);
  CHECK_THROWS_AS(kodaira_type(4, 6, 12), reglab::InputError);
  int v4 = 4, v6 = 7, vd = 14;
  minimalize(v4, v6, vd);
  CHECK(v4 == 0);
  CHECK(v6 == 1);
  CHECK(vd == 2);
}

TEST_CASE("rank, determinant and level formulas") {
  CHECK(shioda_tate_rho(0, {kodaira_type(0, 0, 1)}) == 2);
  CHECK(shioda_tate_rho(2, {kodaira_type(0, 0, 2), kodaira_type(0, 0, 2)}) == 6);
  std::vector<FiberData> i4(6, kodaira_type(0, 0, 4));
  CHECK(transcendental_det(i4, 1) == 4096);
  CHECK(transcendental_det(i4, 3).get_den() != 1);
  CHECK(transcendental_det(std::vector<FiberData>(24, kodaira_type(0, 0, 1)), 1) == 1);

  auto s = schuett_level(7);
  CHECK(s.d_K == -7);
  CHECK(s.level == 7);
  s = schuett_level(2);
  CHECK(s.d_K == -8);
  CHECK(s.level == 2);
  CHECK(schuett_level(28).level == 7);
  CHECK(schuett_level(5).d_K == -20);
  CHECK(schuett_level(5).level == 5);
  CHECK(schuett_level(15).level == 15);
  CHECK_THROWS_AS(schuett_level(1), reglab::DomainError);
  CHECK_THROWS_AS(schuett_level(3), reglab::DomainError);
  CHECK_THROWS_AS(schuett_level(0), reglab::InputError);
}

TEST_CASE("flagship surface invariants") {
  auto c = WeierstrassCurveQt::parse(kFlagship);
  auto inv = analyze(c);
  using S = std::tuple<std::string, std::string, int>;
  CHECK(shape(inv.fibers) == std::vector<S>{{"t", "I7", 1}, {"t - 1", "I7", 1}, {"t^3 - 8*t^2 + 5*t + 1", "I1", 3},
                                            {"inf", "I7", 1}});
  int total = 0;
  for (const auto& f : inv.fibers) total += f.degree * f.v_delta;
  CHECK(total == 24);
  CHECK(inv.is_k3);
  CHECK(inv.torsion_order == 7);
  CHECK(inv.mw_rank == 0);
  CHECK(inv.mw_rank_forced);
  CHECK(inv.rho == 20);
  CHECK(inv.det_t == 7);
  REQUIRE(inv.schuett);
  CHECK(inv.schuett->d_K == -7);
  CHECK(inv.schuett->level == 7);
  CHECK_THROWS_AS(analyze(c, 1), reglab::InputError);
}

TEST_CASE("rational elliptic surface y^2 = x^3 + t") {
  auto inv = analyze(WeierstrassCurveQt::parse("0,0,0,0,t"));
  using S = std::tuple<std::string, std::string, int>;
  CHECK(shape(inv.fibers) == std::vector<S>{{"t", "II", 1}, {"inf", "II*", 1}});
  CHECK(inv.euler_number == 12);
  CHECK_FALSE(inv.is_k3);
  CHECK_FALSE(inv.schuett);
}

TEST_CASE("torsion order of the origin") {
  CHECK(point_order_origin(WeierstrassCurveQt::parse(kFlagship)) == 7);
  // Tate normal form with b = c = t has a point of order 5
  CHECK(point_order_origin(WeierstrassCurveQt::parse("1-t,-t,-t,0,0")) == 5);
  CHECK_FALSE(point_order_origin(WeierstrassCurveQt::parse("0,0,0,0,t")));
}

TEST_CASE("property: fiber types are invariant under u-transforms") {
  std::vector<WeierstrassCurveQt> curves{WeierstrassCurveQt::parse(kFlagship), WeierstrassCurveQt::parse("0,0,0,0,t"),
                                         WeierstrassCurveQt::parse("1-t,-t,-t,0,0"),
                                         WeierstrassCurveQt::parse("0,0,0,t^2,t^3+1")};
  for (const auto& c : curves) {
    const auto base = shape(singular_fibers(c));
    for (int trial = 0; trial < 6; ++trial) {
      const int k = uniform_int(0, 3);
      long coef = 0;
      while (coef == 0) coef = uniform_int(-3, 3);
      UniPoly u = UniPoly::monomial(k, coef);
      INFO(c.str(), " u = ", u.str());
      CHECK(shape(singular_fibers(scaled(c, u))) == base);
    }
  }
}
