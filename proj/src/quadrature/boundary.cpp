#include <algorithm>
#include <cmath>
#include <numbers>

#include "compiled.hpp"
#include "integrate.hpp"
#include "reglab/forms.hpp"
#include "reglab/quadrature.hpp"

namespace reglab::quadrature {

using detail::CompiledPoly;
using detail::Estimate;
using forms::Jet;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx I{0, 1};

// Root of a decreasing-through-zero function on [lo, hi] with F(lo) > 0 > F(hi): Newton safeguarded by bisection.
template <class F>
double solve_bracketed(F&& f, double lo, double hi) {
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    auto [v, dv] = f(x);
    if (v == 0) return x;
    (v > 0 ? lo : hi) = x;
    double next = x - v / dv;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x)) || hi - lo <= 1e-15) return next;
    x = next;
  }
  throw ConvergenceError("boundary radius did not converge");
}

struct Boundary {
  const symbolic::Decomposition& d;
  size_t k;  // number of free variables
  CompiledPoly relation;
  symbolic::MultiPoly relation_poly;

  explicit Boundary(const symbolic::Decomposition& dec) : d(dec) {
    if (dec.relations.size() != 1) throw InputError("boundary integral needs exactly one eliminated variable");
    const auto& [name, expr] = *dec.relations.begin();
    if (name != dec.vars.back())
      throw InputError("boundary integral needs the relation to eliminate the last variable");
    k = dec.vars.size() - 1;
    if (k < 1 || k > 3) throw InputError("boundary integral supports 2 <= n <= 4");
    relation_poly = symbolic::parse_poly(expr, dec.vars);
    if (relation_poly.uses(k)) throw InputError("relation must not involve the eliminated variable");
    std::vector<size_t> free(k);
    for (size_t i = 0; i < k; ++i) free[i] = i;
    relation = CompiledPoly(relation_poly, free);
    if (!(log_abs(std::vector<double>(k, 0.0)) > 0))
      throw InputError("origin of the angle torus is not inside the chain: |R(1,…,1)| <= 1");
  }

  std::vector<Jet> torus_jets(std::span<const Jet> a) const {
    std::vector<Jet> x;
    for (const auto& ai : a) x.push_back(forms::exp(ai * Jet(I)));
    return x;
  }

  // log|R(e^{ia})|
  double log_abs(std::span<const double> a) const {
    std::vector<cplx> x;
    for (double ai : a) x.push_back(std::polar(1.0, ai));
    return std::log(std::abs(relation(std::span<const cplx>(x))));
  }

  // Derivatives of log|R(e^{ia})| along the tangents carried by a.
  std::array<double, forms::kMaxTangents> dlog_abs(std::span<const Jet> a) const {
    auto x = torus_jets(a);
    Jet r = relation(std::span<const Jet>(x));
    std::array<double, forms::kMaxTangents> g{};
    for (int i = 0; i < forms::kMaxTangents; ++i) g[static_cast<size_t>(i)] = (r.d[static_cast<size_t>(i)] / r.v).real();
    return g;
  }

  // First crossing of log|R| = 0 along the ray r·ω.
  double radius(std::span<const double> omega) const {
    std::vector<double> a(k);
    auto at = [&](double r) {
      for (size_t j = 0; j < k; ++j) a[j] = r * omega[j];
      return log_abs(a);
    };
    const double step = 0.02, r_max = kPi * std::sqrt(static_cast<double>(k));
    double lo = 0;
    while (true) {
      double hi = std::min(lo + step, r_max);
      if (!(at(hi) > 0)) {
        return solve_bracketed(
            [&](double r) {
              std::vector<Jet> aj(k);
              for (size_t j = 0; j < k; ++j) {
                aj[j] = Jet(r * omega[j]);
                aj[j].d[0] = omega[j];
              }
              double v = at(r);
              if (!std::isfinite(v)) v = -1e300;
              return std::pair{v, dlog_abs(aj)[0]};
            },
            lo, hi);
      }
      if (hi >= r_max) throw ConvergenceError("∂Γ is not star-shaped around the origin of the angle torus");
      lo = hi;
    }
  }

  // Orientation of a chart at a point: sign of det[outward normal, tangents]; the chain is where log|R| ≥ 0.
  int orientation(std::span<const Jet> a) const {
    std::vector<std::vector<double>> m;
    std::vector<double> normal(k);
    for (size_t j = 0; j < k; ++j) {
      std::vector<Jet> aj(a.begin(), a.end());
      for (auto& x : aj) x.d = {};
      aj[j].d[0] = 1.0;
      normal[j] = -dlog_abs(aj)[0];
    }
    m.push_back(normal);
    for (size_t t = 0; t + 1 < k; ++t) {
      std::vector<double> row;
      for (size_t j = 0; j < k; ++j) row.push_back(a[j].d[t].real());
      m.push_back(row);
    }
    double det;
    if (k == 1)
      det = m[0][0];
    else if (k == 2)
      det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    else
      det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
            m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (det == 0) throw ConvergenceError("degenerate chart frame");
    return det > 0 ? 1 : -1;
  }

  cplx rho(const symbolic::B2WedgeElement& xi, std::span<const Jet> a) const {
    std::vector<Jet> coords = torus_jets(a);
    coords.push_back(relation(std::span<const Jet>(coords)));
    return forms::rho_xi(xi, forms::basis_jets(d.basis, coords));
  }
};

// Unit vector on S^{k−1} with derivatives in the chart parameters (φ) or (θ, φ).
std::vector<Jet> sphere(size_t k, std::span<const double> u) {
  if (k == 2) {
    Jet phi = Jet::variable(u[0], 0);
    return {forms::cos(phi), forms::sin(phi)};
  }
  Jet th = Jet::variable(u[0], 0), phi = Jet::variable(u[1], 1);
  return {forms::sin(th) * forms::cos(phi), forms::sin(th) * forms::sin(phi), forms::cos(th)};
}

// a = r(ω)·ω with r from the implicit function theorem.
std::vector<Jet> radial_point(const Boundary& b, std::span<const double> u) {
  const size_t k = b.k;
  std::vector<Jet> omega = sphere(k, u);
  std::vector<double> w(k);
  for (size_t j = 0; j < k; ++j) w[j] = omega[j].v.real();
  const double r = b.radius(w);
  const size_t rslot = k - 1;
  std::vector<Jet> a(k);
  for (size_t j = 0; j < k; ++j) {
    a[j] = Jet(r) * omega[j];
    a[j].d[rslot] = w[j];
  }
  auto g = b.dlog_abs(a);
  for (size_t j = 0; j < k; ++j) {
    for (size_t i = 0; i < rslot; ++i) a[j].d[i] += w[j] * (-g[i] / g[rslot]);
    a[j].d[rslot] = 0;
  }
  return a;
}

bool is_three_factor_product(const Boundary& b) {
  if (b.k != 3) return false;
  const auto& vars = b.d.vars;
  symbolic::MultiPoly one = symbolic::MultiPoly::constant(vars, 1);
  symbolic::MultiPoly prod = one;
  for (size_t i = 0; i < 3; ++i) prod *= one + symbolic::MultiPoly::variable(vars, i);
  return b.relation_poly == -prod;
}

double edge_radius(double alpha) {
  const double c = std::cos(alpha), s = std::sin(alpha);
  const double r_max = kPi / std::max(std::abs(c), std::abs(s));
  auto h = [&](double r) {
    const double ct = std::cos(0.5 * r * c), cs = std::cos(0.5 * r * s);
    if (ct <= 0 || cs <= 0) return std::pair{-1e300, -1.0};
    return std::pair{std::log(8 * ct * cs), -0.5 * c * std::tan(0.5 * r * c) - 0.5 * s * std::tan(0.5 * r * s)};
  };
  return solve_bracketed(h, 0.0, r_max * (1 - 1e-12));
}

// (α, w) ↦ (t, s, v): (t, s) = R(α)(1 − w²)(cos α, sin α), v = sgn(w)·2 arccos(1/(8 cos(t/2) cos(s/2))).
std::vector<Jet> ts_point(std::span<const double> u) {
  const double alpha = u[0], w = u[1];
  const double R = edge_radius(alpha);
  const double c = std::cos(alpha), s = std::sin(alpha);
  // R'(α) from ∂/∂α log(8 cos(Rc/2) cos(Rs/2)) = 0
  const double ht = -0.5 * std::tan(0.5 * R * c), hs = -0.5 * std::tan(0.5 * R * s);
  const double dR = -(ht * (-R * s) + hs * (R * c)) / (ht * c + hs * s);
  Jet Rj(R);
  Jet al = Jet::variable(alpha, 0), wj = Jet::variable(w, 1);
  Rj.d[0] = dR;
  Jet rho = Rj * (Jet(1.0) - wj * wj);
  Jet t = rho * forms::cos(al), sj = rho * forms::sin(al);
  Jet q = Jet(8.0) * forms::cos(t * Jet(0.5)) * forms::cos(sj * Jet(0.5));
  Jet v = Jet(w > 0 ? 2.0 : -2.0) * forms::acos(Jet(1.0) / q);
  for (auto* j : {&t, &sj, &v}) {
    j->v = j->v.real();
    for (auto& x : j->d) x = x.real();
  }
  return {t, sj, v};
}

}  // namespace

std::vector<double> boundary_chart_solve(double t, double s) {
  if (!(std::abs(t) < kPi && std::abs(s) < kPi)) return {};
  const double q = 8 * std::cos(0.5 * t) * std::cos(0.5 * s);
  if (q < 1) return {};
  if (q == 1) return {0.0};
  const double v = 2 * std::acos(1 / q);
  return {-v, v};
}

QuadratureResult regulator_boundary_integral(const symbolic::Decomposition& d, const symbolic::B2WedgeElement& xi,
                                             const QuadratureConfig& cfg) {
  const Boundary b(d);
  const size_t k = b.k;
  const int n = static_cast<int>(k) + 1;
  const cplx norm = std::pow(-1.0, n - 1) / std::pow(cplx(0, 2 * kPi), n - 1);
  QuadratureResult result;
  result.config = cfg;
  if (xi.is_zero()) return result;
  if (static_cast<size_t>(xi.wedge_degree()) != k - 1)
    throw InputError("ξ must have wedge degree n − 2 for the boundary integral");

  if (k == 1) {
    // ∂Γ is the pair of endpoints of an arc, + at the outer end in the direction of increasing angle.
    cplx total = 0;
    for (double omega : {1.0, -1.0}) {
      const double w[1] = {omega};
      std::vector<Jet> a{Jet(b.radius(w) * omega)};
      a[0].d[0] = 1.0;
      const int sign = b.orientation(a) == 1 ? 1 : -1;
      a[0].d = {};
      total += static_cast<double>(sign) * b.rho(xi, a);
    }
    const cplx v = norm * total;
    result.value = v.real();
    result.imag_part = v.imag();
    result.evaluations = 2;
    return result;
  }

  Chart chart = cfg.chart;
  if (chart == Chart::automatic) chart = is_three_factor_product(b) ? Chart::ts_sqrt : Chart::radial;
  if (chart == Chart::ts_sqrt && !is_three_factor_product(b))
    throw InputError("the (t, s) chart applies only to the relation −(1+x)(1+y)(1+z)");
  result.config.chart = chart;
  const double tol = std::pow(10.0, -cfg.level) / std::abs(norm);

  Estimate total;
  if (chart == Chart::radial) {
    std::vector<double> ref(k - 1, 0.7);
    const int sign = b.orientation(radial_point(b, ref));
    detail::IntegrandND f = [&](std::span<const double> u) {
      const cplx v = norm * static_cast<double>(sign) * b.rho(xi, radial_point(b, u));
      return Estimate{v.real(), v.imag(), 0, 1};
    };
    std::vector<double> lo(k - 1, 0.0), hi;
    if (k == 2)
      hi = {2 * kPi};
    else
      hi = {kPi, 2 * kPi};
    total = detail::integrate_box(f, lo, hi, tol, cfg);
  } else {
    for (double branch : {1.0, -1.0}) {
      const double ref[2] = {0.3, 0.5 * branch};
      const int sign = b.orientation(ts_point(ref));
      detail::IntegrandND f = [&](std::span<const double> u) {
        const cplx v = norm * static_cast<double>(sign) * b.rho(xi, ts_point(u));
        return Estimate{v.real(), v.imag(), 0, 1};
      };
      const std::vector<double> lo{0.0, branch > 0 ? 0.0 : -1.0}, hi{2 * kPi, branch > 0 ? 1.0 : 0.0};
      Estimate e = detail::integrate_box(f, lo, hi, 0.5 * tol, cfg);
      total.value += e.value;
      total.aux += e.aux;
      total.error += e.error;
      total.evals += e.evals;
    }
  }
  result.value = total.value;
  result.imag_part = total.aux;
  result.error_estimate = total.error;
  result.evaluations = total.evals;
  return result;
}

std::vector<std::vector<double>> boundary_points(const symbolic::Decomposition& d, int per_axis) {
  const Boundary b(d);
  std::vector<std::vector<double>> out;
  auto push = [&](std::span<const Jet> a) {
    std::vector<double> p;
    for (const auto& x : a) p.push_back(x.v.real());
    out.push_back(p);
  };
  if (b.k == 1) {
    for (double omega : {-1.0, 1.0}) {
      const double w[1] = {omega};
      out.push_back({omega * b.radius(w)});
    }
  } else if (b.k == 2) {
    for (int i = 0; i < per_axis; ++i) {
      const double u[1] = {2 * kPi * i / per_axis};
      push(radial_point(b, u));
    }
  } else {
    for (int i = 0; i < per_axis; ++i)
      for (int j = 0; j < per_axis; ++j) {
        const double u[2] = {kPi * (i + 0.5) / per_axis, 2 * kPi * j / per_axis};
        push(radial_point(b, u));
      }
  }
  return out;
}

}  // namespace reglab::quadrature
