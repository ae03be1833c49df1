#include <algorithm>
#include <numeric>

#include "reglab/forms.hpp"
#include "reglab/numerics.hpp"

namespace reglab::forms {

Jet Jet::variable(double x, int direction) {
  Jet j(x);
  j.d[static_cast<size_t>(direction)] = 1.0;
  return j;
}

Jet& Jet::operator+=(const Jet& o) {
  v += o.v;
  for (int i = 0; i < kMaxTangents; ++i) d[i] += o.d[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  v -= o.v;
  for (int i = 0; i < kMaxTangents; ++i) d[i] -= o.d[i];
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  for (int i = 0; i < kMaxTangents; ++i) d[i] = d[i] * o.v + v * o.d[i];
  v *= o.v;
  return *this;
}

Jet& Jet::operator/=(const Jet& o) {
  const cplx q = v / o.v;
  for (int i = 0; i < kMaxTangents; ++i) d[i] = (d[i] - q * o.d[i]) / o.v;
  v = q;
  return *this;
}

Jet Jet::operator-() const {
  Jet r = *this;
  r.v = -r.v;
  for (auto& x : r.d) x = -x;
  return r;
}

Jet Jet::conj() const {
  Jet r = *this;
  r.v = std::conj(r.v);
  for (auto& x : r.d) x = std::conj(x);
  return r;
}

namespace {

Jet chain(const Jet& a, cplx value, cplx deriv) {
  Jet r(value);
  for (int i = 0; i < kMaxTangents; ++i) r.d[i] = deriv * a.d[i];
  return r;
}

using Form1 = std::array<cplx, kMaxTangents>;

constexpr cplx I{0.0, 1.0};

// dg/g along each tangent
Form1 dlog(const Jet& g) {
  if (g.v == 0.0) throw DomainError("function vanishes at the evaluation point");
  Form1 w;
  for (int i = 0; i < kMaxTangents; ++i) w[i] = g.d[i] / g.v;
  return w;
}

Form1 re_part(const Form1& w) {
  Form1 r;
  for (int i = 0; i < kMaxTangents; ++i) r[i] = w[i].real();
  return r;
}

Form1 i_im_part(const Form1& w) {
  Form1 r;
  for (int i = 0; i < kMaxTangents; ++i) r[i] = I * w[i].imag();
  return r;
}

Form1 scaled(const Form1& w, cplx c) {
  Form1 r;
  for (int i = 0; i < kMaxTangents; ++i) r[i] = c * w[i];
  return r;
}

Form1 conj(const Form1& w) {
  Form1 r;
  for (int i = 0; i < kMaxTangents; ++i) r[i] = std::conj(w[i]);
  return r;
}

// (α₁∧…∧α_k)(v₁,…,v_k) = det[αᵢ(v_j)]
cplx wedge_value(std::span<const Form1> forms) {
  switch (forms.size()) {
    case 0:
      return 1.0;
    case 1:
      return forms[0][0];
    case 2:
      return forms[0][0] * forms[1][1] - forms[0][1] * forms[1][0];
    case 3: {
      const auto& a = forms[0];
      const auto& b = forms[1];
      const auto& c = forms[2];
      return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
             a[2] * (b[0] * c[1] - b[1] * c[0]);
    }
    default:
      throw InputError("forms of degree above 3 are not supported");
  }
}

int permutation_sign(const std::vector<int>& p) {
  int inv = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return inv % 2 ? -1 : 1;
}

template <class F>
void for_each_permutation(int n, F&& f) {
  std::vector<int> p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    f(p, permutation_sign(p));
  } while (std::next_permutation(p.begin(), p.end()));
}

struct LogData {
  double log_abs;
  Form1 dlog_abs;
  Form1 di_arg;
  Form1 del;
  Form1 delbar;
};

LogData log_data(const Jet& g) {
  Form1 w = dlog(g);
  return {std::log(std::abs(g.v)), re_part(w), i_im_part(w), scaled(w, 0.5), scaled(conj(w), 0.5)};
}

// Σ_σ sgn(σ) G(g_σ) for G(g₁…g_m) = log|g₁|^{use_log} dlog|g_{a}|… ∧ di arg g_{b}…
// with `n_dlog` dlog-factors after the optional log factor.
template <class Extra>
cplx alt_plus(std::span<const LogData> g, bool use_log, int n_dlog, Extra&& extra) {
  const int m = static_cast<int>(g.size());
  cplx total = 0;
  std::vector<Form1> forms;
  for_each_permutation(m, [&](const std::vector<int>& p, int sign) {
    forms.clear();
    extra(forms);
    double scalar = 1.0;
    int pos = 0;
    if (use_log) scalar = g[static_cast<size_t>(p[pos++])].log_abs;
    for (int k = 0; k < n_dlog; ++k) forms.push_back(g[static_cast<size_t>(p[pos++])].dlog_abs);
    while (pos < m) forms.push_back(g[static_cast<size_t>(p[pos++])].di_arg);
    total += static_cast<double>(sign) * scalar * wedge_value(forms);
  });
  return total;
}

}  // namespace

Jet exp(const Jet& a) {
  cplx e = std::exp(a.v);
  return chain(a, e, e);
}
Jet log(const Jet& a) {
  if (a.v == 0.0) throw DomainError("log of zero");
  return chain(a, std::log(a.v), 1.0 / a.v);
}
Jet sqrt(const Jet& a) {
  cplx s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s);
}
Jet cos(const Jet& a) { return chain(a, std::cos(a.v), -std::sin(a.v)); }
Jet sin(const Jet& a) { return chain(a, std::sin(a.v), std::cos(a.v)); }
Jet acos(const Jet& a) { return chain(a, std::acos(a.v), -1.0 / std::sqrt(1.0 - a.v * a.v)); }
Jet pow(const Jet& a, int n) {
  if (n == 0) return Jet(1.0);
  return chain(a, std::pow(a.v, n), static_cast<double>(n) * std::pow(a.v, n - 1));
}
Jet polar(const Jet& r, const Jet& theta) { return r * exp(theta * Jet(I)); }

Parametrization::Parametrization(int ambient_dim, int param_dim, Map map)
    : n_(ambient_dim), k_(param_dim), map_(std::move(map)) {
  if (k_ < 0 || k_ > kMaxTangents) throw InputError("parametrization dimension must be at most 3");
}

std::vector<Jet> Parametrization::evaluate(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != k_) throw InputError("parameter count mismatch");
  std::vector<Jet> seeds;
  for (int i = 0; i < k_; ++i) seeds.push_back(Jet::variable(u[static_cast<size_t>(i)], i));
  std::vector<Jet> out = map_(seeds);
  if (static_cast<int>(out.size()) != n_) throw InputError("parametrization returned the wrong dimension");
  return out;
}

double factorial(int n) {
  double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double c_coefficient(int j, int n) { return 1.0 / (factorial(2 * j + 1) * factorial(n - 2 * j - 1)); }

cplx eta_form(std::span<const Jet> x) {
  const int n = static_cast<int>(x.size());
  if (n < 2 || n > 4) throw InputError("eta_form supports 2 <= n <= 4");
  std::vector<LogData> e;
  for (const auto& xi : x) e.push_back(log_data(xi));
  cplx total = 0;
  std::vector<Form1> forms;
  for_each_permutation(n, [&](const std::vector<int>& p, int sign) {
    for (int j = 1; j <= n; ++j) {
      forms.clear();
      for (int q = 1; q < n; ++q) {
        const LogData& d = e[static_cast<size_t>(p[static_cast<size_t>(q)])];
        forms.push_back(q < j ? d.delbar : d.del);
      }
      const double s = ((j - 1) % 2 ? -1.0 : 1.0) * sign;
      total += s * e[static_cast<size_t>(p[0])].log_abs * wedge_value(forms);
    }
  });
  return std::pow(2.0, n - 1) / factorial(n) * total;
}

cplx rnn_form(std::span<const Jet> g) {
  const int n = static_cast<int>(g.size());
  if (n < 2 || n > 4) throw InputError("rnn_form supports 2 <= n <= 4");
  std::vector<LogData> e;
  for (const auto& gi : g) e.push_back(log_data(gi));
  cplx total = 0;
  for (int j = 0; j <= (n - 1) / 2; ++j)
    total += c_coefficient(j, n) * alt_plus(e, true, 2 * j, [](std::vector<Form1>&) {});
  return -total;
}

cplx rho_form(const Jet& f, std::span<const Jet> g) {
  const int m = static_cast<int>(g.size());
  const int n = m + 2;
  if (m > kMaxTangents) throw InputError("rho_form supports n <= 5");
  if (f.v == 0.0 || f.v == 1.0) throw DomainError("Steinberg degeneracy: f is 0 or 1 at the evaluation point");
  std::vector<LogData> e;
  for (const auto& gi : g) e.push_back(log_data(gi));

  const double D = numerics::bloch_wigner(f.v);
  cplx d_term = 0;
  for (int p = 0; 2 * p <= m; ++p)
    d_term += c_coefficient(p, n - 1) * alt_plus(e, false, 2 * p, [](std::vector<Form1>&) {});
  cplx total = I * D * d_term;

  const Jet one_minus = Jet(1.0) - f;
  const LogData lf = log_data(f), l1 = log_data(one_minus);
  Form1 theta;
  for (int i = 0; i < kMaxTangents; ++i) theta[i] = l1.log_abs * lf.dlog_abs[i] - lf.log_abs * l1.dlog_abs[i];
  for (int mm = 1; mm <= (n - 1) / 2; ++mm) {
    const double c = c_coefficient(mm - 1, n - 2) / (2 * mm + 1);
    total += c * alt_plus(e, true, 2 * mm - 2, [&](std::vector<Form1>& forms) { forms.push_back(theta); });
  }
  return total;
}

std::vector<Jet> basis_jets(const symbolic::MultiplicativeBasis& basis, std::span<const Jet> coords) {
  std::vector<Jet> out;
  out.reserve(basis.size());
  for (const auto& b : basis.elements()) out.push_back(b.evaluate<Jet>(coords));
  return out;
}

Jet element_jet(const symbolic::FactoredElement& f, std::span<const Jet> basis_values) {
  Jet r(f.constant.get_d());
  for (const auto& [i, e] : f.exponents) {
    const Jet& b = basis_values[static_cast<size_t>(i)];
    if (e > 0)
      for (int k = 0; k < e; ++k) r *= b;
    else
      for (int k = 0; k < -e; ++k) r /= b;
  }
  return r;
}

Jet generator_jet(const symbolic::Generator& g, std::span<const Jet> basis_values) {
  if (g.kind == symbolic::Generator::Kind::prime) return Jet(static_cast<double>(g.index));
  return basis_values[static_cast<size_t>(g.index)];
}

cplx rho_xi(const symbolic::B2WedgeElement& xi, std::span<const Jet> basis_values) {
  cplx total = 0;
  std::vector<Jet> gs;
  for (const auto& [key, c] : xi.terms()) {
    Jet f = element_jet(key.first, basis_values);
    gs.clear();
    for (const auto& g : key.second) gs.push_back(generator_jet(g, basis_values));
    total += c.get_d() * rho_form(f, gs);
  }
  return total;
}

}  // namespace reglab::forms
