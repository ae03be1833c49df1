#include "integrate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include <boost/random/sobol.hpp>
#include <boost/random/uniform_01.hpp>

namespace reglab::quadrature::detail {

namespace {

constexpr double kGKNodes[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kKWeights[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                 0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                 0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kGWeights[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                 0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GLRule {
  std::vector<double> x, w;
};

GLRule legendre_rule(int m) {
  GLRule r;
  r.x.resize(static_cast<size_t>(m));
  r.w.resize(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[static_cast<size_t>(i)] = x;
    r.w[static_cast<size_t>(i)] = 2 / ((1 - x * x) * dp * dp);
  }
  return r;
}

const GLRule& cached_rule(int m) {
  static std::mutex mu;
  static std::map<int, GLRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, legendre_rule(m)).first;
  return it->second;
}

// Values at a list of nodes, evaluated concurrently when allowed.
std::vector<Estimate> sample(const Integrand1D& f, const std::vector<double>& nodes, int threads) {
  std::vector<Estimate> out(nodes.size());
  parallel_for(static_cast<int>(nodes.size()), threads,
               [&](int i) { out[static_cast<size_t>(i)] = f(nodes[static_cast<size_t>(i)]); });
  return out;
}

struct Sum {
  double value = 0, aux = 0, inner_error = 0;
  long evals = 0;
};

Sum weighted(const std::vector<Estimate>& v, std::span<const double> w, size_t offset, double scale) {
  Sum s;
  for (size_t i = 0; i < w.size(); ++i) {
    const Estimate& e = v[offset + i];
    s.value += w[i] * e.value;
    s.aux += w[i] * e.aux;
    s.inner_error += w[i] * e.error;
  }
  s.value *= scale;
  s.aux *= scale;
  s.inner_error *= scale;
  for (size_t i = 0; i < w.size(); ++i) s.evals += std::max(1L, v[offset + i].evals);
  return s;
}

struct Panel {
  double a, b;
  int depth;
  double value, aux, error;
  long evals;
  Sum left, right;  // Gauss–Legendre halves, reused as the coarse estimate of the children
};

class Adaptive {
 public:
  Adaptive(const Integrand1D& f, const QuadratureConfig& cfg, int threads) : f_(f), cfg_(cfg), threads_(threads) {}

  Panel gk(double a, double b, int depth) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::vector<double> nodes;
    for (int i = 0; i < 7; ++i) {
      nodes.push_back(c - h * kGKNodes[i]);
      nodes.push_back(c + h * kGKNodes[i]);
    }
    nodes.push_back(c);
    auto v = sample(f_, nodes, threads_);
    double k = 0, g = 0, aux = 0, inner = 0;
    long evals = 0;
    for (int i = 0; i < 7; ++i) {
      const Estimate& lo = v[static_cast<size_t>(2 * i)];
      const Estimate& hi = v[static_cast<size_t>(2 * i + 1)];
      k += kKWeights[i] * (lo.value + hi.value);
      aux += kKWeights[i] * (lo.aux + hi.aux);
      inner += kKWeights[i] * (lo.error + hi.error);
      if (i % 2 == 1) g += kGWeights[i / 2] * (lo.value + hi.value);
    }
    k += kKWeights[7] * v[14].value;
    aux += kKWeights[7] * v[14].aux;
    inner += kKWeights[7] * v[14].error;
    g += kGWeights[3] * v[14].value;
    for (const auto& e : v) evals += std::max(1L, e.evals);
    return {a, b, depth, h * k, h * aux, h * (std::abs(k - g) + inner), evals, {}, {}};
  }

  Sum gl(double a, double b) {
    const GLRule& r = cached_rule(cfg_.points);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::vector<double> nodes;
    for (double x : r.x) nodes.push_back(c + h * x);
    auto v = sample(f_, nodes, threads_);
    return weighted(v, r.w, 0, h);
  }

  Panel gl_panel(double a, double b, int depth, const Sum& coarse) {
    const double c = 0.5 * (a + b);
    Panel p{a, b, depth, 0, 0, 0, 0, gl(a, c), gl(c, b)};
    finish_gl(p, coarse);
    return p;
  }

  static void finish_gl(Panel& p, const Sum& coarse) {
    p.value = p.left.value + p.right.value;
    p.aux = p.left.aux + p.right.aux;
    p.error = std::abs(p.value - coarse.value) + p.left.inner_error + p.right.inner_error;
    p.evals = p.left.evals + p.right.evals;
  }

  Panel first(double a, double b) {
    if (cfg_.rule == Rule::adaptive_gk) return gk(a, b, 0);
    Sum coarse = gl(a, b);
    Panel p = gl_panel(a, b, 0, coarse);
    p.evals += coarse.evals;
    return p;
  }

  std::pair<Panel, Panel> split(const Panel& p) {
    const double c = 0.5 * (p.a + p.b);
    if (cfg_.rule == Rule::adaptive_gk) return {gk(p.a, c, p.depth + 1), gk(c, p.b, p.depth + 1)};
    return {gl_panel(p.a, c, p.depth + 1, p.left), gl_panel(c, p.b, p.depth + 1, p.right)};
  }

 private:
  const Integrand1D& f_;
  const QuadratureConfig& cfg_;
  int threads_;
};

constexpr size_t kMaxPanels = 1 << 15;

}  // namespace

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0;
    for (double x : v) s += x;
    return s;
  }
  const size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(threads, n); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

Estimate integrate_1d(const Integrand1D& f, double a, double b, double tol, const QuadratureConfig& cfg, int threads,
                      int initial_panels) {
  Adaptive ad(f, cfg, threads);
  auto cmp = [](const Panel& x, const Panel& y) { return x.error < y.error; };
  std::vector<Panel> heap, done;
  long evals = 0;
  double total_error = 0;
  for (int i = 0; i < initial_panels; ++i) {
    Panel p = ad.first(a + (b - a) * i / initial_panels, a + (b - a) * (i + 1) / initial_panels);
    evals += p.evals;
    total_error += p.error;
    heap.push_back(p);
  }
  std::make_heap(heap.begin(), heap.end(), cmp);
  while (total_error > tol && !heap.empty() && heap.size() + done.size() < kMaxPanels) {
    std::pop_heap(heap.begin(), heap.end(), cmp);
    Panel p = heap.back();
    heap.pop_back();
    if (p.depth >= cfg.depth) {
      done.push_back(p);
      continue;
    }
    auto [l, r] = ad.split(p);
    evals += l.evals + r.evals;
    total_error += l.error + r.error - p.error;
    heap.push_back(l);
    std::push_heap(heap.begin(), heap.end(), cmp);
    heap.push_back(r);
    std::push_heap(heap.begin(), heap.end(), cmp);
  }
  done.insert(done.end(), heap.begin(), heap.end());
  std::sort(done.begin(), done.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::vector<double> vals, auxs, errs;
  for (const auto& p : done) {
    vals.push_back(p.value);
    auxs.push_back(p.aux);
    errs.push_back(p.error);
  }
  return {pairwise_sum(vals), pairwise_sum(auxs), pairwise_sum(errs), evals};
}

namespace {

Estimate nested(const IntegrandND& f, std::span<const double> lo, std::span<const double> hi, double tol,
                const QuadratureConfig& cfg, std::vector<double> prefix) {
  const size_t dim = prefix.size();
  const size_t n = lo.size();
  const double len = hi[dim] - lo[dim];
  const int threads = dim == 0 ? cfg.threads : 1;
  if (dim + 1 == n) {
    return integrate_1d(
        [&, prefix](double x) {
          std::vector<double> pt = prefix;
          pt.push_back(x);
          return f(pt);
        },
        lo[dim], hi[dim], tol, cfg, threads);
  }
  const double inner_tol = 0.5 * tol / std::max(len, 1e-300);
  return integrate_1d(
      [&, prefix](double x) {
        std::vector<double> next = prefix;
        next.push_back(x);
        return nested(f, lo, hi, inner_tol, cfg, std::move(next));
      },
      lo[dim], hi[dim], 0.5 * tol, cfg, threads);
}

}  // namespace

Estimate integrate_box(const IntegrandND& f, std::span<const double> lo, std::span<const double> hi, double tol,
                       const QuadratureConfig& cfg) {
  if (lo.size() != hi.size() || lo.empty()) throw InputError("integration box needs matching, nonempty bounds");
  if (cfg.rule == Rule::qmc_sobol) return integrate_qmc(f, lo, hi, cfg);
  return nested(f, lo, hi, tol, cfg, {});
}

Estimate integrate_qmc(const IntegrandND& f, std::span<const double> lo, std::span<const double> hi,
                       const QuadratureConfig& cfg) {
  constexpr int kShifts = 8;
  const size_t d = lo.size();
  const long n = 1L << std::clamp(cfg.level, 4, 24);
  std::vector<std::vector<double>> base(static_cast<size_t>(n), std::vector<double>(d));
  boost::random::sobol gen(d);
  for (auto& p : base)
    for (auto& x : p) x = static_cast<double>(gen()) / (static_cast<double>(gen.max()) + 1.0);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double volume = 1;
  for (size_t i = 0; i < d; ++i) volume *= hi[i] - lo[i];

  std::vector<double> means, aux_means;
  for (int s = 0; s < kShifts; ++s) {
    std::vector<double> shift(d);
    for (auto& x : shift) x = u01(rng);
    std::vector<double> vals(static_cast<size_t>(n)), auxs(static_cast<size_t>(n));
    parallel_for(static_cast<int>(n), cfg.threads, [&](int i) {
      std::vector<double> pt(d);
      for (size_t k = 0; k < d; ++k) {
        double t = base[static_cast<size_t>(i)][k] + shift[k];
        t -= std::floor(t);
        pt[k] = lo[k] + (hi[k] - lo[k]) * t;
      }
      Estimate e = f(pt);
      vals[static_cast<size_t>(i)] = e.value;
      auxs[static_cast<size_t>(i)] = e.aux;
    });
    means.push_back(volume * pairwise_sum(vals) / static_cast<double>(n));
    aux_means.push_back(volume * pairwise_sum(auxs) / static_cast<double>(n));
  }
  const double mean = pairwise_sum(means) / kShifts;
  double var = 0;
  for (double m : means) var += (m - mean) * (m - mean);
  var /= kShifts - 1;
  return {mean, pairwise_sum(aux_means) / kShifts, 3 * std::sqrt(var / kShifts), n * kShifts};
}

}  // namespace reglab::quadrature::detail
