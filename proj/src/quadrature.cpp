#include "ddlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace ddlab {

const std::vector<std::pair<double, double>>& gauss_legendre(int order) {
  static std::map<int, std::vector<std::pair<double, double>>> cache;
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  std::vector<std::pair<double, double>> nw(order);
  const double pi = 3.141592653589793238462643;
  for (int i = 0; i < order; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double p0 = 0, p1 = 0;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      double dp = order * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    p0 = 1.0;
    p1 = 0.0;
    for (int j = 0; j < order; ++j) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
    }
    double dp = order * (x * p0 - p1) / (x * x - 1.0);
    nw[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  std::sort(nw.begin(), nw.end());
  return cache.emplace(order, std::move(nw)).first->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int order) {
  const auto& nw = gauss_legendre(order);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (const auto& [x, w] : nw) s += w * f(mid + half * x);
  return s * half;
}

namespace {
struct Panel {
  double lo, hi, value, err;
};

Panel eval_panel(const std::function<double(double)>& f, double lo, double hi) {
  double coarse = integrate_gl(f, lo, hi, 12);
  double fine = integrate_gl(f, lo, hi, 24);
  return {lo, hi, fine, std::abs(fine - coarse)};
}
}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double abs_tol, double rel_tol,
                              int max_panels,
                              const std::vector<double>& breakpoints) {
  QuadResult res;
  if (!(a < b)) return res;

  std::vector<double> edges = {a, b};
  for (double x : breakpoints)
    if (x > a && x < b) edges.push_back(x);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  // ordered by (err desc, lo asc) for a deterministic refinement schedule
  auto cmp = [](const Panel& p, const Panel& q) {
    if (p.err != q.err) return p.err > q.err;
    return p.lo < q.lo;
  };
  std::multiset<Panel, decltype(cmp)> panels(cmp);
  for (size_t i = 0; i + 1 < edges.size(); ++i)
    panels.insert(eval_panel(f, edges[i], edges[i + 1]));
  res.n_eval = static_cast<long>(36 * panels.size());

  double total = 0.0, err = 0.0;
  for (const auto& p : panels) {
    total += p.value;
    err += p.err;
  }
  while (static_cast<int>(panels.size()) < max_panels) {
    double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (err <= tol) break;
    Panel worst = *panels.begin();
    panels.erase(panels.begin());
    double mid = 0.5 * (worst.lo + worst.hi);
    if (!(worst.lo < mid && mid < worst.hi)) {
      panels.insert(worst);  // interval at fp resolution, cannot split
      break;
    }
    Panel left = eval_panel(f, worst.lo, mid);
    Panel right = eval_panel(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    panels.insert(left);
    panels.insert(right);
    res.n_eval += 72;
  }

  // accumulate in position order, independent of refinement history
  std::vector<Panel> ordered(panels.begin(), panels.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const Panel& p, const Panel& q) { return p.lo < q.lo; });
  total = 0.0;
  err = 0.0;
  const Panel* worst = nullptr;
  for (const auto& p : ordered) {
    total += p.value;
    err += p.err;
    if (!worst || p.err > worst->err) worst = &p;
  }
  res.value = total;
  res.error_estimate = err;
  res.converged = err <= std::max(abs_tol, rel_tol * std::abs(total));
  if (worst) {
    res.worst_lo = worst->lo;
    res.worst_hi = worst->hi;
  }
  return res;
}

}  // namespace ddlab
