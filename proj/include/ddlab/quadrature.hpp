#pragma once
#include <functional>
#include <string>
#include <vector>

namespace ddlab {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long n_eval = 0;
  bool converged = true;
  // worst unconverged panel, for error reporting
  double worst_lo = 0.0, worst_hi = 0.0;
};

// Gauss-Legendre nodes/weights on [-1,1], computed once per order by Newton
// iteration (deterministic to the last bit).
const std::vector<std::pair<double, double>>& gauss_legendre(int order);

// Fixed-order Gauss-Legendre on [a,b].
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int order = 24);

// Adaptive bisection with embedded GL12/GL24 error estimate. Splits the
// worst panel (ties broken by left endpoint) until every panel satisfies
// err <= max(abs_tol, rel_tol*|total|)/n_panels or the budget is exhausted;
// accumulation order is by ascending panel position, so results do not
// depend on the refinement schedule.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double abs_tol = 1e-12,
                              double rel_tol = 1e-9, int max_panels = 100000,
                              const std::vector<double>& breakpoints = {});

}  // namespace ddlab
