#include "ddlab/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ddlab/bessel.hpp"
#include "ddlab/filter.hpp"
#include "ddlab/quadrature.hpp"

namespace ddlab {

namespace {
constexpr double kPi = 3.141592653589793238462643;
}

double contrast_discrete(const PulseSequence& seq,
                         const std::vector<DiscreteLine>& lines) {
  double contrast = 1.0;
  for (const auto& line : lines) {
    if (!(line.omega > 0)) throw std::invalid_argument("line omega must be > 0");
    if (!(line.beta >= 0)) throw std::invalid_argument("line beta must be >= 0");
    double y_abs = std::sqrt(filter_y_abs_sq(seq, line.omega));
    contrast *= bessel_j0(line.beta * y_abs);
  }
  return contrast;
}

ChiResult chi_integral(const PulseSequence& seq, const ContinuousSpectrum& spectrum,
                       const ChiOptions& opt) {
  if (!(opt.abs_tol > 0) || !(opt.rel_tol > 0) || opt.max_panels < 1)
    throw std::invalid_argument("quadrature tolerances must be positive");
  ChiResult res;
  if (spectrum.empty()) return res;

  double T = seq.total_time();
  int n = seq.n_pulses();
  double cap = 200.0 * (n + 1) * kPi / T;
  double lo = spectrum.omega_min();
  double hi = std::min(spectrum.omega_max(), cap);
  res.omega_cut = hi;

  auto tau = uniform_interval(seq);
  auto integrand = [&](double w) {
    double y2 = tau ? filter_y_abs_sq_uniform(n, *tau, w) : filter_y_abs_sq(seq, w);
    return spectrum.value(w) * y2;
  };

  if (hi > lo) {
    std::vector<double> breaks;
    for (double w : spectrum.knots())
      if (w > lo && w < hi) breaks.push_back(w);
    int per_decade = 16;
    double decades = std::log10(hi / lo);
    int m = std::max(2, static_cast<int>(std::ceil(decades * per_decade)));
    for (int i = 1; i < m; ++i)
      breaks.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / m));
    QuadResult q = integrate_adaptive(integrand, lo, hi, opt.abs_tol, opt.rel_tol,
                                      opt.max_panels, breaks);
    if (!q.converged) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "chi quadrature did not converge within %d panels; worst "
                    "frequency region [%.6g, %.6g] rad/s",
                    opt.max_panels, q.worst_lo, q.worst_hi);
      throw std::runtime_error(msg);
    }
    res.chi = 2.0 / kPi * q.value;
    res.error_bound = 2.0 / kPi * q.error_estimate;
    res.n_eval = q.n_eval;
  }

  if (spectrum.omega_max() > cap) {
    // bound S on the truncated range by its values at/beyond the cutoff
    double s_sup = spectrum.value(cap);
    for (size_t i = 0; i < spectrum.knots().size(); ++i)
      if (spectrum.knots()[i] >= cap) s_sup = std::max(s_sup, spectrum.values()[i]);
    res.tail = 2.0 / kPi * s_sup * filter_tail_estimate(seq, cap);
    res.chi += res.tail;
    res.error_bound += res.tail;
  }
  return res;
}

double contrast_total(const PulseSequence& seq, const NoiseModel& model,
                      const ChiOptions& opt) {
  double c = contrast_discrete(seq, model.lines);
  if (!model.continuum.empty()) c *= std::exp(-chi_integral(seq, model.continuum, opt).chi);
  return c;
}

}  // namespace ddlab
