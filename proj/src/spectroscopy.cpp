#include "ddlab/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "ddlab/bessel.hpp"
#include "ddlab/coherence.hpp"
#include "ddlab/csv.hpp"
#include "ddlab/filter.hpp"
#include "ddlab/lsq.hpp"
#include "ddlab/sequence.hpp"

namespace ddlab {

namespace {
constexpr double kPi = 3.141592653589793238462643;

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}
}  // namespace

std::vector<ContrastRecord> read_scan_csv(const std::string& path) {
  CsvTable t = read_csv(path);
  int cn = t.column("n_pulses"), ct = t.column("tau_s"), cT = t.column("total_time_s");
  int cc = t.column("contrast"), cs = t.column("stderr");
  std::vector<ContrastRecord> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    ContrastRecord r;
    r.n_pulses = static_cast<int>(std::lround(row[cn]));
    r.tau_s = row[ct];
    r.total_time_s = row[cT];
    r.contrast = row[cc];
    r.stderr_ = row[cs];
    if (r.stderr_ < 0) throw std::runtime_error(path + ": stderr must be >= 0");
    out.push_back(r);
  }
  return out;
}

void write_scan_csv(const std::string& path, const std::vector<ContrastRecord>& records,
                    const std::vector<std::string>& header_comments,
                    const std::vector<double>* analytic_column) {
  if (analytic_column && analytic_column->size() != records.size())
    throw std::invalid_argument("analytic column size mismatch");
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& c : header_comments) std::fprintf(f, "# %s\n", c.c_str());
  std::fprintf(f, "n_pulses,tau_s,total_time_s,contrast,stderr%s\n",
               analytic_column ? ",contrast_analytic" : "");
  for (size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    std::fprintf(f, "%d,%.12g,%.12g,%.12g,%.12g", r.n_pulses, r.tau_s, r.total_time_s,
                 r.contrast, r.stderr_);
    if (analytic_column) std::fprintf(f, ",%.12g", (*analytic_column)[i]);
    std::fputc('\n', f);
  }
  std::fclose(f);
}

ContrastRecord normalize_contrast(const ContrastRecord& raw, double gate_reference,
                                  double gate_reference_stderr) {
  if (!(gate_reference > 0))
    throw std::invalid_argument("gate reference contrast must be positive");
  ContrastRecord out = raw;
  out.contrast = raw.contrast / gate_reference;
  double a = raw.stderr_ / gate_reference;
  double b = raw.contrast * gate_reference_stderr / (gate_reference * gate_reference);
  out.stderr_ = std::hypot(a, b);
  return out;
}

LineFit fit_discrete_lines(const std::vector<ContrastRecord>& data,
                           const std::vector<double>& candidate_freqs_hz) {
  const int K = static_cast<int>(candidate_freqs_hz.size());
  const int n = static_cast<int>(data.size());
  if (K < 1) throw std::invalid_argument("need at least one candidate frequency");
  if (n < 3 * K) throw std::invalid_argument("need at least 3 records per candidate");
  for (double f : candidate_freqs_hz)
    if (!(f > 0)) throw std::invalid_argument("candidate frequencies must be positive");
  for (const auto& r : data)
    if (r.n_pulses < 1) throw std::invalid_argument("fit records must have n_pulses >= 1");

  // |y(omega_k)| for every record, fixed through the fit
  Eigen::MatrixXd g(n, K);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < K; ++k)
      g(r, k) = std::sqrt(filter_y_abs_sq_uniform(data[r].n_pulses, data[r].tau_s,
                                                  2 * kPi * candidate_freqs_hz[k]));

  LineFit fit;
  std::vector<double> positive;
  for (const auto& r : data)
    if (r.stderr_ > 0) positive.push_back(r.stderr_);
  double median = 1.0;
  if (!positive.empty()) {
    std::nth_element(positive.begin(), positive.begin() + positive.size() / 2,
                     positive.end());
    median = positive[positive.size() / 2];
  }
  bool weighted = !positive.empty();
  Eigen::VectorXd sqrt_w(n);
  for (int r = 0; r < n; ++r)
    sqrt_w[r] = 1.0 / (data[r].stderr_ > 0 ? data[r].stderr_ : median);

  Eigen::VectorXd p0(K), lo(K), hi(K);
  for (int k = 0; k < K; ++k) {
    int best = 0;
    for (int r = 1; r < n; ++r)
      if (g(r, k) > g(best, k)) best = r;
    if (g(best, k) < 1e-9) {
      fit.warnings.push_back(fmt("candidate %.6g Hz is invisible to every record",
                                 candidate_freqs_hz[k]));
      p0[k] = 0.0;
    } else {
      double c = std::min(std::max(data[best].contrast, 0.0), 1.0);
      p0[k] = bessel_j0_inverse(c) / g(best, k);
    }
    lo[k] = 0.0;
    hi[k] = 1e9;
  }

  auto residual = [&](const Eigen::VectorXd& p, Eigen::VectorXd& res,
                      Eigen::MatrixXd* J) {
    res.resize(n);
    if (J) J->resize(n, K);
    for (int r = 0; r < n; ++r) {
      double model = 1.0;
      for (int k = 0; k < K; ++k) model *= bessel_j0(p[k] * g(r, k));
      res[r] = (model - data[r].contrast) * sqrt_w[r];
      if (J) {
        for (int k = 0; k < K; ++k) {
          double partial = -bessel_j1(p[k] * g(r, k)) * g(r, k);
          for (int j = 0; j < K; ++j)
            if (j != k) partial *= bessel_j0(p[j] * g(r, j));
          (*J)(r, k) = partial * sqrt_w[r];
        }
      }
    }
  };

  LmResult lm = lm_fit(residual, p0, lo, hi);
  if (!lm.converged) {
    std::string best = "best beta_rad_s =";
    for (int k = 0; k < K; ++k) best += fmt(" %.6g", lm.params[k]);
    throw std::runtime_error("line fit did not converge (" + lm.message + "); " + best +
                             fmt(", residual norm %.6g", std::sqrt(lm.cost)));
  }

  double scale = 1.0;
  if (!weighted && n > K) scale = lm.cost / (n - K);
  for (int k = 0; k < K; ++k) {
    fit.lines.push_back({2 * kPi * candidate_freqs_hz[k], lm.params[k]});
    fit.uncertainty.push_back(std::sqrt(std::max(0.0, lm.covariance(k, k) * scale)));
  }
  fit.residual_norm = std::sqrt(lm.cost);
  return fit;
}

namespace {

struct BandAccum {
  double omega_c = 0.0;
  double t_max = 0.0;
  double num = 0.0, den = 0.0;  // inverse-variance accumulation
  std::vector<double> values;   // fallback when variances are absent
  int n_zero_sigma = 0;
};

}  // namespace

SpectrumEstimate reconstruct_spectrum(const std::vector<ContrastRecord>& curves) {
  SpectrumEstimate est;
  std::map<int, std::vector<ContrastRecord>> by_n;
  for (const auto& r : curves) by_n[r.n_pulses].push_back(r);
  if (by_n.empty()) throw std::invalid_argument("no records");

  std::map<long long, BandAccum> bands;  // keyed by round(omega_c * 1e9)
  for (auto& [n, recs] : by_n) {
    if (n < 1) {
      est.warnings.push_back(fmt("curve with n_pulses=%g rejected: not a pulse grid",
                                 static_cast<double>(n)));
      continue;
    }
    bool ok = true;
    for (const auto& r : recs) {
      if (!(r.tau_s > 0)) ok = false;
      if (std::abs(r.total_time_s - static_cast<double>(r.n_pulses) * r.tau_s) >
          1e-9 * std::max(1.0, r.total_time_s))
        ok = false;
    }
    if (!ok) {
      est.warnings.push_back(
          fmt("curve n_pulses=%g rejected: tau inconsistent with the pulse grid",
              static_cast<double>(n)));
      continue;
    }
    std::vector<ContrastRecord> usable;
    for (const auto& r : recs) {
      if (r.contrast <= 0.0) {
        est.warnings.push_back(fmt(
            "record n_pulses=%g, T=%.6g s skipped: contrast %.6g <= 0",
            static_cast<double>(n), r.total_time_s, r.contrast));
        continue;
      }
      usable.push_back(r);
    }
    if (usable.size() < 4) {
      est.warnings.push_back(fmt("curve n_pulses=%g rejected: fewer than 4 usable points",
                                 static_cast<double>(n)));
      continue;
    }
    for (const auto& r : usable) {
      double omega_c = kPi / r.tau_s;
      long long key = std::llround(omega_c * 1e9);
      BandAccum& acc = bands[key];
      acc.omega_c = omega_c;
      double c = std::min(r.contrast, 1.0);
      bool clipped = c < 1e-3;
      if (clipped) c = 1e-3;
      double chi = -std::log(c);
      double sigma_chi = r.stderr_ / c;
      if (clipped) sigma_chi = std::max(sigma_chi, 1.0);
      double S = chi / (2 * r.total_time_s);
      double sigma_S = sigma_chi / (2 * r.total_time_s);
      acc.t_max = std::max(acc.t_max, r.total_time_s);
      if (sigma_S > 0) {
        double w = 1.0 / (sigma_S * sigma_S);
        acc.num += w * S;
        acc.den += w;
      } else {
        acc.values.push_back(S);
        ++acc.n_zero_sigma;
      }
    }
  }
  if (bands.empty()) throw std::runtime_error("no usable curves to reconstruct from");

  for (auto& [key, acc] : bands) {
    SpectrumBand b;
    b.omega_c = acc.omega_c;
    b.bandwidth = 4 * kPi / acc.t_max;
    if (acc.n_zero_sigma > 0) {
      // exact records dominate: plain mean of them, zero variance
      double s = 0.0;
      for (double v : acc.values) s += v;
      b.S = s / acc.n_zero_sigma;
      b.uncertainty = 0.0;
    } else {
      b.S = acc.num / acc.den;
      b.uncertainty = std::sqrt(1.0 / acc.den);
    }
    est.bands.push_back(b);
  }
  std::sort(est.bands.begin(), est.bands.end(),
            [](const SpectrumBand& a, const SpectrumBand& b) { return a.omega_c < b.omega_c; });
  return est;
}

void write_estimate_csv(const std::string& path, const SpectrumEstimate& est,
                        const std::vector<std::string>& header_comments) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& c : header_comments) std::fprintf(f, "# %s\n", c.c_str());
  for (const auto& w : est.warnings) std::fprintf(f, "# warning: %s\n", w.c_str());
  std::fprintf(f, "omega_c_rad_s,bandwidth_rad_s,S_beta,uncertainty\n");
  for (const auto& b : est.bands)
    std::fprintf(f, "%.12g,%.12g,%.12g,%.12g\n", b.omega_c, b.bandwidth, b.S,
                 b.uncertainty);
  std::fclose(f);
}

SpectrumEstimate read_estimate_csv(const std::string& path) {
  CsvTable t = read_csv(path);
  int cw = t.column("omega_c_rad_s"), cb = t.column("bandwidth_rad_s");
  int cs = t.column("S_beta"), cu = t.column("uncertainty");
  SpectrumEstimate est;
  for (const auto& row : t.rows)
    est.bands.push_back({row[cw], row[cb], row[cs], row[cu]});
  return est;
}

ContinuousSpectrum to_spectrum(const SpectrumEstimate& est) {
  if (est.bands.empty()) return {};
  std::vector<double> w, S;
  for (const auto& b : est.bands) {
    w.push_back(b.omega_c);
    S.push_back(std::max(b.S, 0.0));
  }
  if (w.size() == 1) {
    double c = w[0], v = S[0], half = est.bands[0].bandwidth / 2;
    return ContinuousSpectrum({std::max(c - half, c * 0.5), c + half}, {v, v});
  }
  return ContinuousSpectrum(std::move(w), std::move(S));
}

IntervalResult optimize_interval(const ContinuousSpectrum& spectrum,
                                 const std::vector<double>& line_freqs_hz,
                                 double tau_min_s, double tau_max_s,
                                 double per_pulse_error, double target_T_s,
                                 double grid_step_s, double notch_rel_threshold) {
  if (!(tau_min_s > 0) || !(tau_max_s >= tau_min_s))
    throw std::invalid_argument("need 0 < tau_min <= tau_max");
  if (!(target_T_s > tau_max_s))
    throw std::invalid_argument("target total time must exceed tau_max");
  if (!(grid_step_s > 0) || !(per_pulse_error >= 0) || !(notch_rel_threshold > 0))
    throw std::invalid_argument("bad optimizer parameters");
  for (double f : line_freqs_hz)
    if (!(f > 0)) throw std::invalid_argument("line frequencies must be positive");

  IntervalResult result;
  int n_grid = static_cast<int>(std::floor((tau_max_s - tau_min_s) / grid_step_s + 0.5)) + 1;
  double prev_tau = -1.0;
  for (int i = 0; i < n_grid; ++i) {
    double tau = tau_min_s + i * grid_step_s;
    tau = std::nearbyint(tau * 1e9) / 1e9;  // pulse-time grid
    if (tau == prev_tau || tau > tau_max_s + 1e-12) continue;
    prev_tau = tau;

    IntervalScore sc;
    sc.tau_s = tau;
    sc.n_pulses = 20 * std::max(1, static_cast<int>(std::lround(target_T_s / (20 * tau))));
    double T = sc.n_pulses * tau;
    double peak = 2 * T / kPi;
    sc.worst_notch_rel = 0.0;
    for (double f : line_freqs_hz) {
      double rel =
          filter_y_abs_sq_uniform(sc.n_pulses, tau, 2 * kPi * f) / (peak * peak);
      sc.worst_notch_rel = std::max(sc.worst_notch_rel, rel);
    }
    sc.feasible = sc.worst_notch_rel <= notch_rel_threshold;
    if (!spectrum.empty()) {
      PulseSequence seq = make_cpmg(sc.n_pulses, tau);
      sc.chi = chi_integral(seq, spectrum).chi;
    }
    sc.infidelity = 1.0 - std::exp(-sc.chi);
    sc.pulse_cost = per_pulse_error * target_T_s / tau;
    sc.score = sc.infidelity + sc.pulse_cost;
    result.table.push_back(sc);
  }
  if (result.table.empty()) throw std::invalid_argument("empty tau grid");

  const IntervalScore* best = nullptr;
  for (const auto& sc : result.table)
    if (sc.feasible && (!best || sc.score <= best->score)) best = &sc;
  if (!best) {
    const IntervalScore* least_bad = &result.table.front();
    for (const auto& sc : result.table)
      if (sc.worst_notch_rel < least_bad->worst_notch_rel) least_bad = &sc;
    throw std::runtime_error(fmt(
        "no feasible interval: notch constraint (threshold %.3g) fails on the whole "
        "grid; closest is |y|^2 rel %.3g at tau = %.6g s",
        notch_rel_threshold, least_bad->worst_notch_rel, least_bad->tau_s));
  }
  result.tau_opt_s = best->tau_s;
  return result;
}

IntervalResult optimize_interval(const SpectrumEstimate& estimate,
                                 const std::vector<double>& line_freqs_hz,
                                 double tau_min_s, double tau_max_s,
                                 double per_pulse_error, double target_T_s,
                                 double grid_step_s, double notch_rel_threshold) {
  return optimize_interval(to_spectrum(estimate), line_freqs_hz, tau_min_s, tau_max_s,
                           per_pulse_error, target_T_s, grid_step_s,
                           notch_rel_threshold);
}

T2Fit fit_coherence_time(const std::vector<std::pair<double, double>>& data) {
  const int n = static_cast<int>(data.size());
  if (n < 3) throw std::invalid_argument("need at least 3 points");
  for (int i = 1; i < n; ++i)
    if (!(data[i].first > data[i - 1].first))
      throw std::invalid_argument("times must be strictly increasing");

  double c0 = data.front().second, c1 = data.back().second;
  double k0 = 0.0;
  if (c0 > 0 && c1 > 0 && c1 < c0)
    k0 = std::log(c0 / c1) / (data.back().first - data.front().first);
  Eigen::VectorXd p0(2), lo(2), hi(2);
  p0 << std::min(std::max(c0, 1e-6), 1.0), k0;
  lo << 1e-12, 0.0;
  hi << 1.0, 1e12;

  auto residual = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r, Eigen::MatrixXd* J) {
    r.resize(n);
    if (J) J->resize(n, 2);
    for (int i = 0; i < n; ++i) {
      double e = std::exp(-p[1] * data[i].first);
      r[i] = p[0] * e - data[i].second;
      if (J) {
        (*J)(i, 0) = e;
        (*J)(i, 1) = -p[0] * data[i].first * e;
      }
    }
  };
  LmResult lm = lm_fit(residual, p0, lo, hi);
  if (!lm.converged)
    throw std::runtime_error("decay fit did not converge: " + lm.message);

  double scale = n > 2 ? lm.cost / (n - 2) : 0.0;
  double A = lm.params[0], k = lm.params[1];
  double sigma_a = std::sqrt(std::max(0.0, lm.covariance(0, 0) * scale));
  double sigma_k = std::sqrt(std::max(0.0, lm.covariance(1, 1) * scale));

  T2Fit fit;
  fit.amplitude = A;
  fit.amplitude_uncertainty = sigma_a;
  fit.residual_norm = std::sqrt(lm.cost);
  if (k < 2 * sigma_k || k == 0.0) {
    fit.no_decay = true;
    double bound = k + 2 * sigma_k;
    fit.t2_lower_bound_s = bound > 0 ? 1.0 / bound : INFINITY;
    fit.t2_s = k > 0 ? 1.0 / k : INFINITY;
    fit.uncertainty_s = INFINITY;
    fit.message = fmt("no measurable decay; T2 >= %.6g s", fit.t2_lower_bound_s);
  } else {
    fit.t2_s = 1.0 / k;
    fit.uncertainty_s = sigma_k / (k * k);
  }
  return fit;
}

}  // namespace ddlab
