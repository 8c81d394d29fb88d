#include "ddlab/noise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ddlab/csv.hpp"

namespace ddlab {

namespace {
constexpr double kPi = 3.141592653589793238462643;
}

ContinuousSpectrum::ContinuousSpectrum(std::vector<double> omega,
                                       std::vector<double> S)
    : omega_(std::move(omega)), S_(std::move(S)) {
  if (omega_.size() != S_.size())
    throw std::invalid_argument("spectrum omega/S length mismatch");
  if (omega_.size() < 2)
    throw std::invalid_argument("spectrum needs at least two points");
  for (size_t i = 0; i < omega_.size(); ++i) {
    if (!(omega_[i] > 0)) throw std::invalid_argument("spectrum omega must be > 0");
    if (i > 0 && !(omega_[i] > omega_[i - 1]))
      throw std::invalid_argument("spectrum omega must be strictly increasing");
    if (!(S_[i] >= 0)) throw std::invalid_argument("spectrum S must be >= 0");
  }
}

double ContinuousSpectrum::value(double omega) const {
  if (omega_.empty() || omega < omega_.front() || omega > omega_.back())
    return 0.0;
  auto it = std::upper_bound(omega_.begin(), omega_.end(), omega);
  if (it == omega_.begin()) return S_.front();
  size_t hi = static_cast<size_t>(it - omega_.begin());
  if (hi == omega_.size()) return S_.back();
  size_t lo = hi - 1;
  double w0 = omega_[lo], w1 = omega_[hi], s0 = S_[lo], s1 = S_[hi];
  if (omega == w0) return s0;
  if (s0 > 0 && s1 > 0) {
    double t = std::log(omega / w0) / std::log(w1 / w0);
    return std::exp(std::log(s0) + t * (std::log(s1) - std::log(s0)));
  }
  double t = (omega - w0) / (w1 - w0);
  return s0 + t * (s1 - s0);
}

double ContinuousSpectrum::integral(double a, double b) const {
  if (empty() || !(b > a)) return 0.0;
  a = std::max(a, omega_.front());
  b = std::min(b, omega_.back());
  if (!(b > a)) return 0.0;
  double total = 0.0;
  for (size_t i = 0; i + 1 < omega_.size(); ++i) {
    double w0 = omega_[i], w1 = omega_[i + 1];
    double lo = std::max(a, w0), hi = std::min(b, w1);
    if (!(hi > lo)) continue;
    double s0 = S_[i], s1 = S_[i + 1];
    if (s0 > 0 && s1 > 0) {
      double p = std::log(s1 / s0) / std::log(w1 / w0);
      if (std::abs(p + 1.0) < 1e-9) {
        total += s0 * w0 * std::log(hi / lo);
      } else {
        double q = p + 1.0;
        total += s0 / std::pow(w0, p) * (std::pow(hi, q) - std::pow(lo, q)) / q;
      }
    } else {
      auto lin = [&](double w) { return s0 + (w - w0) / (w1 - w0) * (s1 - s0); };
      total += 0.5 * (lin(lo) + lin(hi)) * (hi - lo);
    }
  }
  return total;
}

ContinuousSpectrum ContinuousSpectrum::flat(double S0, double omega_lo,
                                            double omega_hi) {
  if (!(S0 >= 0) || !(omega_lo > 0) || !(omega_hi > omega_lo))
    throw std::invalid_argument("flat spectrum needs S0 >= 0, 0 < omega_lo < omega_hi");
  return ContinuousSpectrum({omega_lo, omega_hi}, {S0, S0});
}

ContinuousSpectrum ContinuousSpectrum::power_law(double amplitude, double omega_ref,
                                                 double exponent, double omega_lo,
                                                 double omega_hi,
                                                 int points_per_decade) {
  if (!(amplitude >= 0) || !(omega_ref > 0) || !(omega_lo > 0) ||
      !(omega_hi > omega_lo) || points_per_decade < 2)
    throw std::invalid_argument("bad power-law spectrum parameters");
  double decades = std::log10(omega_hi / omega_lo);
  int n = std::max(2, static_cast<int>(std::ceil(decades * points_per_decade)) + 1);
  std::vector<double> w(n), S(n);
  for (int i = 0; i < n; ++i) {
    double t = static_cast<double>(i) / (n - 1);
    w[i] = omega_lo * std::pow(omega_hi / omega_lo, t);
    S[i] = amplitude * std::pow(omega_ref / w[i], exponent);
  }
  w.back() = omega_hi;
  return ContinuousSpectrum(std::move(w), std::move(S));
}

double line_spike_weight(const DiscreteLine& line) {
  return kPi / 8.0 * line.beta * line.beta;
}

std::vector<DiscreteLine> read_lines_csv(const std::string& path) {
  CsvTable t = read_csv(path);
  int cf = t.column("freq_hz"), cb = t.column("beta_rad_s");
  std::vector<DiscreteLine> lines;
  lines.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    DiscreteLine l;
    l.omega = 2 * kPi * row[cf];
    l.beta = row[cb];
    if (!(l.omega > 0)) throw std::runtime_error(path + ": line freq_hz must be > 0");
    if (!(l.beta >= 0)) throw std::runtime_error(path + ": line beta_rad_s must be >= 0");
    lines.push_back(l);
  }
  return lines;
}

void write_lines_csv(const std::string& path,
                     const std::vector<DiscreteLine>& lines,
                     const std::vector<std::string>& header_comments) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& c : header_comments) std::fprintf(f, "# %s\n", c.c_str());
  std::fprintf(f, "freq_hz,beta_rad_s\n");
  for (const auto& l : lines)
    std::fprintf(f, "%.12g,%.12g\n", l.omega / (2 * kPi), l.beta);
  std::fclose(f);
}

ContinuousSpectrum read_spectrum_csv(const std::string& path) {
  CsvTable t = read_csv(path);
  int cw = t.column("omega_rad_s"), cs = t.column("S_beta");
  std::vector<double> w, S;
  w.reserve(t.rows.size());
  S.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    w.push_back(row[cw]);
    S.push_back(row[cs]);
  }
  return ContinuousSpectrum(std::move(w), std::move(S));
}

void write_spectrum_csv(const std::string& path, const ContinuousSpectrum& s,
                        const std::vector<std::string>& header_comments) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& c : header_comments) std::fprintf(f, "# %s\n", c.c_str());
  std::fprintf(f, "# normalization=one-sided, chi=(2/pi)*integral\n");
  std::fprintf(f, "omega_rad_s,S_beta\n");
  for (size_t i = 0; i < s.knots().size(); ++i)
    std::fprintf(f, "%.12g,%.12g\n", s.knots()[i], s.values()[i]);
  std::fclose(f);
}

}  // namespace ddlab
