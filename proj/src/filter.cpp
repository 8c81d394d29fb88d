#include "ddlab/filter.hpp"

#include <cmath>
#include <stdexcept>

namespace ddlab {

namespace {
constexpr double kPi = 3.141592653589793238462643;

std::complex<double> expi(double x) { return {std::cos(x), std::sin(x)}; }
}  // namespace

FilterValue filter_y(const PulseSequence& seq, double omega) {
  if (omega < 0) throw std::invalid_argument("filter omega must be >= 0");
  const double T = seq.total_time();
  const int n = seq.n_pulses();
  FilterValue out;
  out.omega = omega;

  if (omega * T < 1e-6) {
    // series: y = -i*S1 + (omega/2)*S2 + O(omega^2), S1 = sum (-1)^j dtau_j,
    // S2 = sum (-1)^j (tau_{j+1}^2 - tau_j^2)
    double s1 = 0.0, s2 = 0.0;
    double prev = 0.0;
    for (int j = 0; j <= n; ++j) {
      double next = j < n ? seq.pulse_time(j) : T;
      double sign = (j % 2 == 0) ? 1.0 : -1.0;
      s1 += sign * (next - prev);
      s2 += sign * (next * next - prev * prev);
      prev = next;
    }
    out.y = std::complex<double>(0.5 * omega * s2, -s1);
    out.y_abs_sq = std::norm(out.y);
    return out;
  }

  // omega*y = 1 + (-1)^{N+1} e^{i w T} + 2 sum_{j=1..N} (-1)^j e^{i w tau_j}
  std::complex<double> acc(1.0, 0.0);
  for (int j = 1; j <= n; ++j) {
    double sign = (j % 2 == 0) ? 2.0 : -2.0;
    acc += sign * expi(omega * seq.pulse_time(j - 1));
  }
  acc += ((n + 1) % 2 == 0 ? 1.0 : -1.0) * expi(omega * T);
  out.y = acc / omega;
  out.y_abs_sq = std::norm(out.y);
  return out;
}

double filter_y_abs_sq(const PulseSequence& seq, double omega) {
  return filter_y(seq, omega).y_abs_sq;
}

std::vector<std::pair<double, double>> notch_report(
    const PulseSequence& seq, const std::vector<double>& freqs_hz) {
  std::vector<std::pair<double, double>> out;
  out.reserve(freqs_hz.size());
  for (double f : freqs_hz)
    out.emplace_back(f, filter_y_abs_sq(seq, 2 * kPi * f));
  return out;
}

std::optional<double> uniform_interval(const PulseSequence& seq) {
  int n = seq.n_pulses();
  if (n == 0) return std::nullopt;
  int64_t tau = seq.total_ticks / n;
  if (tau * n != seq.total_ticks || tau % 2 != 0) return std::nullopt;
  for (int i = 0; i < n; ++i)
    if (seq.pulse_ticks[i] != tau * (i + 1) - tau / 2) return std::nullopt;
  return to_seconds(tau);
}

double filter_y_abs_sq_uniform(int n_pulses, double tau_s, double omega) {
  const double T = n_pulses * tau_s;
  if (omega * T < 1e-6) {
    // the symmetric grid refocuses static offsets for every N: s1 = 0
    double s2 = 0.0, prev = 0.0;
    for (int j = 0; j <= n_pulses; ++j) {
      double next = j < n_pulses ? (j + 0.5) * tau_s : T;
      double sign = (j % 2 == 0) ? 1.0 : -1.0;
      s2 += sign * (next * next - prev * prev);
      prev = next;
    }
    double re = 0.5 * omega * s2;
    return re * re;
  }
  // geometric sum of (-e^{i w tau})^j; near the resonance denominator
  // cos(w tau / 2) ~ 0 the cancellation is delicate, use the direct sum.
  double c = std::cos(0.5 * omega * tau_s);
  if (std::abs(c) < 1e-6) {
    PulseSequence seq = make_cpmg(n_pulses, tau_s);
    return filter_y_abs_sq(seq, omega);
  }
  std::complex<double> z = expi(omega * tau_s);
  std::complex<double> zN = expi(omega * tau_s * n_pulses);  // z^N without drift
  std::complex<double> mz = -z;
  std::complex<double> mzN = (n_pulses % 2 == 0) ? zN : -zN;
  std::complex<double> geo = mz * (1.0 - mzN) / (1.0 + z);
  std::complex<double> acc = 1.0 + 2.0 * expi(-0.5 * omega * tau_s) * geo;
  acc += ((n_pulses + 1) % 2 == 0 ? 1.0 : -1.0) * expi(omega * T);
  return std::norm(acc) / (omega * omega);
}

BandInfo main_band(int n_pulses, double tau_s) {
  double T = n_pulses * tau_s;
  double wc = kPi / tau_s;
  double half = 2 * kPi / T;
  return {wc, wc - half, wc + half};
}

double filter_tail_estimate(const PulseSequence& seq, double w_max) {
  if (!(w_max > 0)) throw std::invalid_argument("tail estimate needs w_max > 0");
  return (4.0 * seq.n_pulses() + 2.0) / w_max;
}

}  // namespace ddlab
