#include "ddlab/mc.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "ddlab/rng.hpp"

namespace ddlab {

namespace {
constexpr double kPi = 3.141592653589793238462643;
constexpr int kMaxComponents = 200000;
}  // namespace

double BetaRealization::value(double t) const {
  double v = dc;
  for (size_t k = 0; k < amp.size(); ++k) v += amp[k] * std::cos(omega[k] * t + theta[k]);
  return v;
}

double BetaRealization::phase_integral(double t0, double t1) const {
  double v = dc * (t1 - t0);
  for (size_t k = 0; k < amp.size(); ++k)
    v += amp[k] / omega[k] * (std::sin(omega[k] * t1 + theta[k]) - std::sin(omega[k] * t0 + theta[k]));
  return v;
}

std::vector<SpectralComponent> continuum_components(const ContinuousSpectrum& s,
                                                    double duration) {
  if (s.empty()) return {};
  if (!(duration > 0)) throw std::invalid_argument("duration must be positive");
  double lo = s.omega_min(), hi = s.omega_max();
  double width = (2 * kPi / duration) / 8.0;
  int m = static_cast<int>(std::ceil((hi - lo) / width));
  m = std::min(std::max(m, 1), kMaxComponents);
  width = (hi - lo) / m;
  std::vector<SpectralComponent> comps;
  comps.reserve(m);
  for (int i = 0; i < m; ++i) {
    double a = lo + i * width, b = (i + 1 == m) ? hi : lo + (i + 1) * width;
    double power = s.integral(a, b);
    if (power <= 0) continue;
    comps.push_back({0.5 * (a + b), std::sqrt(8.0 / kPi * power)});
  }
  return comps;
}

namespace {

BetaRealization draw_realization(const std::vector<DiscreteLine>& lines,
                                 const std::vector<SpectralComponent>& comps,
                                 uint64_t seed, uint64_t stream_id) {
  RandomStream rs(seed, stream_id);
  BetaRealization b;
  b.amp.reserve(lines.size() + comps.size());
  b.omega.reserve(lines.size() + comps.size());
  b.theta.reserve(lines.size() + comps.size());
  for (const auto& l : lines) {
    b.amp.push_back(l.beta);
    b.omega.push_back(l.omega);
    b.theta.push_back(rs.uniform(0.0, 2 * kPi));
  }
  for (const auto& c : comps) {
    b.amp.push_back(c.amp);
    b.omega.push_back(c.omega);
    b.theta.push_back(rs.uniform(0.0, 2 * kPi));
  }
  return b;
}

}  // namespace

BetaRealization synthesize_beta(const NoiseModel& model, double duration,
                                uint64_t seed, uint64_t stream_id) {
  for (const auto& l : model.lines)
    if (!(l.omega > 0) || !(l.beta >= 0))
      throw std::invalid_argument("lines need omega > 0 and beta >= 0");
  return draw_realization(model.lines, continuum_components(model.continuum, duration),
                          seed, stream_id);
}

Vec3 evolve(const PulseSequence& seq, const PulseErrorModel& err,
            const BetaRealization& beta, const Vec3& initial) {
  seq.validate();
  err.validate();
  double T = seq.total_time();
  double flip = kPi + err.flip_angle_error;
  Vec3 r = initial;
  if (err.pulse_duration == 0.0) {
    double prev = 0.0;
    for (int i = 0; i < seq.n_pulses(); ++i) {
      double t = seq.pulse_time(i);
      r = z_rotation(beta.phase_integral(prev, t)) * r;
      r = pulse_rotation(seq.pulse_phases[i], flip) * r;
      prev = t;
    }
    return z_rotation(beta.phase_integral(prev, T)) * r;
  }
  double tp = err.pulse_duration;
  double prev_end = 0.0;
  for (int i = 0; i < seq.n_pulses(); ++i) {
    double start = seq.pulse_time(i) - 0.5 * tp, end = seq.pulse_time(i) + 0.5 * tp;
    if (start < prev_end || end > T)
      throw std::invalid_argument("pulse windows overlap or leave [0, T]");
    r = z_rotation(beta.phase_integral(prev_end, start)) * r;
    r = pulse_rotation_finite(seq.pulse_phases[i], flip, err.detuning, tp) * r;
    prev_end = end;
  }
  return z_rotation(beta.phase_integral(prev_end, T)) * r;
}

double phase_F(const PulseSequence& seq, const BetaRealization& beta) {
  double T = seq.total_time();
  double half_beta = 0.0, prev = 0.0;
  for (int j = 0; j <= seq.n_pulses(); ++j) {
    double next = j < seq.n_pulses() ? seq.pulse_time(j) : T;
    double sign = (j % 2 == 0) ? -1.0 : 1.0;  // (-1)^(j+1)
    half_beta += sign * beta.phase_integral(prev, next);
    prev = next;
  }
  double phase_sum = 0.0;
  for (int i = 1; i <= seq.n_pulses(); ++i)
    phase_sum += ((i % 2 == 1) ? 1.0 : -1.0) * seq.pulse_phases[i - 1];
  return 0.5 * half_beta + phase_sum;
}

McResult mc_contrast(const PulseSequence& seq, const NoiseModel& model,
                     const PulseErrorModel& err, int n_traj, uint64_t seed,
                     int n_threads, std::vector<double>* traj_phase) {
  if (n_traj < 100) throw std::invalid_argument("n_traj must be at least 100");
  seq.validate();
  err.validate();
  double T = seq.total_time();
  const Vec3 prep = ramsey_initial_state();
  auto comps = continuum_components(model.continuum, T);

  std::vector<double> proj(n_traj);
  if (traj_phase) traj_phase->assign(n_traj, 0.0);
  auto work = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      BetaRealization b =
          draw_realization(model.lines, comps, seed, static_cast<uint64_t>(i));
      proj[i] = evolve(seq, err, b, prep).dot(prep);
      if (traj_phase) (*traj_phase)[i] = phase_F(seq, b);
    }
  };
  if (n_threads <= 1) {
    work(0, n_traj);
  } else {
    int nt = std::min(n_threads, n_traj);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) {
      int begin = static_cast<int>(static_cast<long>(n_traj) * t / nt);
      int end = static_cast<int>(static_cast<long>(n_traj) * (t + 1) / nt);
      pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  double sum = 0.0, comp = 0.0;
  for (double v : proj) {  // Kahan, fixed order
    double y = v - comp, t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double mean = sum / n_traj;
  double ss = 0.0;
  for (double v : proj) ss += (v - mean) * (v - mean);
  double stderr_ = std::sqrt(ss / (n_traj - 1) / n_traj);
  return {mean, stderr_, n_traj};
}

}  // namespace ddlab
