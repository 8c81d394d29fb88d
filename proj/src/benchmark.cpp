#include "ddlab/benchmark.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "ddlab/clifford.hpp"
#include "ddlab/csv.hpp"
#include "ddlab/lsq.hpp"
#include "ddlab/rng.hpp"
#include "ddlab/sequence.hpp"

namespace ddlab {

namespace {
constexpr double kPi = 3.141592653589793238462643;
}

RBRun rb_simulate(const std::vector<int>& lengths, const PulseErrorModel& err,
                  int n_settings, int n_reps, uint64_t seed) {
  if (lengths.empty()) throw std::invalid_argument("need at least one length");
  for (size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] < 1) throw std::invalid_argument("lengths must be >= 1");
    if (i > 0 && lengths[i] <= lengths[i - 1])
      throw std::invalid_argument("lengths must be strictly increasing");
  }
  if (n_settings < 1) throw std::invalid_argument("need n_settings >= 1");
  if (n_reps < 0) throw std::invalid_argument("n_reps must be >= 0");
  err.validate();

  const auto& group = clifford_group();
  bool systematic = err.flip_angle_error != 0.0 || err.detuning != 0.0;
  Mat3 error_rot = axis_rotation(Vec3::UnitX(), err.flip_angle_error) *
                   z_rotation(err.detuning * err.pulse_duration);
  double shrink = 1.0 - err.depolarizing_prob;

  RBRun run;
  run.lengths = lengths;
  run.n_settings = n_settings;
  run.n_reps = n_reps;
  for (size_t li = 0; li < lengths.size(); ++li) {
    int L = lengths[li];
    double sum = 0.0, sumsq = 0.0;
    for (int s = 0; s < n_settings; ++s) {
      RandomStream rs(seed, static_cast<uint64_t>(li) * n_settings + s);
      Vec3 r = Vec3::UnitZ();
      int net = 0;  // identity
      for (int g = 0; g < L; ++g) {
        int gi = static_cast<int>(rs.below(24));
        net = clifford_compose(gi, net);
        r = group[gi] * r;
        if (systematic) r = error_rot * r;
        r *= shrink;
      }
      r = group[clifford_inverse(net)] * r;
      if (systematic) r = error_rot * r;
      r *= shrink;
      double p = 0.5 * (1.0 + r.z());
      p = std::min(std::max(p, 0.0), 1.0);
      double survival = p;
      if (n_reps > 0) {
        int count = 0;
        for (int k = 0; k < n_reps; ++k) count += rs.uniform() < p ? 1 : 0;
        survival = static_cast<double>(count) / n_reps;
      }
      sum += survival;
      sumsq += survival * survival;
    }
    double mean = sum / n_settings;
    double var = n_settings > 1 ? (sumsq - sum * mean) / (n_settings - 1) : 0.0;
    run.survival_mean.push_back(mean);
    run.survival_stderr.push_back(std::sqrt(std::max(var, 0.0) / n_settings));
  }
  return run;
}

void write_rb_csv(const std::string& path, const RBRun& run,
                  const std::vector<std::string>& header_comments) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& c : header_comments) std::fprintf(f, "# %s\n", c.c_str());
  std::fprintf(f, "# n_settings=%d\n# n_reps=%d\n", run.n_settings, run.n_reps);
  std::fprintf(f, "length,survival_mean,survival_stderr\n");
  for (size_t i = 0; i < run.lengths.size(); ++i)
    std::fprintf(f, "%d,%.12g,%.12g\n", run.lengths[i], run.survival_mean[i],
                 run.survival_stderr[i]);
  std::fclose(f);
}

RBRun read_rb_csv(const std::string& path) {
  CsvTable t = read_csv(path);
  RBRun run;
  for (const auto& c : t.comments) {
    int v = 0;
    if (std::sscanf(c.c_str(), "n_settings=%d", &v) == 1) run.n_settings = v;
    if (std::sscanf(c.c_str(), "n_reps=%d", &v) == 1) run.n_reps = v;
  }
  int cl = t.column("length"), cm = t.column("survival_mean"),
      cs = t.column("survival_stderr");
  for (const auto& row : t.rows) {
    run.lengths.push_back(static_cast<int>(std::lround(row[cl])));
    run.survival_mean.push_back(row[cm]);
    run.survival_stderr.push_back(row[cs]);
  }
  return run;
}

RBFit rb_fit(const RBRun& run) {
  const int n = static_cast<int>(run.lengths.size());
  if (n < 3) throw std::invalid_argument("need at least 3 lengths to fit");
  RBFit fit;

  double mn = run.survival_mean[0], mx = run.survival_mean[0];
  for (double s : run.survival_mean) {
    mn = std::min(mn, s);
    mx = std::max(mx, s);
  }
  if (mx == 1.0 && mn == 1.0) {
    fit.fidelity = 1.0;
    fit.p = 1.0;
    fit.B = 1.0;
    fit.message = "perfect survivals";
    return fit;
  }
  if (mx - mn < 1e-12) {
    fit.uninformative = true;
    fit.A = 0.0;
    fit.B = mn;
    fit.p = std::nan("");
    fit.fidelity = std::nan("");
    fit.uncertainty = std::nan("");
    char buf[96];
    std::snprintf(buf, sizeof buf, "survival flat at %.6g; decay unidentifiable", mn);
    fit.message = buf;
    return fit;
  }

  bool weighted = true;
  for (double s : run.survival_stderr) weighted = weighted && s > 0;
  Eigen::VectorXd sqrt_w = Eigen::VectorXd::Ones(n);
  if (weighted)
    for (int i = 0; i < n; ++i) sqrt_w[i] = 1.0 / run.survival_stderr[i];

  double B0 = 0.5;
  double A0 = std::min(std::max(run.survival_mean[0] - B0, 1e-3), 1.0);
  double p0 = 0.999;
  int mid = n / 2;
  double d0 = run.survival_mean[0] - B0, dm = run.survival_mean[mid] - B0;
  if (d0 > 0 && dm > 0 && dm < d0)
    p0 = std::pow(dm / d0, 1.0 / (run.lengths[mid] - run.lengths[0]));
  p0 = std::min(std::max(p0, 1e-6), 1.0 - 1e-9);

  Eigen::VectorXd par0(3), lo(3), hi(3);
  par0 << A0, B0, p0;
  lo << 0.0, -1.0, 1e-9;
  hi << 2.0, 1.0, 1.0;
  auto residual = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r, Eigen::MatrixXd* J) {
    r.resize(n);
    if (J) J->resize(n, 3);
    for (int i = 0; i < n; ++i) {
      double L = run.lengths[i];
      double pw = std::pow(p[2], L);
      r[i] = (p[0] * pw + p[1] - run.survival_mean[i]) * sqrt_w[i];
      if (J) {
        (*J)(i, 0) = pw * sqrt_w[i];
        (*J)(i, 1) = sqrt_w[i];
        (*J)(i, 2) = p[0] * L * std::pow(p[2], L - 1) * sqrt_w[i];
      }
    }
  };
  LmResult lm = lm_fit(residual, par0, lo, hi);
  if (!lm.converged) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "rb fit did not converge (%s); best A=%.6g B=%.6g p=%.9g",
                  lm.message.c_str(), lm.params[0], lm.params[1], lm.params[2]);
    throw std::runtime_error(buf);
  }
  double scale = 1.0;
  if (!weighted && n > 3) scale = lm.cost / (n - 3);
  fit.A = lm.params[0];
  fit.B = lm.params[1];
  fit.p = lm.params[2];
  fit.fidelity = 0.5 * (1.0 + fit.p);
  fit.uncertainty = 0.5 * std::sqrt(std::max(0.0, lm.covariance(2, 2) * scale));
  return fit;
}

std::vector<RobustnessPoint> dd_robustness(const std::string& family,
                                           const std::vector<int>& checkpoints,
                                           const PulseErrorModel& err, double tau_s) {
  int block;
  if (family == "kdd_xy")
    block = 20;
  else if (family == "cpmg")
    block = 1;
  else
    throw std::invalid_argument("family must be cpmg or kdd_xy");
  if (checkpoints.empty()) throw std::invalid_argument("need checkpoints");
  for (size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 || checkpoints[i] % block != 0)
      throw std::invalid_argument("checkpoints must be positive multiples of " +
                                  std::to_string(block));
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
      throw std::invalid_argument("checkpoints must be strictly increasing");
  }
  err.validate();
  if (err.pulse_duration > tau_s)
    throw std::invalid_argument("pulse duration exceeds the pulse spacing");

  double flip = kPi + err.flip_angle_error;
  std::vector<Mat3> pulse;
  if (family == "cpmg") {
    pulse.push_back(pulse_rotation_finite(kPi / 2, flip, err.detuning, err.pulse_duration));
  } else {
    for (double phase : kdd_phase_cycle())
      pulse.push_back(pulse_rotation_finite(phase, flip, err.detuning, err.pulse_duration));
  }

  std::vector<RobustnessPoint> out;
  Vec3 r = Vec3::UnitZ();
  size_t next = 0;
  for (int i = 1; i <= checkpoints.back(); ++i) {
    r = pulse[(i - 1) % pulse.size()] * r;
    if (i == checkpoints[next]) {
      out.push_back({i, 0.5 * (1.0 + r.z())});
      ++next;
    }
  }
  return out;
}

std::vector<StateCurve> six_state_protocol(const StorageChannel& storage,
                                           const std::vector<double>& durations) {
  if (!storage) throw std::invalid_argument("storage channel required");
  if (durations.empty()) throw std::invalid_argument("need at least one duration");
  const std::pair<const char*, Vec3> states[] = {
      {"up", Vec3(0, 0, 1)},      {"down", Vec3(0, 0, -1)},
      {"plus_x", Vec3(1, 0, 0)},  {"plus_y", Vec3(0, 1, 0)},
      {"minus_x", Vec3(-1, 0, 0)}, {"minus_y", Vec3(0, -1, 0)}};
  std::vector<StateCurve> curves;
  for (const auto& [label, axis] : states) {
    StateCurve c;
    c.label = label;
    c.axis = axis;
    c.durations = durations;
    for (double d : durations) c.contrasts.push_back(storage(axis, d).dot(axis));
    curves.push_back(std::move(c));
  }
  return curves;
}

}  // namespace ddlab
