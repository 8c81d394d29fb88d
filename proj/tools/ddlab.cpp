#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ddlab/benchmark.hpp"
#include "ddlab/coherence.hpp"
#include "ddlab/config.hpp"
#include "ddlab/csv.hpp"
#include "ddlab/ion.hpp"
#include "ddlab/mc.hpp"
#include "ddlab/sequence.hpp"
#include "ddlab/spectroscopy.hpp"
#include "ddlab/tomography.hpp"

namespace {

using namespace ddlab;

constexpr double kPi = 3.141592653589793238462643;

struct Global {
  std::string config_path;
  std::string out_path;
  uint64_t seed = 12345;
  int threads = 1;
};

std::vector<std::string> header_comments(const std::string& command, const Global& g,
                                         const Config& cfg) {
  std::vector<std::string> c;
  c.push_back("command=" + command);
  char buf[48];
  std::snprintf(buf, sizeof buf, "seed=%" PRIu64, g.seed);
  c.push_back(buf);
  for (const auto& line : cfg.resolved()) c.push_back("config:" + line);
  return c;
}

NoiseModel build_noise(Config& cfg) {
  NoiseModel model;
  std::string lines_csv = cfg.get_string("lines_csv", "");
  auto freqs = cfg.get_doubles("line_freqs_hz");
  auto amps_rad = cfg.get_doubles("line_amps_rad_s");
  auto amps_gauss = cfg.get_doubles("line_amps_gauss");
  double bx = cfg.get_double("field_bx_g", 0.0);
  double by = cfg.get_double("field_by_g", 0.0);
  double bz = cfg.get_double("field_bz_g", 0.0);
  if (!lines_csv.empty()) {
    if (!freqs.empty())
      throw std::runtime_error("give lines_csv or line_freqs_hz, not both");
    model.lines = read_lines_csv(lines_csv);
  } else if (!freqs.empty()) {
    if (!amps_rad.empty() && !amps_gauss.empty())
      throw std::runtime_error("give line_amps_rad_s or line_amps_gauss, not both");
    if (!amps_rad.empty()) {
      if (amps_rad.size() != freqs.size())
        throw std::runtime_error("line_amps_rad_s length must match line_freqs_hz");
      for (size_t i = 0; i < freqs.size(); ++i)
        model.lines.push_back({2 * kPi * freqs[i], amps_rad[i]});
    } else {
      if (amps_gauss.size() != freqs.size())
        throw std::runtime_error("line_amps_gauss length must match line_freqs_hz");
      double b_mag = std::sqrt(bx * bx + by * by + bz * bz);
      if (!(b_mag > 0))
        throw std::runtime_error("line_amps_gauss needs a nonzero field_b*_g");
      // fluctuation along the mean-field axis: beta = 2*pi*2K*|B| * amp
      double coeff = 2 * kPi * 2 * kZeemanHzPerG2 * b_mag;
      for (size_t i = 0; i < freqs.size(); ++i)
        model.lines.push_back({2 * kPi * freqs[i], coeff * amps_gauss[i]});
    }
  } else if (!amps_rad.empty() || !amps_gauss.empty()) {
    throw std::runtime_error("line amplitudes need line_freqs_hz");
  }
  std::string spectrum_csv = cfg.get_string("spectrum_csv", "");
  if (!spectrum_csv.empty()) model.continuum = read_spectrum_csv(spectrum_csv);
  return model;
}

PulseErrorModel build_error(Config& cfg) {
  PulseErrorModel err;
  err.flip_angle_error = cfg.get_double("flip_angle_error_rad", 0.0);
  err.detuning = cfg.get_double("detuning_rad_s", 0.0);
  err.pulse_duration = cfg.get_double("pulse_duration_s", 0.0);
  err.depolarizing_prob = cfg.get_double("p_dep", 0.0);
  err.validate();
  return err;
}

PulseSequence build_sequence(const std::string& family, long n_pulses, double tau_s,
                             double total_time_s) {
  if (family == "cpmg") return make_cpmg(static_cast<int>(n_pulses), tau_s);
  if (family == "kdd_xy") return make_kdd_xy(static_cast<int>(n_pulses), tau_s);
  if (family == "hahn") return make_hahn(total_time_s);
  if (family == "free") return make_free(total_time_s);
  throw std::runtime_error("family must be cpmg, kdd_xy, hahn or free");
}

void write_report(const std::string& path, const std::vector<std::string>& comments,
                  const std::vector<std::string>& lines) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& c : comments) std::fprintf(f, "# %s\n", c.c_str());
  for (const auto& l : lines) std::fprintf(f, "%s\n", l.c_str());
  std::fclose(f);
}

std::string kv(const char* key, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s=%.12g", key, v);
  return buf;
}

int cmd_contrast(const Global& g) {
  Config cfg = Config::load(g.config_path);
  std::string family = cfg.require_string("family");
  std::string scan = cfg.require_string("scan");
  NoiseModel model = build_noise(cfg);
  PulseErrorModel err = build_error(cfg);
  bool mc = cfg.get_long("mc", 0) != 0;
  long n_traj = cfg.get_long("n_traj", 10000);
  std::string dump_path = cfg.get_string("dump_traj_csv", "");

  struct Point {
    long n;
    double tau, T;
  };
  std::vector<Point> points;
  if (scan == "tau") {
    if (family != "cpmg" && family != "kdd_xy")
      throw std::runtime_error("scan=tau requires family cpmg or kdd_xy");
    long n = cfg.get_long("n_pulses", 0);
    if (n < 1) throw std::runtime_error("scan=tau needs n_pulses >= 1");
    double start = cfg.require_double("tau_start_s");
    double stop = cfg.require_double("tau_stop_s");
    long np = cfg.get_long("tau_points", 0);
    if (np < 1 || !(start > 0) || !(stop >= start))
      throw std::runtime_error("need tau_points >= 1 and 0 < tau_start_s <= tau_stop_s");
    for (long i = 0; i < np; ++i) {
      double tau = np == 1 ? start : start + (stop - start) * i / (np - 1);
      tau = std::nearbyint(tau * 1e9) / 1e9;
      points.push_back({n, tau, n * tau});
    }
  } else if (scan == "n_pulses") {
    if (family != "cpmg" && family != "kdd_xy")
      throw std::runtime_error("scan=n_pulses requires family cpmg or kdd_xy");
    double tau = cfg.require_double("tau_s");
    auto list = cfg.get_longs("n_pulses_list");
    if (list.empty()) throw std::runtime_error("scan=n_pulses needs n_pulses_list");
    for (long n : list) points.push_back({n, tau, n * tau});
  } else if (scan == "total_time") {
    if (family != "hahn" && family != "free")
      throw std::runtime_error("scan=total_time requires family hahn or free");
    double start = cfg.require_double("t_start_s");
    double stop = cfg.require_double("t_stop_s");
    long np = cfg.get_long("t_points", 0);
    if (np < 1 || !(start > 0) || !(stop >= start))
      throw std::runtime_error("need t_points >= 1 and 0 < t_start_s <= t_stop_s");
    for (long i = 0; i < np; ++i) {
      double T = np == 1 ? start : start + (stop - start) * i / (np - 1);
      T = std::nearbyint(T * 1e9) / 1e9;
      points.push_back({family == "hahn" ? 1 : 0, family == "hahn" ? T : 0.0, T});
    }
  } else {
    throw std::runtime_error("scan must be tau, n_pulses or total_time");
  }
  cfg.reject_unknown();
  if (!dump_path.empty() && (!mc || points.size() != 1))
    throw std::runtime_error("dump_traj_csv needs mc=1 and a single-point scan");

  std::vector<ContrastRecord> records;
  std::vector<double> analytic;
  std::vector<double> traj_phase;
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    PulseSequence seq = build_sequence(family, pt.n, pt.tau, pt.T);
    double a = contrast_total(seq, model);
    ContrastRecord rec;
    rec.n_pulses = static_cast<int>(pt.n);
    rec.tau_s = pt.tau;
    rec.total_time_s = seq.total_time();
    if (mc) {
      // decorrelate scan points without losing (seed, trajectory) determinism
      uint64_t point_seed = g.seed ^ (0x9E3779B97F4A7C15ULL * (i + 1));
      McResult r = mc_contrast(seq, model, err, static_cast<int>(n_traj), point_seed,
                               g.threads, dump_path.empty() ? nullptr : &traj_phase);
      rec.contrast = r.contrast;
      rec.stderr_ = r.stderr_;
      analytic.push_back(a);
    } else {
      rec.contrast = a;
      rec.stderr_ = 0.0;
    }
    records.push_back(rec);
  }

  auto comments = header_comments("contrast", g, cfg);
  std::string out = g.out_path.empty() ? "contrast.csv" : g.out_path;
  write_scan_csv(out, records, comments, mc ? &analytic : nullptr);
  if (!dump_path.empty()) {
    FILE* f = std::fopen(dump_path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open " + dump_path + " for writing");
    for (const auto& c : comments) std::fprintf(f, "# %s\n", c.c_str());
    std::fprintf(f, "traj_index,F_rad\n");
    for (size_t i = 0; i < traj_phase.size(); ++i)
      std::fprintf(f, "%zu,%.12g\n", i, traj_phase[i]);
    std::fclose(f);
  }
  std::printf("rows=%zu out=%s\n", records.size(), out.c_str());
  return 0;
}

int cmd_fit_lines(const Global& g) {
  Config cfg = Config::load(g.config_path);
  std::string scan_csv = cfg.require_string("scan_csv");
  auto candidates = cfg.get_doubles("candidate_freqs_hz");
  double bx = cfg.get_double("field_bx_g", 0.0);
  double by = cfg.get_double("field_by_g", 0.0);
  double bz = cfg.get_double("field_bz_g", 0.0);
  cfg.reject_unknown();
  if (candidates.empty()) throw std::runtime_error("candidate_freqs_hz required");

  LineFit fit = fit_discrete_lines(read_scan_csv(scan_csv), candidates);
  auto comments = header_comments("fit-lines", g, cfg);
  for (const auto& w : fit.warnings) comments.push_back("warning: " + w);
  std::vector<std::string> lines;
  std::string summary;
  double b_mag = std::sqrt(bx * bx + by * by + bz * bz);
  for (size_t k = 0; k < fit.lines.size(); ++k) {
    char key[64];
    std::snprintf(key, sizeof key, "beta_%ghz_rad_s", candidates[k]);
    lines.push_back(kv(key, fit.lines[k].beta));
    std::snprintf(key, sizeof key, "uncertainty_%ghz_rad_s", candidates[k]);
    lines.push_back(kv(key, fit.uncertainty[k]));
    if (b_mag > 0) {
      std::snprintf(key, sizeof key, "amp_%ghz_gauss", candidates[k]);
      lines.push_back(kv(key, fit.lines[k].beta / (2 * kPi * 2 * kZeemanHzPerG2 * b_mag)));
    }
    char s[96];
    std::snprintf(s, sizeof s, "%sbeta[%gHz]=%.12g", summary.empty() ? "" : " ",
                  candidates[k], fit.lines[k].beta);
    summary += s;
  }
  lines.push_back(kv("residual_norm", fit.residual_norm));
  std::string out = g.out_path.empty() ? "fit_lines.txt" : g.out_path;
  write_report(out, comments, lines);
  std::printf("%s residual_norm=%.12g\n", summary.c_str(), fit.residual_norm);
  return 0;
}

int cmd_spectrum(const Global& g) {
  Config cfg = Config::load(g.config_path);
  std::string scan_csv = cfg.require_string("scan_csv");
  cfg.reject_unknown();
  SpectrumEstimate est = reconstruct_spectrum(read_scan_csv(scan_csv));
  std::string out = g.out_path.empty() ? "spectrum_estimate.csv" : g.out_path;
  write_estimate_csv(out, est, header_comments("spectrum", g, cfg));
  std::printf("bands=%zu warnings=%zu out=%s\n", est.bands.size(), est.warnings.size(),
              out.c_str());
  return 0;
}

int cmd_optimize_tau(const Global& g) {
  Config cfg = Config::load(g.config_path);
  std::string spectrum_csv = cfg.get_string("spectrum_csv", "");
  std::string estimate_csv = cfg.get_string("estimate_csv", "");
  auto line_freqs = cfg.get_doubles("line_freqs_hz");
  double tau_min = cfg.require_double("tau_min_s");
  double tau_max = cfg.require_double("tau_max_s");
  double step = cfg.get_double("tau_step_s", 1e-3);
  double per_pulse = cfg.require_double("per_pulse_error");
  double target_T = cfg.require_double("target_t_s");
  double threshold = cfg.get_double("notch_rel_threshold", 1e-8);
  cfg.reject_unknown();
  if (!spectrum_csv.empty() && !estimate_csv.empty())
    throw std::runtime_error("give spectrum_csv or estimate_csv, not both");

  ContinuousSpectrum spectrum;
  if (!spectrum_csv.empty()) spectrum = read_spectrum_csv(spectrum_csv);
  if (!estimate_csv.empty()) spectrum = to_spectrum(read_estimate_csv(estimate_csv));

  IntervalResult res = optimize_interval(spectrum, line_freqs, tau_min, tau_max,
                                         per_pulse, target_T, step, threshold);
  std::string out = g.out_path.empty() ? "optimize_tau.csv" : g.out_path;
  FILE* f = std::fopen(out.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + out + " for writing");
  for (const auto& c : header_comments("optimize-tau", g, cfg))
    std::fprintf(f, "# %s\n", c.c_str());
  std::fprintf(f, "tau_s,n_pulses,chi,infidelity,pulse_cost,score,worst_notch_rel,feasible\n");
  for (const auto& sc : res.table)
    std::fprintf(f, "%.12g,%d,%.12g,%.12g,%.12g,%.12g,%.12g,%d\n", sc.tau_s,
                 sc.n_pulses, sc.chi, sc.infidelity, sc.pulse_cost, sc.score,
                 sc.worst_notch_rel, sc.feasible ? 1 : 0);
  std::fclose(f);
  std::printf("tau_opt_s=%.3f\n", res.tau_opt_s);
  return 0;
}

int cmd_rb(const Global& g) {
  Config cfg = Config::load(g.config_path);
  auto lengths_l = cfg.get_longs("lengths");
  long n_settings = cfg.get_long("n_settings", 32);
  long n_reps = cfg.get_long("n_reps", 500);
  PulseErrorModel err = build_error(cfg);
  bool do_fit = cfg.get_long("fit", 1) != 0;
  cfg.reject_unknown();
  if (lengths_l.empty()) throw std::runtime_error("lengths required");
  std::vector<int> lengths(lengths_l.begin(), lengths_l.end());

  RBRun run = rb_simulate(lengths, err, static_cast<int>(n_settings),
                          static_cast<int>(n_reps), g.seed);
  std::string out = g.out_path.empty() ? "rb.csv" : g.out_path;
  write_rb_csv(out, run, header_comments("rb", g, cfg));
  if (do_fit) {
    RBFit fit = rb_fit(run);
    if (fit.uninformative)
      std::printf("uninformative=1 message=\"%s\"\n", fit.message.c_str());
    else
      std::printf("fidelity=%.12g uncertainty=%.12g\n", fit.fidelity, fit.uncertainty);
  } else {
    std::printf("lengths=%zu out=%s\n", run.lengths.size(), out.c_str());
  }
  return 0;
}

int cmd_qpt(const Global& g) {
  Config cfg = Config::load(g.config_path);
  std::string channel_name = cfg.get_string("channel", "dephasing");
  double duration = cfg.require_double("duration_s");
  double spam_prep = cfg.get_double("spam_prep", 0.0);
  double spam_meas = cfg.get_double("spam_meas", 0.0);
  StorageChannel storage;
  if (channel_name == "identity") {
    storage = identity_storage();
  } else if (channel_name == "dephasing") {
    storage = dephasing_storage(cfg.require_double("t2_s"));
  } else {
    throw std::runtime_error("channel must be identity or dephasing");
  }
  cfg.reject_unknown();
  if (!(spam_prep >= 0 && spam_prep < 1) || !(spam_meas >= 0 && spam_meas < 1))
    throw std::runtime_error("spam parameters must be in [0, 1)");

  auto channel = [&](const Vec3& r) {
    return (1.0 - spam_meas) * storage((1.0 - spam_prep) * r, duration);
  };
  ProcessMatrix pm = qpt(channel);
  auto comments = header_comments("qpt", g, cfg);
  comments.push_back(kv("projection_distance", pm.projection_distance));
  if (pm.projected)
    comments.push_back("warning: raw reconstruction was unphysical; projected");
  std::string out = g.out_path.empty() ? "qpt_chi.csv" : g.out_path;
  write_chi_csv(out, pm, comments);
  std::printf("chi_II=%.12g projected=%d\n", pm.chi_II(), pm.projected ? 1 : 0);
  return 0;
}

int cmd_t2fit(const Global& g) {
  Config cfg = Config::load(g.config_path);
  std::string data_csv = cfg.require_string("data_csv");
  cfg.reject_unknown();
  CsvTable t = read_csv(data_csv);
  int cT = t.column("total_time_s"), cc = t.column("contrast");
  std::vector<std::pair<double, double>> data;
  for (const auto& row : t.rows) data.emplace_back(row[cT], row[cc]);

  T2Fit fit = fit_coherence_time(data);
  std::vector<std::string> lines;
  lines.push_back(kv("t2_s", fit.t2_s));
  lines.push_back(kv("uncertainty_s", fit.uncertainty_s));
  lines.push_back(kv("amplitude", fit.amplitude));
  lines.push_back(kv("amplitude_uncertainty", fit.amplitude_uncertainty));
  lines.push_back(kv("residual_norm", fit.residual_norm));
  lines.push_back(std::string("no_decay=") + (fit.no_decay ? "1" : "0"));
  if (fit.no_decay) lines.push_back(kv("t2_lower_bound_s", fit.t2_lower_bound_s));
  std::string out = g.out_path.empty() ? "t2fit.txt" : g.out_path;
  write_report(out, header_comments("t2fit", g, cfg), lines);
  if (fit.no_decay)
    std::printf("no_decay=1 t2_lower_bound_s=%.12g\n", fit.t2_lower_bound_s);
  else
    std::printf("t2_s=%.12g uncertainty_s=%.12g\n", fit.t2_s, fit.uncertainty_s);
  return 0;
}

int cmd_constants(const Global& g) {
  std::vector<std::string> lines = {
      kv("hyperfine_hz", kHyperfineHz),
      kv("j0_first_root", 2.404825557695772768621632),
      kv("ticks_per_second", static_cast<double>(kTicksPerSecond)),
      kv("zeeman_hz_per_g2", kZeemanHzPerG2),
  };
  for (const auto& l : lines) std::printf("%s\n", l.c_str());
  if (!g.out_path.empty()) write_report(g.out_path, {"command=constants"}, lines);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-qubit dephasing and dynamical-decoupling toolbox"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--config", g.config_path, "key=value configuration file");
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--out", g.out_path, "output path");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);

  int (*handler)(const Global&) = nullptr;
  bool needs_config = false;
  auto sub = [&](const char* name, const char* desc, int (*fn)(const Global&),
                 bool wants_config = true) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->callback([&handler, &needs_config, fn, wants_config]() {
      handler = fn;
      needs_config = wants_config;
    });
  };
  sub("contrast", "predicted (and optionally Monte-Carlo) contrast scan", cmd_contrast);
  sub("fit-lines", "fit discrete line amplitudes to a contrast scan", cmd_fit_lines);
  sub("spectrum", "reconstruct the noise spectrum from decay curves", cmd_spectrum);
  sub("optimize-tau", "pick the pulse interval under notch constraints",
      cmd_optimize_tau);
  sub("rb", "randomized-benchmarking simulation and fit", cmd_rb);
  sub("qpt", "process tomography of a storage channel", cmd_qpt);
  sub("t2fit", "exponential coherence-time fit", cmd_t2fit);
  sub("constants", "print the built-in physical constants", cmd_constants, false);

  CLI11_PARSE(app, argc, argv);
  try {
    if (needs_config && g.config_path.empty())
      throw std::runtime_error("--config is required for this command");
    return handler ? handler(g) : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
