#pragma once
#include <cstdint>
#include <vector>

#include "ddlab/bloch.hpp"
#include "ddlab/noise.hpp"
#include "ddlab/sequence.hpp"

namespace ddlab {

// One realization beta(t) = dc + sum_k amp[k] cos(omega[k] t + theta[k]).
struct BetaRealization {
  double dc = 0.0;
  std::vector<double> amp, omega, theta;
  double value(double t) const;
  // integral of beta over [t0, t1], closed form per component
  double phase_integral(double t0, double t1) const;
};

struct SpectralComponent {
  double omega = 0.0;  // bin center, rad/s
  double amp = 0.0;    // sqrt((8/pi) * integral of S over the bin)
};

// Deterministic harmonic discretization of the continuum: linear bins of
// width <= (2*pi/duration)/8 over the tabulated support (at most 200000 bins,
// widened to fit the cap), listed in ascending omega; zero-power bins dropped.
// A component of amplitude amp carries the spectral weight (pi/8)*amp^2 of
// its bin, so the ensemble dephasing matches the continuum integral.
std::vector<SpectralComponent> continuum_components(const ContinuousSpectrum& s,
                                                    double duration);

// Phases: one uniform [0, 2*pi) draw per line (list order) from the stream
// (seed, stream_id), then one per continuum component in ascending omega.
BetaRealization synthesize_beta(const NoiseModel& model, double duration,
                                uint64_t seed, uint64_t stream_id = 0);

// Evolve the Bloch vector through the sequence: free-evolution z rotation by
// the integral of beta between pulses, pulses per the error model. With
// pulse_duration > 0, beta is gated off during the square pulse windows
// [t_i - tp/2, t_i + tp/2] and the detuning acts only while a pulse is on
// (it is ignored for instantaneous pulses). Depolarizing noise is not applied
// here; the benchmarking layer owns it.
Vec3 evolve(const PulseSequence& seq, const PulseErrorModel& err,
            const BetaRealization& beta, const Vec3& initial);

// Accumulated half-phase for ideal instantaneous pulses: the full propagator
// is (net spin flip) x exp(i F sigma_z) with
//   F = (1/2) sum_j (-1)^{j+1} int_{gap j} beta dt + sum_i (-1)^{i+1} phi_i;
// the contrast along the preparation axis is +-cos(2F).
double phase_F(const PulseSequence& seq, const BetaRealization& beta);

// Ramsey preparation state: pi/2 x-rotation of |up>, the -y Bloch axis.
inline Vec3 ramsey_initial_state() { return Vec3(0.0, -1.0, 0.0); }

struct McResult {
  double contrast = 0.0;
  double stderr_ = 0.0;
  int n_traj = 0;
};

// Mean projection of the final Bloch vector onto the preparation axis over
// n_traj independent realizations; trajectory i draws from stream (seed, i),
// so the result is identical for any n_threads. If traj_phase is non-null it
// receives phase_F of every realization (ideal-pulse bookkeeping).
McResult mc_contrast(const PulseSequence& seq, const NoiseModel& model,
                     const PulseErrorModel& err, int n_traj, uint64_t seed,
                     int n_threads = 1, std::vector<double>* traj_phase = nullptr);

}  // namespace ddlab
