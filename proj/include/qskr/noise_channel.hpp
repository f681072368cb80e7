#pragma once

#include "qskr/gaussian_mixture.hpp"

namespace qskr {

// Hybrid quantum noise Z = Z1 + Z2: Poissonian photon component Z1 with
// intensity lambda, plus Gaussian thermal/electronic component Z2.
// All second moments in shot-noise units.
struct HybridNoiseParams {
  double lambda = 2.0;        // Poisson intensity, photons
  double mu_thermal = 0.0;    // mean of Z2
  double var_thermal = 1.0;   // variance of Z2, > 0
  int truncation_r = 0;       // Poisson truncation; 0 = choose automatically
};

struct TransmittedSignal {
  double mu_x = 0.0;
  double var_x = 1.0;  // sigma_X^2 > 0
};

// One use of the channel with transmission coefficient T in (0, 1];
// the transmission efficiency is tau = T^2.
class ChannelUse {
 public:
  explicit ChannelUse(double transmission);
  double transmission() const { return t_; }
  double tau() const { return t_ * t_; }

 private:
  double t_;
};

// Default truncation ceil(lambda + 10 sqrt(lambda) + 20), which keeps the
// Poisson tail mass beyond R under 1e-12 with a wide margin.
int default_truncation(double lambda);

// Poisson tail mass sum_{j>r} e^{-lambda} lambda^j / j!, summed directly
// (no cancellation).
double poisson_tail_above(double lambda, int r);

// Truncated Poisson-weighted mixture: component j has weight
// e^{-lambda} lambda^j / j! (renormalized), mean mu_thermal + j and
// variance var_thermal.  Zero-weight components are dropped, so lambda = 0
// yields the single Gaussian N(mu_thermal, var_thermal).  Throws if the
// requested truncation leaves tail mass >= 1e-12.
GaussianMixture hybrid_noise_mixture(const HybridNoiseParams& p);

// Density of Y = T X + Z: the hybrid noise mixture convolved with
// N(T mu_x, T^2 var_x).
GaussianMixture received_signal_mixture(const TransmittedSignal& sig, const ChannelUse& ch,
                                        const HybridNoiseParams& noise);

// Capacity bound in bits per use: upper entropy bound of the received
// signal minus lower entropy bound of the noise.
double channel_capacity(const TransmittedSignal& sig, const ChannelUse& ch,
                        const HybridNoiseParams& noise);

// SNR = T^2 sigma_X^2 / (lambda + var_thermal): signal power over the total
// noise variance (Poisson variance plus Gaussian variance).
double snr_of(const TransmittedSignal& sig, const ChannelUse& ch,
              const HybridNoiseParams& noise);
double snr_db_of(const TransmittedSignal& sig, const ChannelUse& ch,
                 const HybridNoiseParams& noise);

}  // namespace qskr
