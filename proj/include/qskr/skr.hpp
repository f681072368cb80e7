#pragma once

#include <cstdint>

#include "qskr/atmosphere.hpp"
#include "qskr/noise_channel.hpp"

namespace qskr {

// Receiver-side imperfections, noise terms in shot-noise units.
struct DetectorParams {
  double eta = 0.606;      // detection efficiency, (0, 1]
  double nu_ele = 0.041;   // electronic noise, >= 0
  double epsilon = 0.005;  // channel excess noise, >= 0
  double beta = 0.95;      // reconciliation efficiency, (0, 1]
};

// Input-referred noise of the line, the homodyne detector, and their total:
//   chi_line = 1/T - 1 + epsilon
//   chi_hom  = (1 + nu_ele)/eta - 1
//   chi_tot  = chi_line + chi_hom / T
struct NoiseReferral {
  double chi_line;
  double chi_hom;
  double chi_tot;
};

// Symplectic eigenvalues of the Alice-Bob covariance matrix (l1, l2), of
// Eve's state conditional on Bob's measurement (l3, l4), and l5 = 1.
struct SymplecticSpectrum {
  double l1, l2, l3, l4, l5;
};

// One secret-key-rate evaluation: capacity bound, reconciled mutual
// information, Holevo leakage and their difference (bits per channel use).
// skr_bits may be negative; negative means no secure key.
struct SkrBreakdown {
  double capacity_bits;
  double i_ab_bits;
  double chi_be_bits;
  double skr_bits;
  SymplecticSpectrum spectrum;

  bool secure() const { return skr_bits > 0.0; }
};

NoiseReferral noise_referral(double transmission, const DetectorParams& d);

// G(x) = (x+1) log2(x+1) - x log2 x, with G(0) = 0; feeds the von Neumann
// entropy of a Gaussian state.  Rejects x < 0.
double g_von_neumann(double x);

// Eigenvalues from A, B, C, D of the covariance algebra.  Discriminants
// within -1e-12 of zero are clamped; beyond that the parameter set is
// reported as unphysical.
SymplecticSpectrum symplectic_spectrum(double sigma_x2, double transmission,
                                       const NoiseReferral& nr);

// chi_BE = G((l1-1)/2) + G((l2-1)/2) - G((l3-1)/2) - G((l4-1)/2).
double holevo_chi_be(const SymplecticSpectrum& s);

// Devetak-Winter rate K = beta * C - chi_BE for a fixed-transmission block.
SkrBreakdown secret_key_rate(const TransmittedSignal& sig, const ChannelUse& ch,
                             const HybridNoiseParams& noise, const DetectorParams& d);

// Plain Monte Carlo average of the rate over beam-wandering transmittance
// draws (no clamping of negative rates).  Deterministic given seed.
// n_draws >= 100.
SkrBreakdown fading_average_breakdown(const TransmittedSignal& sig,
                                      const HybridNoiseParams& noise, const DetectorParams& d,
                                      const BeamGeometry& g, std::size_t n_draws,
                                      std::uint64_t seed);
double fading_average_skr(const TransmittedSignal& sig, const HybridNoiseParams& noise,
                          const DetectorParams& d, const BeamGeometry& g,
                          std::size_t n_draws, std::uint64_t seed);

}  // namespace qskr
