#include "qskr/skr.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qskr {

namespace {

constexpr double kDiscriminantTol = 1e-12;
// Rounding slack when mapping eigenvalues into G: (l-1)/2 may dip a hair
// below zero for ideal parameters.
constexpr double kEigenvalueSlack = 1e-9;

void validate_detector(const DetectorParams& d) {
  if (!(d.eta > 0.0) || d.eta > 1.0 || !(d.nu_ele >= 0.0) || !(d.epsilon >= 0.0) ||
      !(d.beta > 0.0) || d.beta > 1.0) {
    throw std::invalid_argument(
        "DetectorParams: need eta, beta in (0, 1] and nu_ele, epsilon >= 0");
  }
}

double g_argument(double eigenvalue) {
  const double x = 0.5 * (eigenvalue - 1.0);
  if (x < 0.0 && x > -kEigenvalueSlack) return 0.0;
  return x;
}

}  // namespace

NoiseReferral noise_referral(double transmission, const DetectorParams& d) {
  validate_detector(d);
  if (!(transmission > 0.0) || transmission > 1.0) {
    throw std::invalid_argument("noise_referral: transmission must lie in (0, 1]");
  }
  NoiseReferral nr;
  nr.chi_line = 1.0 / transmission - 1.0 + d.epsilon;
  nr.chi_hom = (1.0 + d.nu_ele) / d.eta - 1.0;
  nr.chi_tot = nr.chi_line + nr.chi_hom / transmission;
  return nr;
}

double g_von_neumann(double x) {
  if (x < 0.0 || !std::isfinite(x)) {
    throw std::domain_error("g_von_neumann: x must be >= 0");
  }
  if (x == 0.0) return 0.0;
  return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

SymplecticSpectrum symplectic_spectrum(double sigma_x2, double transmission,
                                       const NoiseReferral& nr) {
  if (!(sigma_x2 > 0.0)) {
    throw std::invalid_argument("symplectic_spectrum: sigma_x2 must be > 0");
  }
  const double t = transmission;
  // The covariance algebra runs on Alice's quadrature variance including
  // the vacuum unit; sigma_x2 is the modulation variance on top of it.
  const double v = sigma_x2 + 1.0;
  const double a = v * v * (1.0 - 2.0 * t) + 2.0 * t + t * t * (v + nr.chi_line) * (v + nr.chi_line);
  const double b = t * t * (v * nr.chi_line + 1.0) * (v * nr.chi_line + 1.0);
  const double sqrt_b = std::sqrt(b);
  const double denom = t * (v + nr.chi_tot);
  const double c = (v * sqrt_b + t * (v + nr.chi_line) + a * nr.chi_hom) / denom;
  const double d = sqrt_b * (v + sqrt_b * nr.chi_hom) / denom;

  const auto eigenvalue_pair = [](double sum, double prod, const char* which) {
    double disc = sum * sum - 4.0 * prod;
    if (disc < 0.0) {
      if (disc < -kDiscriminantTol * std::max(1.0, sum * sum)) {
        throw std::domain_error(std::string("symplectic_spectrum: negative discriminant (") +
                                which + "), unphysical parameter set");
      }
      disc = 0.0;
    }
    const double hi = 0.5 * (sum + std::sqrt(disc));
    if (!(hi > 0.0)) {
      throw std::domain_error(std::string("symplectic_spectrum: nonpositive eigenvalue (") +
                              which + "), unphysical parameter set");
    }
    const double lo = prod / hi;  // stable second root; product is exact
    return std::pair<double, double>{std::sqrt(hi), std::sqrt(lo)};
  };

  const auto [l1, l2] = eigenvalue_pair(a, b, "A,B");
  const auto [l3, l4] = eigenvalue_pair(c, d, "C,D");
  return SymplecticSpectrum{l1, l2, l3, l4, 1.0};
}

double holevo_chi_be(const SymplecticSpectrum& s) {
  return (g_von_neumann(g_argument(s.l1)) - g_von_neumann(g_argument(s.l3))) +
         (g_von_neumann(g_argument(s.l2)) - g_von_neumann(g_argument(s.l4)));
}

SkrBreakdown secret_key_rate(const TransmittedSignal& sig, const ChannelUse& ch,
                             const HybridNoiseParams& noise, const DetectorParams& d) {
  validate_detector(d);
  SkrBreakdown out;
  out.capacity_bits = channel_capacity(sig, ch, noise);
  out.i_ab_bits = d.beta * out.capacity_bits;
  const NoiseReferral nr = noise_referral(ch.transmission(), d);
  out.spectrum = symplectic_spectrum(sig.var_x, ch.transmission(), nr);
  out.chi_be_bits = holevo_chi_be(out.spectrum);
  out.skr_bits = out.i_ab_bits - out.chi_be_bits;
  return out;
}

SkrBreakdown fading_average_breakdown(const TransmittedSignal& sig,
                                      const HybridNoiseParams& noise, const DetectorParams& d,
                                      const BeamGeometry& g, std::size_t n_draws,
                                      std::uint64_t seed) {
  if (n_draws < 100) {
    throw std::invalid_argument("fading_average_breakdown: need at least 100 draws");
  }
  if (g.pointing_sigma_r == 0.0) {
    // Degenerate fading: every draw is T0.
    return secret_key_rate(sig, ChannelUse(sample_transmission(g, seed)), noise, d);
  }
  validate_detector(d);
  // The noise mixture and its entropy bound (the O(R^2) part of the
  // capacity) do not depend on the drawn transmission; hoisting them keeps
  // every draw bit-identical to a direct secret_key_rate call at that T.
  const GaussianMixture z = hybrid_noise_mixture(noise);
  const double l_z = entropy_lower_bound(z);
  const auto rate_at = [&](double t) {
    SkrBreakdown out;
    const auto received = convolve_gaussian(z, t * sig.mu_x, t * t * sig.var_x);
    out.capacity_bits = entropy_upper_bound(received) - l_z;
    out.i_ab_bits = d.beta * out.capacity_bits;
    out.spectrum = symplectic_spectrum(sig.var_x, t, noise_referral(t, d));
    out.chi_be_bits = holevo_chi_be(out.spectrum);
    out.skr_bits = out.i_ab_bits - out.chi_be_bits;
    return out;
  };
  SkrBreakdown acc{0.0, 0.0, 0.0, 0.0, SymplecticSpectrum{0, 0, 0, 0, 0}};
  for (std::size_t i = 0; i < n_draws; ++i) {
    const double t = sample_transmission(g, derive_seed(seed, i));
    const SkrBreakdown one = rate_at(t);
    acc.capacity_bits += one.capacity_bits;
    acc.i_ab_bits += one.i_ab_bits;
    acc.chi_be_bits += one.chi_be_bits;
    acc.skr_bits += one.skr_bits;
    acc.spectrum.l1 += one.spectrum.l1;
    acc.spectrum.l2 += one.spectrum.l2;
    acc.spectrum.l3 += one.spectrum.l3;
    acc.spectrum.l4 += one.spectrum.l4;
    acc.spectrum.l5 += one.spectrum.l5;
  }
  const double n = static_cast<double>(n_draws);
  acc.capacity_bits /= n;
  acc.i_ab_bits /= n;
  acc.chi_be_bits /= n;
  acc.skr_bits = acc.i_ab_bits - acc.chi_be_bits;
  acc.spectrum.l1 /= n;
  acc.spectrum.l2 /= n;
  acc.spectrum.l3 /= n;
  acc.spectrum.l4 /= n;
  acc.spectrum.l5 /= n;
  return acc;
}

double fading_average_skr(const TransmittedSignal& sig, const HybridNoiseParams& noise,
                          const DetectorParams& d, const BeamGeometry& g,
                          std::size_t n_draws, std::uint64_t seed) {
  return fading_average_breakdown(sig, noise, d, g, n_draws, seed).skr_bits;
}

}  // namespace qskr
