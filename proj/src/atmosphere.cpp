#include "qskr/atmosphere.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "qskr/math_util.hpp"
#include "qskr/rng.hpp"

namespace qskr {

namespace {

void validate_geometry(const BeamGeometry& g) {
  if (!(g.aperture_a > 0.0) || !(g.beam_w > 0.0) || !(g.pointing_sigma_r >= 0.0) ||
      !std::isfinite(g.aperture_a) || !std::isfinite(g.beam_w) ||
      !std::isfinite(g.pointing_sigma_r)) {
    throw std::invalid_argument("BeamGeometry: need a > 0, W > 0, sigma_r >= 0");
  }
}

// Integration endpoint for Rayleigh-distributed pointing radii: tail mass
// beyond 9 sigma is ~2.6e-18.
constexpr double kPointingRadiusSigmas = 9.0;
constexpr int kQuadratureIntervals = 4000;

}  // namespace

double lognormal_pdtc_pdf(double tau, const TurbulenceParams& t) {
  if (!(t.sigma_ln > 0.0) || !(t.tau_tilde > 0.0) || t.tau_tilde > 1.0) {
    throw std::invalid_argument("TurbulenceParams: need sigma_ln > 0, tau_tilde in (0, 1]");
  }
  if (!(tau > 0.0) || !(tau < 1.0)) {
    throw std::invalid_argument("lognormal_pdtc_pdf: tau must lie in (0, 1)");
  }
  const double z = (std::log(tau) + std::log(t.tau_tilde)) / t.sigma_ln;
  return std::exp(-0.5 * z * z) / (std::sqrt(kTwoPi) * t.sigma_ln * tau);
}

BeamWanderingParams beam_wandering_params(const BeamGeometry& g) {
  validate_geometry(g);
  const double x = 4.0 * g.aperture_a * g.aperture_a / (g.beam_w * g.beam_w);
  const double t0 = std::sqrt(-std::expm1(-0.5 * x));  // T0^2 = 1 - e^{-2a^2/W^2}
  const double e0 = bessel_i0_scaled(x);               // e^{-x} I0(x)
  const double e1 = bessel_i1_scaled(x);               // e^{-x} I1(x)
  const double denom = 1.0 - e0;
  const double log_arg = 2.0 * t0 * t0 / denom;
  const double l = std::log(log_arg);
  const double kappa1 = 2.0 * x * e1 / (denom * l);
  const double r1 = g.aperture_a * std::pow(l, -1.0 / kappa1);
  return BeamWanderingParams{t0, kappa1, r1};
}

double pdtc_pdf(double t, const BeamGeometry& g) {
  validate_geometry(g);
  if (!(g.pointing_sigma_r > 0.0)) {
    throw std::invalid_argument("pdtc_pdf: pointing_sigma_r must be > 0");
  }
  const auto bw = beam_wandering_params(g);
  if (!(t > 0.0) || !(t < bw.t0)) {
    throw std::invalid_argument("pdtc_pdf: t must lie in (0, T0)");
  }
  const double sr2 = g.pointing_sigma_r * g.pointing_sigma_r;
  const double y = 2.0 * std::log(bw.t0 / t);
  const double y_pow = std::pow(y, 2.0 / bw.kappa1);
  const double r1_sq = bw.r1 * bw.r1;
  return (2.0 * r1_sq / (sr2 * bw.kappa1 * t)) * (y_pow / y) *
         std::exp(-0.5 * r1_sq * y_pow / sr2);
}

double sample_transmission(const BeamGeometry& g, std::uint64_t seed) {
  validate_geometry(g);
  const auto bw = beam_wandering_params(g);
  if (g.pointing_sigma_r == 0.0) return bw.t0;
  RandomStream rng(seed);
  const double u = rng.uniform01_open_low();
  const double r = g.pointing_sigma_r * std::sqrt(-2.0 * std::log(u));
  const double t = bw.t0 * std::exp(-0.5 * std::pow(r / bw.r1, bw.kappa1));
  // Extreme pointing excursions can underflow exp(); keep T strictly positive.
  return std::max(t, std::numeric_limits<double>::min());
}

double expected_tau_squared(const BeamGeometry& g) {
  validate_geometry(g);
  const auto bw = beam_wandering_params(g);
  double t0_sq = bw.t0 * bw.t0;
  if (bw.t0 >= 1.0 - 1e-12) {
    std::cerr << "qskr: beam geometry saturates T0 at 1; clamping\n";
    t0_sq = 1.0 - 1e-12;
  }
  const double sr = g.pointing_sigma_r;
  if (sr == 0.0) return t0_sq;
  const double sr2 = sr * sr;
  const auto integrand = [&](double r) {
    return std::exp(-std::pow(r / bw.r1, bw.kappa1)) * (r / sr2) *
           std::exp(-0.5 * r * r / sr2);
  };
  return t0_sq * simpson(integrand, 0.0, kPointingRadiusSigmas * sr, kQuadratureIntervals);
}

double altitude_to_tau(const LinkProfile& p) {
  if (!(p.altitude_km > 0.0) || !(p.waist_w0 > 0.0) || !(p.wavelength > 0.0) ||
      !(p.pointing_angle >= 0.0) || !(p.aperture_a > 0.0)) {
    throw std::invalid_argument("LinkProfile: altitude, waist, wavelength, aperture must be positive");
  }
  const double h = p.altitude_km * 1000.0;
  const double rayleigh_range = std::acos(-1.0) * p.waist_w0 * p.waist_w0 / p.wavelength;
  const double ratio = h / rayleigh_range;
  BeamGeometry g;
  g.aperture_a = p.aperture_a;
  g.beam_w = p.waist_w0 * std::sqrt(1.0 + ratio * ratio);
  g.pointing_sigma_r = p.pointing_angle * h;
  return expected_tau_squared(g);
}

}  // namespace qskr
