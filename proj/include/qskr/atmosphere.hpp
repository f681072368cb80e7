#pragma once

#include <cstdint>

namespace qskr {

// Receiver/beam geometry for the beam-wandering transmittance model.
// aperture_a and beam_w in meters, pointing jitter sigma_r in meters.
struct BeamGeometry {
  double aperture_a = 0.5;
  double beam_w = 0.5;
  double pointing_sigma_r = 0.1;
};

// Log-normal transmittance model parameters.
struct TurbulenceParams {
  double sigma_ln;   // std of -ln(tau), > 0
  double tau_tilde;  // mean-transmittance scale, in (0, 1]
};

// Downlink optics used to map a satellite altitude to a mean transmission
// efficiency.  altitude_h in km; waist, wavelength, aperture in meters;
// pointing_angle in radians.
struct LinkProfile {
  double altitude_km = 500.0;
  double waist_w0 = 0.15;
  double wavelength = 810e-9;
  double pointing_angle = 1e-6;
  double aperture_a = 0.5;
};

struct BeamWanderingParams {
  double t0;      // maximal transmission coefficient, in (0, 1]
  double kappa1;  // Weibull shape parameter
  double r1;      // Weibull scale parameter, meters
};

// Log-normal PDTC density 1/(sqrt(2 pi) sigma tau) exp(-(ln tau + ln tau~)^2 / 2 sigma^2),
// restricted to the physical transmittance range tau in (0, 1).
double lognormal_pdtc_pdf(double tau, const TurbulenceParams& t);

// T0, kappa1, R1 of the beam-wandering model from the aperture/beam ratio,
// via modified Bessel functions I0, I1.
BeamWanderingParams beam_wandering_params(const BeamGeometry& g);

// Beam-wandering transmittance density on (0, T0), obtained by change of
// variables from the Weibull pointing density through
// T = T0 exp(-(r/R1)^kappa1 / 2).  Requires pointing_sigma_r > 0.
double pdtc_pdf(double t, const BeamGeometry& g);

// One transmittance draw: Weibull pointing radius by inverse CDF, mapped
// through T(r).  Deterministic given seed; returns T0 when sigma_r = 0.
double sample_transmission(const BeamGeometry& g, std::uint64_t seed);

// E[T^2] by quadrature over the pointing radius (exact for sigma_r = 0).
double expected_tau_squared(const BeamGeometry& g);

// Mean transmission efficiency for a downlink of the given altitude:
// diffraction-broadened beam size, altitude-proportional pointing jitter,
// then E[T^2] of the resulting geometry.
double altitude_to_tau(const LinkProfile& p);

}  // namespace qskr
