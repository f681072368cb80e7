#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qskr/rng.hpp"

namespace qskr {

struct GaussianComponent {
  double mean = 0.0;
  double variance = 1.0;  // signal units^2, must exceed kMinVariance
};

// Variances below this are rejected at construction (singular Gaussians).
inline constexpr double kMinVariance = 1e-12;

struct EntropyBounds {
  double lower_bits;
  double upper_bits;
};

struct EntropyEstimate {
  double bits;
  double std_error_bits;
};

// Finite one-dimensional Gaussian mixture.  Weights are normalized to sum
// to 1 at construction; the object is immutable afterwards, so all methods
// are safe to call concurrently.
class GaussianMixture {
 public:
  GaussianMixture(std::vector<double> weights, std::vector<GaussianComponent> components);

  static GaussianMixture single(double mean, double variance);

  std::size_t size() const { return components_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<GaussianComponent>& components() const { return components_; }

  // Density and natural-log density, evaluated per component in the log
  // domain and combined with log-sum-exp.
  double pdf(double x) const;
  double log_pdf(double x) const;

  double mean() const;
  double variance() const;

  // One draw: categorical component pick, then a Gaussian within it.
  double sample(RandomStream& rng) const;

 private:
  std::vector<double> weights_;
  std::vector<GaussianComponent> components_;
  std::vector<double> log_norm_;     // ln w_i - 0.5 ln(2 pi var_i); -inf for w_i = 0
  std::vector<double> inv_two_var_;  // 1 / (2 var_i)
  std::vector<double> cum_weights_;
};

// Density of scale*X + shift for X ~ mix.  scale must be nonzero.
GaussianMixture affine_map(const GaussianMixture& mix, double scale, double shift);

// Density of X + G for independent G ~ N(mean, variance), variance > 0.
GaussianMixture convolve_gaussian(const GaussianMixture& mix, double mean, double variance);

// Closed-form differential-entropy bounds in bits:
//   lower = -sum_i w_i log2( sum_j w_j N(mu_i; mu_j, var_i + var_j) )
//   upper =  sum_i w_i ( -log2 w_i + 0.5 log2(2 pi e var_i) )
// The lower bound costs O(n^2), the upper O(n).
double entropy_lower_bound(const GaussianMixture& mix);
double entropy_upper_bound(const GaussianMixture& mix);
EntropyBounds entropy_bounds(const GaussianMixture& mix);

// Monte Carlo estimate of the differential entropy in bits, with its
// standard error.  Deterministic for a given seed.  n_samples >= 10^4.
EntropyEstimate mc_entropy(const GaussianMixture& mix, std::size_t n_samples, std::uint64_t seed);

}  // namespace qskr
