#include "qskr/gaussian_mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qskr/math_util.hpp"

namespace qskr {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

GaussianMixture::GaussianMixture(std::vector<double> weights,
                                 std::vector<GaussianComponent> components)
    : weights_(std::move(weights)), components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("GaussianMixture: at least one component required");
  }
  if (weights_.size() != components_.size()) {
    throw std::invalid_argument("GaussianMixture: weights/components length mismatch");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("GaussianMixture: weights must be finite and >= 0");
    }
    sum += w;
  }
  if (sum <= 0.0) {
    throw std::invalid_argument("GaussianMixture: weights sum to zero");
  }
  for (const auto& c : components_) {
    if (!std::isfinite(c.mean)) {
      throw std::invalid_argument("GaussianMixture: component mean must be finite");
    }
    if (!(c.variance >= kMinVariance) || !std::isfinite(c.variance)) {
      throw std::invalid_argument("GaussianMixture: component variance below 1e-12");
    }
  }
  for (double& w : weights_) w /= sum;

  log_norm_.resize(weights_.size());
  inv_two_var_.resize(weights_.size());
  cum_weights_.resize(weights_.size());
  double cum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double v = components_[i].variance;
    log_norm_[i] = (weights_[i] > 0.0)
                       ? std::log(weights_[i]) - 0.5 * std::log(kTwoPi * v)
                       : kNegInf;
    inv_two_var_[i] = 0.5 / v;
    cum += weights_[i];
    cum_weights_[i] = cum;
  }
  cum_weights_.back() = 1.0;
}

GaussianMixture GaussianMixture::single(double mean, double variance) {
  return GaussianMixture({1.0}, {GaussianComponent{mean, variance}});
}

double GaussianMixture::log_pdf(double x) const {
  double m = kNegInf;
  const std::size_t n = components_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x - components_[i].mean;
    const double t = log_norm_[i] - d * d * inv_two_var_[i];
    if (t > m) m = t;
  }
  if (!std::isfinite(m)) return kNegInf;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x - components_[i].mean;
    const double t = log_norm_[i] - d * d * inv_two_var_[i];
    if (t > kNegInf) s += std::exp(t - m);
  }
  return m + std::log(s);
}

double GaussianMixture::pdf(double x) const { return std::exp(log_pdf(x)); }

double GaussianMixture::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i) m += weights_[i] * components_[i].mean;
  return m;
}

double GaussianMixture::variance() const {
  const double m = mean();
  double v = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const double d = components_[i].mean - m;
    v += weights_[i] * (components_[i].variance + d * d);
  }
  return v;
}

double GaussianMixture::sample(RandomStream& rng) const {
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cum_weights_.begin(), cum_weights_.end(), u);
  const std::size_t k =
      std::min<std::size_t>(it - cum_weights_.begin(), components_.size() - 1);
  return components_[k].mean + std::sqrt(components_[k].variance) * rng.normal();
}

GaussianMixture affine_map(const GaussianMixture& mix, double scale, double shift) {
  if (scale == 0.0 || !std::isfinite(scale) || !std::isfinite(shift)) {
    throw std::invalid_argument("affine_map: scale must be finite and nonzero");
  }
  std::vector<GaussianComponent> comps = mix.components();
  for (auto& c : comps) {
    c.mean = scale * c.mean + shift;
    c.variance = scale * scale * c.variance;
  }
  return GaussianMixture(mix.weights(), std::move(comps));
}

GaussianMixture convolve_gaussian(const GaussianMixture& mix, double mean, double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance) || !std::isfinite(mean)) {
    throw std::invalid_argument("convolve_gaussian: variance must be positive");
  }
  std::vector<GaussianComponent> comps = mix.components();
  for (auto& c : comps) {
    c.mean += mean;
    c.variance += variance;
  }
  return GaussianMixture(mix.weights(), std::move(comps));
}

double entropy_lower_bound(const GaussianMixture& mix) {
  const auto& w = mix.weights();
  const auto& c = mix.components();
  const std::size_t n = mix.size();
  double lower = 0.0;
  std::vector<double> terms(n);  // inner sum over j in the log domain
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      terms[j] = (w[j] > 0.0)
                     ? std::log(w[j]) +
                           gaussian_log_pdf(c[i].mean, c[j].mean, c[i].variance + c[j].variance)
                     : -std::numeric_limits<double>::infinity();
    }
    lower -= w[i] * log_sum_exp(terms) / kLn2;
  }
  return lower;
}

double entropy_upper_bound(const GaussianMixture& mix) {
  const auto& w = mix.weights();
  const auto& c = mix.components();
  double upper = 0.0;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    if (w[i] == 0.0) continue;  // 0 log 0 := 0
    upper += w[i] * (-std::log2(w[i]) +
                     0.5 * std::log2(kTwoPi * std::exp(1.0) * c[i].variance));
  }
  return upper;
}

EntropyBounds entropy_bounds(const GaussianMixture& mix) {
  return EntropyBounds{entropy_lower_bound(mix), entropy_upper_bound(mix)};
}

EntropyEstimate mc_entropy(const GaussianMixture& mix, std::size_t n_samples,
                           std::uint64_t seed) {
  if (n_samples < 10000) {
    throw std::invalid_argument("mc_entropy: need at least 1e4 samples");
  }
  RandomStream rng(seed);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const double neg_log2_pdf = -mix.log_pdf(mix.sample(rng)) / kLn2;
    sum += neg_log2_pdf;
    sum_sq += neg_log2_pdf * neg_log2_pdf;
  }
  const double n = static_cast<double>(n_samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  return EntropyEstimate{mean, std::sqrt(var / n)};
}

}  // namespace qskr
