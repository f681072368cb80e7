#include "qskr/noise_channel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qskr {

namespace {
constexpr double kMaxTailMass = 1e-12;
}

ChannelUse::ChannelUse(double transmission) : t_(transmission) {
  if (!(transmission > 0.0) || transmission > 1.0 || !std::isfinite(transmission)) {
    throw std::invalid_argument("ChannelUse: transmission must lie in (0, 1]");
  }
}

int default_truncation(double lambda) {
  return static_cast<int>(std::ceil(lambda + 10.0 * std::sqrt(lambda) + 20.0));
}

double poisson_tail_above(double lambda, int r) {
  if (lambda == 0.0) return 0.0;
  // Walk the pmf recursively past r until terms vanish.
  long double term = std::exp(static_cast<long double>(-lambda));
  for (int j = 1; j <= r; ++j) term *= lambda / j;
  long double tail = 0.0;
  long double t = term;
  for (int j = r + 1; j < r + 400; ++j) {
    t *= lambda / j;
    tail += t;
    if (t < tail * 1e-20 && j > lambda) break;
  }
  return static_cast<double>(tail);
}

static void validate_noise(const HybridNoiseParams& p) {
  if (!(p.lambda >= 0.0) || !std::isfinite(p.lambda)) {
    throw std::invalid_argument("HybridNoiseParams: lambda must be >= 0");
  }
  if (!(p.var_thermal > 0.0) || !std::isfinite(p.var_thermal)) {
    throw std::invalid_argument("HybridNoiseParams: var_thermal must be > 0");
  }
  if (!std::isfinite(p.mu_thermal)) {
    throw std::invalid_argument("HybridNoiseParams: mu_thermal must be finite");
  }
  if (p.truncation_r < 0) {
    throw std::invalid_argument("HybridNoiseParams: truncation_r must be >= 0");
  }
}

GaussianMixture hybrid_noise_mixture(const HybridNoiseParams& p) {
  validate_noise(p);
  const int r = (p.truncation_r > 0) ? p.truncation_r : default_truncation(p.lambda);
  const double tail = poisson_tail_above(p.lambda, r);
  if (!(tail < kMaxTailMass)) {
    std::ostringstream msg;
    msg << "hybrid_noise_mixture: truncation R=" << r << " leaves Poisson tail mass "
        << tail << " >= 1e-12 for lambda=" << p.lambda
        << " (need R >= " << default_truncation(p.lambda) << ")";
    throw std::invalid_argument(msg.str());
  }

  std::vector<double> weights;
  std::vector<GaussianComponent> comps;
  weights.reserve(r + 1);
  comps.reserve(r + 1);
  long double w = std::exp(static_cast<long double>(-p.lambda));
  for (int j = 0; j <= r; ++j) {
    if (w > 0.0L) {
      weights.push_back(static_cast<double>(w));
      comps.push_back(GaussianComponent{p.mu_thermal + j, p.var_thermal});
    }
    w *= p.lambda / (j + 1);
  }
  return GaussianMixture(std::move(weights), std::move(comps));
}

static void validate_signal(const TransmittedSignal& sig) {
  if (!(sig.var_x > 0.0) || !std::isfinite(sig.var_x) || !std::isfinite(sig.mu_x)) {
    throw std::invalid_argument("TransmittedSignal: var_x must be > 0 and finite");
  }
}

GaussianMixture received_signal_mixture(const TransmittedSignal& sig, const ChannelUse& ch,
                                        const HybridNoiseParams& noise) {
  validate_signal(sig);
  const double t = ch.transmission();
  return convolve_gaussian(hybrid_noise_mixture(noise), t * sig.mu_x, t * t * sig.var_x);
}

double channel_capacity(const TransmittedSignal& sig, const ChannelUse& ch,
                        const HybridNoiseParams& noise) {
  const double u_y = entropy_upper_bound(received_signal_mixture(sig, ch, noise));
  const double l_z = entropy_lower_bound(hybrid_noise_mixture(noise));
  return u_y - l_z;
}

double snr_of(const TransmittedSignal& sig, const ChannelUse& ch,
              const HybridNoiseParams& noise) {
  validate_signal(sig);
  validate_noise(noise);
  return ch.tau() * sig.var_x / (noise.lambda + noise.var_thermal);
}

double snr_db_of(const TransmittedSignal& sig, const ChannelUse& ch,
                 const HybridNoiseParams& noise) {
  return 10.0 * std::log10(snr_of(sig, ch, noise));
}

}  // namespace qskr
