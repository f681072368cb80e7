#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qskr/gaussian_mixture.hpp"
#include "qskr/math_util.hpp"
#include "test_util.hpp"

using namespace qskr;

namespace {

double single_gaussian_upper(double variance) {
  return 0.5 * std::log2(kTwoPi * std::exp(1.0) * variance);
}

double single_gaussian_lower(double variance) {
  return 0.5 * std::log2(4.0 * std::acos(-1.0) * variance);
}

}  // namespace

TEST_CASE("pdf of standard normal at the peak") {
  const auto mix = GaussianMixture::single(0.0, 1.0);
  CHECK(mix.pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-13));
}

TEST_CASE("duplicate components collapse to the single density") {
  GaussianMixture dup({0.5, 0.5}, {GaussianComponent{0.0, 1.0}, GaussianComponent{0.0, 1.0}});
  const auto single = GaussianMixture::single(0.0, 1.0);
  for (double x : {-3.0, -0.5, 0.0, 1.7, 4.0}) {
    CHECK(dup.pdf(x) == doctest::Approx(single.pdf(x)).epsilon(1e-14));
  }
}

TEST_CASE("Poisson-weighted mixture pdf matches direct long-double summation") {
  const double lambda = 2.0;
  const int r = 40;
  const auto pmf = oracle::poisson_pmf_ld(lambda, r);
  std::vector<double> w(r + 1);
  std::vector<GaussianComponent> c(r + 1);
  long double sum = 0.0L;
  for (int j = 0; j <= r; ++j) sum += pmf[j];
  for (int j = 0; j <= r; ++j) {
    w[j] = static_cast<double>(pmf[j]);
    c[j] = GaussianComponent{static_cast<double>(j), 1.0};
  }
  const GaussianMixture mix(w, c);

  long double direct = 0.0L;
  for (int j = 0; j <= r; ++j) {
    direct += pmf[j] / sum * oracle::normal_pdf_ld(2.0L, j, 1.0L);
  }
  CHECK(std::abs(mix.pdf(2.0) - static_cast<double>(direct)) <
        1e-12 * static_cast<double>(direct));
}

TEST_CASE("construction validates invariants") {
  CHECK_THROWS_AS(GaussianMixture({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(GaussianMixture({1.0, 1.0}, {GaussianComponent{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(GaussianMixture({-0.1, 1.1}, {GaussianComponent{0, 1}, GaussianComponent{1, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(GaussianMixture({1.0}, {GaussianComponent{0, 1e-13}}), std::invalid_argument);
  CHECK_THROWS_AS(GaussianMixture({0.0}, {GaussianComponent{0, 1}}), std::invalid_argument);

  GaussianMixture mix({2.0, 6.0}, {GaussianComponent{0, 1}, GaussianComponent{1, 1}});
  CHECK(mix.weights()[0] == doctest::Approx(0.25).epsilon(1e-15));
  double sum = 0.0;
  for (double w : mix.weights()) sum += w;
  CHECK(std::abs(sum - 1.0) <= 1e-9);
}

TEST_CASE("affine_map identity and single-Gaussian scaling") {
  GaussianMixture mix({0.3, 0.7}, {GaussianComponent{-1, 0.5}, GaussianComponent{2, 2}});
  const auto same = affine_map(mix, 1.0, 0.0);
  for (std::size_t i = 0; i < mix.size(); ++i) {
    CHECK(same.components()[i].mean == mix.components()[i].mean);
    CHECK(same.components()[i].variance == mix.components()[i].variance);
  }

  const double t = 0.8;
  const auto scaled = affine_map(GaussianMixture::single(1.5, 2.0), t, 0.0);
  CHECK(scaled.components()[0].mean == doctest::Approx(t * 1.5).epsilon(1e-15));
  CHECK(scaled.components()[0].variance == doctest::Approx(t * t * 2.0).epsilon(1e-15));

  CHECK_THROWS_AS(affine_map(mix, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("affine_map sampled histogram matches transformed-pdf quadrature") {
  GaussianMixture mix({0.6, 0.4}, {GaussianComponent{-1, 1}, GaussianComponent{2, 2.25}});
  const auto mapped = affine_map(mix, 2.0, 3.0);

  const double lo = -9.0, hi = 19.0, width = 0.5;
  const int bins = static_cast<int>((hi - lo) / width);
  std::vector<double> expected(bins), observed(bins, 0.0);
  for (int b = 0; b < bins; ++b) {
    expected[b] = simpson([&](double x) { return mapped.pdf(x); }, lo + b * width,
                          lo + (b + 1) * width, 64);
  }
  const std::size_t n = 1000000;
  RandomStream rng(20240811);
  for (std::size_t s = 0; s < n; ++s) {
    const double x = mapped.sample(rng);
    const int b = static_cast<int>((x - lo) / width);
    if (b >= 0 && b < bins) observed[b] += 1.0 / n;
  }
  double sup = 0.0;
  for (int b = 0; b < bins; ++b) sup = std::max(sup, std::abs(observed[b] - expected[b]));
  CHECK(sup < 1e-3);
}

TEST_CASE("convolve_gaussian of two standard normals") {
  const auto out = convolve_gaussian(GaussianMixture::single(0.0, 1.0), 0.0, 1.0);
  CHECK(out.components()[0].mean == 0.0);
  CHECK(out.components()[0].variance == 2.0);
  CHECK_THROWS_AS(convolve_gaussian(out, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(convolve_gaussian(out, 0.0, -1.0), std::invalid_argument);
}

TEST_CASE("convolve_gaussian matches trapezoid-quadrature convolution") {
  GaussianMixture mix({0.25, 0.75}, {GaussianComponent{-2, 0.8}, GaussianComponent{1, 1.5}});
  const double m = 0.5, v = 0.6;
  const auto out = convolve_gaussian(mix, m, v);

  // f_out(y) = int f_mix(s) N(y - s; m, v) ds on [-40, 40], step 1e-3.
  const double h = 1e-3;
  const int n = static_cast<int>(80.0 / h);
  std::vector<double> fmix(n + 1);
  for (int i = 0; i <= n; ++i) fmix[i] = mix.pdf(-40.0 + i * h);
  double sup = 0.0;
  for (double y : {-4.0, -2.5, -1.0, 0.0, 1.5, 3.0, 5.0}) {
    long double acc = 0.0L;
    for (int i = 0; i <= n; ++i) {
      const double s = -40.0 + i * h;
      const long double term =
          static_cast<long double>(fmix[i]) * oracle::normal_pdf_ld(y - s, m, v);
      acc += (i == 0 || i == n) ? 0.5L * term : term;
    }
    acc *= h;
    sup = std::max(sup, std::abs(out.pdf(y) - static_cast<double>(acc)));
  }
  CHECK(sup < 1e-8);
}

TEST_CASE("zero-mean convolution preserves the mixture mean") {
  GaussianMixture mix({0.25, 0.75}, {GaussianComponent{-2, 0.8}, GaussianComponent{1, 1.5}});
  const auto out = convolve_gaussian(mix, 0.0, 2.0);
  CHECK(out.mean() == doctest::Approx(mix.mean()).epsilon(1e-14));
}

TEST_CASE("entropy bounds of a single Gaussian") {
  const auto b = entropy_bounds(GaussianMixture::single(0.0, 1.0));
  CHECK(b.upper_bits == doctest::Approx(single_gaussian_upper(1.0)).epsilon(1e-13));
  CHECK(b.lower_bits == doctest::Approx(single_gaussian_lower(1.0)).epsilon(1e-13));
  // Values quoted to 6 figures: upper ~ 2.0471, lower ~ 1.8258 bits.
  CHECK(b.upper_bits == doctest::Approx(2.047096).epsilon(2e-4));
  CHECK(b.lower_bits == doctest::Approx(1.826028).epsilon(2e-4));

  for (double var : {0.01, 1.0, 100.0}) {
    const auto bb = entropy_bounds(GaussianMixture::single(3.0, var));
    CHECK(std::abs(bb.upper_bits - single_gaussian_upper(var)) <=
          1e-12 * std::abs(single_gaussian_upper(var)));
  }
}

TEST_CASE("zero-weight components are skipped in the bounds") {
  GaussianMixture mix({0.0, 1.0}, {GaussianComponent{5, 2}, GaussianComponent{0, 1}});
  const auto b = entropy_bounds(mix);
  CHECK(b.upper_bits == doctest::Approx(single_gaussian_upper(1.0)).epsilon(1e-13));
  CHECK(b.lower_bits == doctest::Approx(single_gaussian_lower(1.0)).epsilon(1e-13));
}

TEST_CASE("duplication: lower bound invariant, upper grows by split entropy") {
  GaussianMixture mix({0.3, 0.7}, {GaussianComponent{0, 1}, GaussianComponent{3, 2}});
  GaussianMixture split({0.3, 0.35, 0.35},
                        {GaussianComponent{0, 1}, GaussianComponent{3, 2},
                         GaussianComponent{3, 2}});
  const auto b0 = entropy_bounds(mix);
  const auto b1 = entropy_bounds(split);
  CHECK(b1.lower_bits == doctest::Approx(b0.lower_bits).epsilon(1e-12));
  CHECK(b1.upper_bits - b0.upper_bits == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("translation invariance and scale covariance of the bounds") {
  RandomStream rng(99);
  for (int rep = 0; rep < 10; ++rep) {
    const auto mix = oracle::random_mixture(rng, 8);
    const auto base = entropy_bounds(mix);

    const auto shifted = entropy_bounds(affine_map(mix, 1.0, 7.25));
    CHECK(shifted.lower_bits == doctest::Approx(base.lower_bits).epsilon(1e-9));
    CHECK(shifted.upper_bits == doctest::Approx(base.upper_bits).epsilon(1e-9));

    const double s = 3.0;
    const auto scaled = entropy_bounds(affine_map(mix, s, 0.0));
    CHECK(scaled.lower_bits - base.lower_bits == doctest::Approx(std::log2(s)).epsilon(1e-9));
    CHECK(scaled.upper_bits - base.upper_bits == doctest::Approx(std::log2(s)).epsilon(1e-9));
  }
}

TEST_CASE("pdf integrates to one over a 40-sigma envelope") {
  RandomStream rng(4242);
  for (int rep = 0; rep < 5; ++rep) {
    const auto mix = oracle::random_mixture(rng, 10);
    double lo = 1e300, hi = -1e300, smax = 0.0;
    for (const auto& c : mix.components()) {
      lo = std::min(lo, c.mean);
      hi = std::max(hi, c.mean);
      smax = std::max(smax, std::sqrt(c.variance));
    }
    const double integral =
        simpson([&](double x) { return mix.pdf(x); }, lo - 40.0 * smax, hi + 40.0 * smax, 200000);
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("mc entropy of the standard normal") {
  const auto est = mc_entropy(GaussianMixture::single(0.0, 1.0), 1000000, 7);
  CHECK(est.std_error_bits < 0.003);
  CHECK(std::abs(est.bits - single_gaussian_upper(1.0)) < 3.0 * est.std_error_bits);
}

TEST_CASE("mc entropy of a well-separated mixture adds one weight bit") {
  GaussianMixture mix({0.5, 0.5}, {GaussianComponent{0, 1}, GaussianComponent{100, 1}});
  const auto est = mc_entropy(mix, 200000, 11);
  CHECK(std::abs(est.bits - (single_gaussian_upper(1.0) + 1.0)) < 3.0 * est.std_error_bits);
}

TEST_CASE("mc entropy is deterministic for a fixed seed") {
  GaussianMixture mix({0.5, 0.5}, {GaussianComponent{0, 1}, GaussianComponent{2, 3}});
  const auto a = mc_entropy(mix, 10000, 123);
  const auto b = mc_entropy(mix, 10000, 123);
  CHECK(a.bits == b.bits);
  CHECK(a.std_error_bits == b.std_error_bits);
  CHECK_THROWS_AS(mc_entropy(mix, 9999, 1), std::invalid_argument);
}

TEST_CASE("entropy sandwich property on random mixtures") {
  RandomStream rng(314159);
  for (int rep = 0; rep < 40; ++rep) {
    const auto mix = oracle::random_mixture(rng);
    const auto bounds = entropy_bounds(mix);
    const auto est = mc_entropy(mix, 100000, derive_seed(555, rep));
    CHECK(bounds.lower_bits <= bounds.upper_bits);
    CHECK(bounds.lower_bits <= est.bits + 3.0 * est.std_error_bits);
    CHECK(est.bits - 3.0 * est.std_error_bits <= bounds.upper_bits);
  }
}
