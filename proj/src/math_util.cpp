#include "qskr/math_util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qskr {

double gaussian_log_pdf(double x, double mean, double variance) {
  const double d = x - mean;
  return -0.5 * d * d / variance - 0.5 * std::log(kTwoPi * variance);
}

double log_sum_exp(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double t : v) m = std::max(m, t);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double t : v) {
    if (std::isfinite(t)) s += std::exp(t - m);
  }
  return m + std::log(s);
}

namespace {

constexpr double kBesselSwitch = 15.0;

// Series: I0(x) = sum (x^2/4)^m / (m!)^2, I1(x) = (x/2) sum (x^2/4)^m / (m!(m+1)!)
double i0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int m = 1; m < 200; ++m) {
    term *= q / (static_cast<double>(m) * m);
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return sum;
}

double i1_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int m = 1; m < 200; ++m) {
    term *= q / (static_cast<double>(m) * (m + 1));
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return 0.5 * x * sum;
}

// Asymptotic: I_nu(x) ~ e^x/sqrt(2 pi x) * sum_k a_k, with
// a_k = a_{k-1} * -(4 nu^2 - (2k-1)^2) / (8 k x).  Truncated at the
// smallest term, which bounds the error of the divergent series.
double i_asymptotic_scaled(double x, double nu) {
  const double four_nu2 = 4.0 * nu * nu;
  double term = 1.0, sum = 1.0;
  double prev = std::abs(term);
  for (int k = 1; k < 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(four_nu2 - odd * odd) / (8.0 * k * x);
    if (std::abs(term) >= prev) break;  // series started diverging
    sum += term;
    prev = std::abs(term);
  }
  return sum / std::sqrt(kTwoPi * x);
}

}  // namespace

double bessel_i0_scaled(double x) {
  x = std::abs(x);
  if (x < kBesselSwitch) return std::exp(-x) * i0_series(x);
  return i_asymptotic_scaled(x, 0.0);
}

double bessel_i1_scaled(double x) {
  const double ax = std::abs(x);
  const double s = (x < 0) ? -1.0 : 1.0;
  if (ax < kBesselSwitch) return s * std::exp(-ax) * i1_series(ax);
  return s * i_asymptotic_scaled(ax, 1.0);
}

double bessel_i0(double x) { return std::exp(std::abs(x)) * bessel_i0_scaled(x); }

double bessel_i1(double x) { return std::exp(std::abs(x)) * bessel_i1_scaled(x); }

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n < 2) throw std::invalid_argument("simpson: need at least 2 subintervals");
  if (n % 2 != 0) ++n;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) {
    sum += f(a + i * h) * ((i % 2 == 0) ? 2.0 : 4.0);
  }
  return sum * h / 3.0;
}

}  // namespace qskr
