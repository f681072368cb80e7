#pragma once

#include <functional>
#include <span>

namespace qskr {

inline constexpr double kTwoPi = 6.283185307179586476925287;
inline constexpr double kLn2 = 0.6931471805599453094172321;

// Natural log of a Gaussian density N(x; mean, variance).
double gaussian_log_pdf(double x, double mean, double variance);

// log(sum(exp(v_i))), stable against overflow; -inf entries are skipped.
double log_sum_exp(std::span<const double> v);

// Modified Bessel functions of the first kind.  Power series below
// argument 15, asymptotic expansion above; ~1e-10 relative accuracy.
double bessel_i0(double x);
double bessel_i1(double x);
// Exponentially scaled variants e^{-x} I_n(x), safe for large x.
double bessel_i0_scaled(double x);
double bessel_i1_scaled(double x);

// Composite Simpson quadrature with n subintervals (n made even internally).
double simpson(const std::function<double(double)>& f, double a, double b, int n);

}  // namespace qskr
