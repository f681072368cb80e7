#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "qskr/math_util.hpp"
#include "test_util.hpp"

using namespace qskr;

TEST_CASE("log_sum_exp sums in the log domain") {
  std::vector<double> v = {std::log(1.0), std::log(2.0), std::log(3.0)};
  CHECK(log_sum_exp(v) == doctest::Approx(std::log(6.0)).epsilon(1e-14));

  std::vector<double> shifted = {1000.0, 1000.0};
  CHECK(log_sum_exp(shifted) == doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-14));

  std::vector<double> with_inf = {-std::numeric_limits<double>::infinity(), 0.0};
  CHECK(log_sum_exp(with_inf) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("gaussian_log_pdf standard normal peak") {
  CHECK(std::exp(gaussian_log_pdf(0.0, 0.0, 1.0)) ==
        doctest::Approx(0.3989422804014327).epsilon(1e-13));
}

TEST_CASE("bessel I0/I1 at zero") {
  CHECK(bessel_i0(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bessel_i1(0.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("bessel I0/I1 against integral representation") {
  // Covers the series branch (1, 4, 10), the asymptotic branch (20, 50),
  // and both sides of the switch point.
  for (double x : {1.0, 4.0, 10.0, 14.999999, 15.000001, 20.0, 50.0}) {
    const double i0_ref = static_cast<double>(oracle::bessel_i_integral(0, x));
    const double i1_ref = static_cast<double>(oracle::bessel_i_integral(1, x));
    CHECK(std::abs(bessel_i0(x) - i0_ref) / i0_ref < 1e-10);
    CHECK(std::abs(bessel_i1(x) - i1_ref) / i1_ref < 1e-10);
  }
}

TEST_CASE("scaled bessel stays finite for large argument") {
  const double v = bessel_i0_scaled(800.0);
  CHECK(std::isfinite(v));
  CHECK(v == doctest::Approx(1.0 / std::sqrt(kTwoPi * 800.0)).epsilon(1e-3));
}

TEST_CASE("simpson quadrature") {
  CHECK(simpson([](double x) { return x * x; }, 0.0, 1.0, 100) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(simpson([](double x) { return std::sin(x); }, 0.0, 3.141592653589793, 2000) ==
        doctest::Approx(2.0).epsilon(1e-10));
}
