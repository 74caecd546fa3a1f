#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "cavityfm/specfun.hpp"
#include "support/bessel_oracle.hpp"

using namespace cavityfm::specfun;

namespace {

bool close(double got, double ref, double rel = 1e-12, double abs_tol = 1e-14) {
  return std::abs(got - ref) <= rel * std::abs(ref) + abs_tol;
}

}  // namespace

TEST_CASE("values at the origin") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(1, 0.0) == 0.0);
}

TEST_CASE("reference values at one") {
  CHECK(bessel_j(0, 1.0) == doctest::Approx(0.765197686557967).epsilon(1e-14));
  CHECK(bessel_y(0, 1.0) == doctest::Approx(0.088256964215677).epsilon(1e-13));
  const auto h = hankel1(0, 1.0);
  CHECK(h.real() == doctest::Approx(0.765197686557967).epsilon(1e-14));
  CHECK(h.imag() == doctest::Approx(0.088256964215677).epsilon(1e-13));
}

TEST_CASE("small-argument logarithmic behaviour") {
  CHECK(std::abs(bessel_y(1, 1e-6) / (-2.0 / (std::numbers::pi * 1e-6)) - 1.0) < 1e-6);
  const double expected = (2.0 / std::numbers::pi) * (std::log(0.5e-8) + std::numbers::egamma);
  CHECK(std::abs(bessel_y(0, 1e-8) - expected) < 1e-10);
}

TEST_CASE("agreement with the 100-digit series across (1e-6, 100]") {
  for (int i = 1; i <= 400; ++i) {
    const double x = std::pow(10.0, -6.0 + 8.0 * i / 400.0);
    const auto ref = oracle::bessel_series(x);
    const auto got = cylinder_set(x);
    INFO("x = " << x);
    CHECK(close(got.j0, ref.j0));
    CHECK(close(got.j1, ref.j1));
    CHECK(close(got.y0, ref.y0));
    CHECK(close(got.y1, ref.y1));
  }
}

TEST_CASE("branch switch points are seamless") {
  for (double x : {2.0, std::nextafter(2.0, 3.0), 25.0, std::nextafter(25.0, 26.0)}) {
    const auto ref = oracle::bessel_series(x);
    const auto got = cylinder_set(x);
    CHECK(close(got.j0, ref.j0));
    CHECK(close(got.j1, ref.j1));
    CHECK(close(got.y0, ref.y0));
    CHECK(close(got.y1, ref.y1));
  }
}

TEST_CASE("Wronskian") {
  for (double x : {0.1, 1.0, 10.0, 50.0}) {
    const auto v = cylinder_set(x);
    const double w = v.j1 * v.y0 - v.j0 * v.y1;
    CHECK(std::abs(w / (2.0 / (std::numbers::pi * x)) - 1.0) < 1e-10);
  }
}

TEST_CASE("Hankel is J + iY bitwise") {
  for (double x : {1e-3, 0.7, 3.3, 19.0, 77.0}) {
    for (int n = 0; n <= 1; ++n) {
      const auto h = hankel1(n, x);
      CHECK(h.real() == bessel_j(n, x));
      CHECK(h.imag() == bessel_y(n, x));
      CHECK(std::norm(h) == doctest::Approx(bessel_j(n, x) * bessel_j(n, x) + bessel_y(n, x) * bessel_y(n, x)));
    }
  }
}

TEST_CASE("derivative of H0 is -H1") {
  for (double x : {0.5, 2.0, 20.0}) {
    const double h = 1e-5 * x;
    const auto fd = (hankel1(0, x + h) - hankel1(0, x - h)) / (2.0 * h);
    CHECK(std::abs(fd + hankel1(1, x)) <= 1e-6 * std::abs(hankel1(1, x)));
  }
}

TEST_CASE("domain errors") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(bessel_j(0, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(1, nan), DomainError);
  CHECK_THROWS_AS(bessel_j(0, inf), DomainError);
  CHECK_THROWS_AS(bessel_y(0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_y(1, -2.0), DomainError);
  CHECK_THROWS_AS(hankel1(0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_j(2, 1.0), DomainError);
}
