#include <doctest.h>

#include <cmath>
#include <numbers>

#include "uqc/dyadic_angle.hpp"
#include "uqc/error.hpp"

using uqc::DyadicAngle;

TEST_CASE("dyadic angles are stored in lowest terms") {
  CHECK(DyadicAngle(2, 3) == DyadicAngle(1, 2));
  CHECK(DyadicAngle(4, 2) == DyadicAngle::zero());
  CHECK(DyadicAngle(-1, 2) == DyadicAngle(3, 2));
  CHECK(DyadicAngle(6, 3).numerator() == 3);
  CHECK(DyadicAngle(6, 3).exponent() == 2);
  CHECK(DyadicAngle(0, 7).exponent() == 1);
  CHECK_THROWS_AS(DyadicAngle(1, 0), uqc::GateError);
  CHECK_THROWS_AS(DyadicAngle(1, 63), uqc::GateError);
}

TEST_CASE("dyadic arithmetic is exact modulo a full turn") {
  const DyadicAngle a(3, 4), b(5, 3);
  CHECK(a + b == DyadicAngle(13, 4));
  CHECK(a + (-a) == DyadicAngle::zero());
  CHECK(a - a == DyadicAngle::zero());
  CHECK(DyadicAngle(1, 1) + DyadicAngle(1, 1) == DyadicAngle::zero());
  CHECK(DyadicAngle(1, 3).scaled(-3) == DyadicAngle(5, 3));
  CHECK(DyadicAngle(1, 3).scaled(8) == DyadicAngle::zero());
  CHECK(DyadicAngle(1, 2).half() == DyadicAngle(1, 3));
  CHECK(DyadicAngle(1, 2).half().half() + DyadicAngle(1, 2).half().half() == DyadicAngle(1, 3));
  CHECK(DyadicAngle(1, 62) + DyadicAngle(-1, 62) == DyadicAngle::zero());
  CHECK_THROWS_AS(DyadicAngle(1, 62).half(), uqc::GateError);
}

TEST_CASE("phasor and radians") {
  CHECK(DyadicAngle(1, 2).phasor() == std::complex<double>(0, 1));
  CHECK(DyadicAngle::pi().phasor() == std::complex<double>(-1, 0));
  CHECK(DyadicAngle(7, 3).radians() == doctest::Approx(-std::numbers::pi / 4));
  for (int t = 1; t <= 10; ++t) {
    for (std::int64_t c = 0; c < (1 << t); c += 3) {
      const DyadicAngle a(c, t);
      const double phi = 2 * std::numbers::pi * static_cast<double>(c) / std::pow(2.0, t);
      CHECK(std::abs(a.phasor() - std::polar(1.0, phi)) < 1e-14);
    }
  }
  CHECK(DyadicAngle(3, 4).to_string() == "3/2^4");
}
