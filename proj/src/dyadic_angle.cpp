#include "uqc/dyadic_angle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uqc/error.hpp"

namespace uqc {

namespace {

std::uint64_t mask_bits(int exponent) { return (std::uint64_t{1} << exponent) - 1; }

}  // namespace

DyadicAngle::DyadicAngle(std::int64_t numerator, int exponent) : numerator_(numerator), exponent_(exponent) {
  if (exponent < 1 || exponent > kMaxExponent) {
    throw GateError("dyadic exponent out of range [1, 62]: " + std::to_string(exponent));
  }
  normalize();
}

void DyadicAngle::normalize() {
  // Two's complement wraparound is exactly reduction mod 2^t.
  std::uint64_t c = static_cast<std::uint64_t>(numerator_) & mask_bits(exponent_);
  int t = exponent_;
  if (c == 0) {
    numerator_ = 0;
    exponent_ = 1;
    return;
  }
  while (t > 1 && (c & 1u) == 0) {
    c >>= 1;
    --t;
  }
  numerator_ = static_cast<std::int64_t>(c);
  exponent_ = t;
}

DyadicAngle DyadicAngle::operator-() const { return DyadicAngle(-numerator_, exponent_); }

DyadicAngle DyadicAngle::operator+(const DyadicAngle& other) const {
  const int t = std::max(exponent_, other.exponent_);
  const std::uint64_t a = static_cast<std::uint64_t>(numerator_) << (t - exponent_);
  const std::uint64_t b = static_cast<std::uint64_t>(other.numerator_) << (t - other.exponent_);
  return DyadicAngle(static_cast<std::int64_t>((a + b) & mask_bits(t)), t);
}

DyadicAngle DyadicAngle::scaled(std::int64_t factor) const {
  const std::uint64_t product = static_cast<std::uint64_t>(numerator_) * static_cast<std::uint64_t>(factor);
  return DyadicAngle(static_cast<std::int64_t>(product & mask_bits(exponent_)), exponent_);
}

DyadicAngle DyadicAngle::half() const {
  if (is_zero()) return *this;
  if (exponent_ >= kMaxExponent) throw GateError("cannot halve angle " + to_string() + ": exponent overflow");
  return DyadicAngle(numerator_, exponent_ + 1);
}

double DyadicAngle::radians() const {
  // Map to (-pi, pi] before scaling so small negative angles keep precision.
  std::int64_t c = numerator_;
  const std::int64_t half_turn = std::int64_t{1} << (exponent_ - 1);
  if (c > half_turn) c -= std::int64_t{1} << exponent_;
  return 2.0 * std::numbers::pi * std::ldexp(static_cast<double>(c), -exponent_);
}

std::complex<double> DyadicAngle::phasor() const {
  if (exponent_ <= 3) {
    const double r = std::numbers::sqrt2 / 2.0;
    static const std::complex<double> eighth[8] = {{1, 0}, {r, r},   {0, 1},  {-r, r},
                                                   {-1, 0}, {-r, -r}, {0, -1}, {r, -r}};
    return eighth[numerator_ << (3 - exponent_)];
  }
  const double a = radians();
  return {std::cos(a), std::sin(a)};
}

std::string DyadicAngle::to_string() const {
  return std::to_string(numerator_) + "/2^" + std::to_string(exponent_);
}

}  // namespace uqc
