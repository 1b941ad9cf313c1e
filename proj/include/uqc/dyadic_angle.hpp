#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace uqc {

/// Exact phase 2*pi*c/2^t with t >= 1.
///
/// Values are kept in lowest terms: 0 <= c < 2^t and c is odd unless the
/// angle is zero, in which case (c, t) = (0, 1). Two angles denote the same
/// physical phase iff they compare equal.
class DyadicAngle {
 public:
  static constexpr int kMaxExponent = 62;

  constexpr DyadicAngle() = default;
  DyadicAngle(std::int64_t numerator, int exponent);

  static DyadicAngle zero() { return DyadicAngle(); }
  /// The angle pi, i.e. the Z gate phase.
  static DyadicAngle pi() { return DyadicAngle(1, 1); }
  /// 2*pi/2^t.
  static DyadicAngle unit(int exponent) { return DyadicAngle(1, exponent); }

  std::int64_t numerator() const { return numerator_; }
  int exponent() const { return exponent_; }
  bool is_zero() const { return numerator_ == 0; }

  DyadicAngle operator-() const;
  DyadicAngle operator+(const DyadicAngle& other) const;
  DyadicAngle operator-(const DyadicAngle& other) const { return *this + (-other); }
  /// Multiply by an integer (the c_t coefficients of a Fourier expansion).
  DyadicAngle scaled(std::int64_t factor) const;
  DyadicAngle half() const;

  double radians() const;
  /// e^{i*angle}, with the eighth roots of unity returned exactly.
  std::complex<double> phasor() const;

  /// "c/2^t".
  std::string to_string() const;

  friend bool operator==(const DyadicAngle&, const DyadicAngle&) = default;

 private:
  void normalize();

  std::int64_t numerator_ = 0;
  int exponent_ = 1;
};

}  // namespace uqc
