#pragma once

#include <cmath>
#include <complex>

#include "asdet/errors.hpp"

namespace asdet {

/// phase * e^{logmag} with |phase| = 1, or an exact zero. Products and
/// quotients of many factors stay finite where plain doubles would overflow.
class ScaledComplex {
 public:
  ScaledComplex() = default;  // one

  static ScaledComplex zero() {
    ScaledComplex z;
    z.zero_ = true;
    z.phase_ = {};
    z.logmag_ = -INFINITY;
    return z;
  }

  static ScaledComplex from(std::complex<double> z) {
    const double r = std::abs(z);
    if (r == 0.0) return zero();
    return {z / r, std::log(r)};
  }

  static ScaledComplex from_parts(std::complex<double> phase, double logmag) {
    return {phase / std::abs(phase), logmag};
  }

  bool is_zero() const { return zero_; }
  std::complex<double> phase() const { return phase_; }
  double logmag() const { return logmag_; }
  double abs() const { return zero_ ? 0.0 : std::exp(logmag_); }
  std::complex<double> value() const { return zero_ ? std::complex<double>{} : phase_ * std::exp(logmag_); }

  ScaledComplex& operator*=(const ScaledComplex& o) {
    if (zero_ || o.zero_) return *this = zero();
    phase_ = renorm(phase_ * o.phase_);
    logmag_ += o.logmag_;
    return *this;
  }

  ScaledComplex& operator/=(const ScaledComplex& o) {
    if (o.zero_) throw DegenerateInput("division by an exact zero");
    if (zero_) return *this;
    phase_ = renorm(phase_ * std::conj(o.phase_));
    logmag_ -= o.logmag_;
    return *this;
  }

  friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) { return a *= b; }
  friend ScaledComplex operator/(ScaledComplex a, const ScaledComplex& b) { return a /= b; }

 private:
  ScaledComplex(std::complex<double> phase, double logmag) : phase_(phase), logmag_(logmag) {}

  static std::complex<double> renorm(std::complex<double> z) { return z / std::abs(z); }

  std::complex<double> phase_{1.0, 0.0};
  double logmag_ = 0.0;
  bool zero_ = false;
};

}  // namespace asdet
