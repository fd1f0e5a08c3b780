#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "asdet/errors.hpp"
#include "asdet/spinorgeom.hpp"

namespace asdet {

/// Complex polynomial in t, coefficient k multiplies t^k. Exact trailing
/// zeros are trimmed, so the zero polynomial is the single constant 0.
class CPoly {
 public:
  CPoly() : coeffs_{Complex{}} {}
  CPoly(std::initializer_list<Complex> c) : coeffs_(c) { trim(); }
  explicit CPoly(std::vector<Complex> c) : coeffs_(std::move(c)) { trim(); }

  std::span<const Complex> coeffs() const { return coeffs_; }
  std::size_t degree() const { return coeffs_.size() - 1; }
  Complex operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Complex{}; }

  Complex operator()(Complex t) const {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  friend CPoly operator*(const CPoly& a, const CPoly& b) {
    std::vector<Complex> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return CPoly(std::move(out));
  }

  friend bool operator==(const CPoly&, const CPoly&) = default;

 private:
  void trim() {
    if (coeffs_.empty()) coeffs_.push_back(Complex{});
    while (coeffs_.size() > 1 && coeffs_.back() == Complex{}) coeffs_.pop_back();
  }

  std::vector<Complex> coeffs_;
};

/// u t - v
inline CPoly linear_factor(const Spinor& s) { return CPoly{-s.v, s.u}; }

inline CPoly poly_product(std::span<const CPoly> ps) {
  if (ps.empty()) throw InvalidInput("poly_product: empty factor list");
  CPoly acc = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) acc = acc * ps[i];
  return acc;
}

}  // namespace asdet
