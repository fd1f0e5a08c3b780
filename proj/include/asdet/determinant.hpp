#pragma once

// The normalized determinant of a point configuration:
//
//   D(x) = det(p_1, ..., p_n) / prod_{a<b} det(p_ab, p_ba),
//   p_ab(t) = u_ab t - v_ab,   p_a = prod_{b != a} p_ab,
//
// where (u_ab, v_ab) is a Hopf lift of x_b - x_a and (p_1, ..., p_n) is the
// matrix whose j-th column holds the coefficients of p_j in increasing powers
// of t. Everything is accumulated in ScaledComplex.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "asdet/cpoly.hpp"
#include "asdet/errors.hpp"
#include "asdet/scaled_complex.hpp"
#include "asdet/spinorgeom.hpp"

namespace asdet {

/// Dense square complex matrix, row-major.
class CMatrix {
 public:
  explicit CMatrix(std::size_t n) : n_(n), a_(n * n) {}
  CMatrix(std::size_t n, std::initializer_list<Complex> row_major) : n_(n), a_(row_major) {
    if (a_.size() != n * n) throw InvalidInput("CMatrix: wrong number of entries");
  }

  std::size_t size() const { return n_; }
  Complex& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

 private:
  std::size_t n_;
  std::vector<Complex> a_;
};

/// Column j = coefficients of ps[j] padded to length n, row k = coefficient of t^k.
inline CMatrix coeff_matrix(std::span<const CPoly> ps, std::size_t n) {
  if (ps.size() != n) throw InvalidInput("coeff_matrix: need exactly n polynomials");
  CMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (ps[j].degree() + 1 > n) throw InvalidInput("coeff_matrix: polynomial degree exceeds n - 1");
    for (std::size_t k = 0; k <= ps[j].degree(); ++k) m(k, j) = ps[j][k];
  }
  return m;
}

struct LogDet {
  ScaledComplex value;
  double cond_hint = 1.0;  // max |pivot| / min |pivot|; infinite when singular
};

/// LU with partial pivoting. Columns are first rescaled by exact powers of two
/// so that no entry exceeds 1 in magnitude; the scale is folded into logmag.
inline LogDet scaled_det(CMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return {};
  double log_scale = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    double big = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag()))
        throw InvalidInput("scaled_det: non-finite entry");
      big = std::max(big, std::abs(m(r, c)));
    }
    if (big == 0.0) return {ScaledComplex::zero(), std::numeric_limits<double>::infinity()};
    int e = 0;
    std::frexp(big, &e);
    for (std::size_t r = 0; r < n; ++r) {
      m(r, c) = Complex{std::ldexp(m(r, c).real(), -e), std::ldexp(m(r, c).imag(), -e)};
    }
    log_scale += e * std::log(2.0);
  }

  ScaledComplex det;
  double pmax = 0.0;
  double pmin = std::numeric_limits<double>::infinity();
  bool odd = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(m(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double v = std::abs(m(r, k));
      if (v > best) best = v, piv = r;
    }
    if (best == 0.0) return {ScaledComplex::zero(), std::numeric_limits<double>::infinity()};
    if (piv != k) {
      for (std::size_t c = k; c < n; ++c) std::swap(m(k, c), m(piv, c));
      odd = !odd;
    }
    pmax = std::max(pmax, best);
    pmin = std::min(pmin, best);
    const Complex pivot = m(k, k);
    det *= ScaledComplex::from(pivot);
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex f = m(r, k) / pivot;
      if (f == Complex{}) continue;
      for (std::size_t c = k + 1; c < n; ++c) m(r, c) -= f * m(k, c);
    }
  }
  if (odd) det *= ScaledComplex::from(-1.0);
  det *= ScaledComplex::from_parts(1.0, log_scale);
  return {det, pmax / pmin};
}

/// det [[-v_ab, -v_ba], [u_ab, u_ba]] = u_ab v_ba - v_ab u_ba.
inline ScaledComplex pair_det(const Spinor& ab, const Spinor& ba) {
  return ScaledComplex::from(ab.u * ba.v - ab.v * ba.u);
}

struct DetReport {
  ScaledComplex value;
  ScaledComplex numerator;
  ScaledComplex denominator;
  double abs = 0.0;
  double cond_hint = 1.0;

  double log_abs() const { return value.logmag(); }
};

/// Supplies the Hopf lift of x_b - x_a for the ordered pair (a, b).
template <class F>
concept LiftProvider = std::invocable<F, std::size_t, std::size_t, const Point&> &&
    std::convertible_to<std::invoke_result_t<F, std::size_t, std::size_t, const Point&>, Spinor>;

struct DefaultLift {
  Spinor operator()(std::size_t, std::size_t, const Point& d) const { return lift(d); }
};

namespace detail {

template <LiftProvider Lift>
DetReport normalized_determinant(std::span<const Point> pts, Lift&& lift_of) {
  const std::size_t n = pts.size();
  if (!passes_guard(pts)) throw DegenerateInput("configuration fails the degeneracy guard");

  std::vector<Spinor> lifts(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) lifts[a * n + b] = lift_of(a, b, pts[b] - pts[a]);

  std::vector<CPoly> cols;
  cols.reserve(n);
  std::vector<CPoly> factors;
  for (std::size_t a = 0; a < n; ++a) {
    factors.clear();
    for (std::size_t b = 0; b < n; ++b)
      if (b != a) factors.push_back(linear_factor(lifts[a * n + b]));
    cols.push_back(poly_product(factors));
  }

  DetReport rep;
  const LogDet num = scaled_det(coeff_matrix(cols, n));
  rep.numerator = num.value;
  rep.cond_hint = num.cond_hint;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) rep.denominator *= pair_det(lifts[a * n + b], lifts[b * n + a]);
  rep.value = rep.numerator / rep.denominator;
  rep.abs = rep.value.abs();
  return rep;
}

}  // namespace detail

/// Normalized determinant D of a configuration. Any lift provider gives the
/// same value up to rounding; the default uses lift().
template <LiftProvider Lift = DefaultLift>
DetReport eval_D(const Config& c, Lift&& lift_of = {}) {
  return detail::normalized_determinant(c.points(), std::forward<Lift>(lift_of));
}

/// Symplectic analogue D_S over the signed points x_alpha, alpha running
/// through 1 < 1bar < ... < m < mbar. Lift provider indices are positions in
/// that order.
template <LiftProvider Lift = DefaultLift>
DetReport eval_DS(const SymplecticConfig& sc, Lift&& lift_of = {}) {
  const auto idx = symp_indices(sc.size());
  std::vector<Point> signed_pts;
  signed_pts.reserve(idx.size());
  for (const auto& alpha : idx) signed_pts.push_back(signed_point(sc, alpha));
  return detail::normalized_determinant(std::span<const Point>(signed_pts), std::forward<Lift>(lift_of));
}

}  // namespace asdet
