#pragma once

// Points in R^3, plain and antipodal-symmetric configurations, the Hopf map
// C^2 \ {0} -> R^3 \ {0} with a deterministic lift, and configuration
// transforms used by the invariance tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "asdet/errors.hpp"

namespace asdet {

using Complex = std::complex<double>;

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  friend bool operator==(const Point&, const Point&) = default;

  Point operator-() const { return {-x1, -x2, -x3}; }
  friend Point operator+(const Point& a, const Point& b) {
    return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
  }
  friend Point operator-(const Point& a, const Point& b) {
    return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
  }
  friend Point operator*(double s, const Point& p) { return {s * p.x1, s * p.x2, s * p.x3}; }

  double norm() const { return std::hypot(x1, x2, x3); }
  bool finite() const { return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3); }
  bool is_zero() const { return x1 == 0.0 && x2 == 0.0 && x3 == 0.0; }
};

namespace detail {

inline void require_finite(std::span<const Point> pts) {
  for (const auto& p : pts) {
    if (!p.finite()) throw InvalidInput("configuration has a non-finite coordinate");
  }
}

}  // namespace detail

/// Ordered tuple of n >= 2 points. Distinctness is enforced by the
/// degeneracy guard at evaluation time, not here.
class Config {
 public:
  explicit Config(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw InvalidInput("a configuration needs at least 2 points");
    detail::require_finite(points_);
  }

  std::size_t size() const { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const { return points_; }

  friend bool operator==(const Config&, const Config&) = default;

 private:
  std::vector<Point> points_;
};

/// The points x_1..x_m of an antipodal-symmetric configuration. The signed
/// points are x_a and -x_a; validity (x_a != 0, x_a +- x_b != 0) is checked
/// through the degeneracy guard on the doubled configuration.
class SymplecticConfig {
 public:
  explicit SymplecticConfig(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty()) throw InvalidInput("a symplectic configuration needs m >= 1 points");
    detail::require_finite(points_);
  }

  std::size_t size() const { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const { return points_; }

  friend bool operator==(const SymplecticConfig&, const SymplecticConfig&) = default;

 private:
  std::vector<Point> points_;
};

/// Element of the index set {1, 1bar, ..., m, mbar}, ordered
/// 1 < 1bar < 2 < 2bar < ... (lexicographic on (base, barred)).
struct SympIndex {
  int base = 1;  // 1-based
  bool barred = false;

  friend auto operator<=>(const SympIndex&, const SympIndex&) = default;
};

/// All 2m indices in increasing order.
inline std::vector<SympIndex> symp_indices(std::size_t m) {
  std::vector<SympIndex> out;
  out.reserve(2 * m);
  for (int a = 1; a <= static_cast<int>(m); ++a) {
    out.push_back({a, false});
    out.push_back({a, true});
  }
  return out;
}

/// x_alpha: x_a for alpha = a, -x_a for alpha = abar.
inline Point signed_point(const SymplecticConfig& sc, SympIndex alpha) {
  if (alpha.base < 1 || alpha.base > static_cast<int>(sc.size())) {
    throw InvalidInput("symplectic index out of range");
  }
  const Point& p = sc[static_cast<std::size_t>(alpha.base - 1)];
  return alpha.barred ? -p : p;
}

struct Spinor {
  Complex u;
  Complex v;

  friend bool operator==(const Spinor&, const Spinor&) = default;
  bool is_zero() const { return u == Complex{} && v == Complex{}; }
};

/// h(u, v) = (2 u conj(v), |u|^2 - |v|^2) with C identified with R^2.
inline Point hopf(const Spinor& s) {
  if (s.is_zero()) throw InvalidInput("hopf: zero spinor");
  const Complex w = 2.0 * s.u * std::conj(s.v);
  return {w.real(), w.imag(), std::norm(s.u) - std::norm(s.v)};
}

/// Deterministic Hopf lift with |u|^2 + |v|^2 = |p|. Northern branch
/// (real u) for x3 >= 0, southern branch (real v) otherwise.
inline Spinor lift(const Point& p) {
  if (p.is_zero()) throw InvalidInput("lift: zero vector");
  const double r = p.norm();
  const Complex zeta{p.x1, p.x2};
  if (p.x3 >= 0.0) {
    const double u = std::sqrt(0.5 * (r + p.x3));
    return {Complex{u, 0.0}, std::conj(zeta) / (2.0 * u)};
  }
  const double v = std::sqrt(0.5 * (r - p.x3));
  return {zeta / (2.0 * v), Complex{v, 0.0}};
}

/// Multiplies both components by e^{i theta}; the Hopf image is unchanged.
inline Spinor gauge(const Spinor& s, double theta) {
  const Complex lambda = std::polar(1.0, theta);
  return {lambda * s.u, lambda * s.v};
}

/// Doubling map (x_1, -x_1, ..., x_m, -x_m), ordered like the symplectic index set.
inline Config ghat(const SymplecticConfig& sc) {
  std::vector<Point> out;
  out.reserve(2 * sc.size());
  for (const auto& p : sc.points()) {
    out.push_back(p);
    out.push_back(-p);
  }
  return Config(std::move(out));
}

// ---------------------------------------------------------------------------
// Degeneracy guard

/// Relative separation below which a configuration is rejected.
inline constexpr double kGuardRatio = 1e-9;

inline double min_pairwise_distance(std::span<const Point> pts) {
  double best = INFINITY;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) best = std::min(best, (pts[b] - pts[a]).norm());
  return best;
}

inline double diameter(std::span<const Point> pts) {
  double best = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) best = std::max(best, (pts[b] - pts[a]).norm());
  return best;
}

/// min pairwise distance / diameter; 0 for any coincidence.
inline double separation_ratio(std::span<const Point> pts) {
  const double d = diameter(pts);
  if (!(d > 0.0)) return 0.0;
  return min_pairwise_distance(pts) / d;
}

inline bool passes_guard(std::span<const Point> pts) {
  return pts.size() >= 2 && separation_ratio(pts) >= kGuardRatio;
}
inline bool passes_guard(const Config& c) { return passes_guard(c.points()); }
inline bool passes_guard(const SymplecticConfig& sc) { return passes_guard(ghat(sc).points()); }

// ---------------------------------------------------------------------------
// Transforms

using Matrix3 = std::array<std::array<double, 3>, 3>;

inline constexpr Matrix3 kIdentity3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

inline Point rotate(const Matrix3& r, const Point& p) {
  return {r[0][0] * p.x1 + r[0][1] * p.x2 + r[0][2] * p.x3,
          r[1][0] * p.x1 + r[1][1] * p.x2 + r[1][2] * p.x3,
          r[2][0] * p.x1 + r[2][1] * p.x2 + r[2][2] * p.x3};
}

namespace detail {

inline void require_rotation(const Matrix3& r) {
  constexpr double tol = 1e-12;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += r[k][i] * r[k][j];
      if (std::abs(dot - (i == j ? 1.0 : 0.0)) > tol) throw InvalidInput("rotation is not orthogonal");
    }
  }
  const double det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
                     r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
                     r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
  if (std::abs(det - 1.0) > tol) throw InvalidInput("rotation must have determinant +1");
}

inline void require_permutation(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.empty()) return;
  if (perm.size() != n) throw InvalidInput("permutation has the wrong length");
  std::vector<bool> seen(n, false);
  for (std::size_t i : perm) {
    if (i >= n || seen[i]) throw InvalidInput("permutation is not a bijection");
    seen[i] = true;
  }
}

}  // namespace detail

/// x_i -> scale * R * x_{perm[i]} + translation. An empty permutation is the
/// identity; permutation entries are 0-based.
struct Transform {
  Point translation{};
  Matrix3 rotation = kIdentity3;
  double scale = 1.0;
  std::vector<std::size_t> permutation;
};

inline Config transform(const Config& c, const Transform& t) {
  detail::require_rotation(t.rotation);
  if (!(t.scale > 0.0) || !std::isfinite(t.scale)) throw InvalidInput("scale must be positive");
  detail::require_permutation(t.permutation, c.size());
  std::vector<Point> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Point& src = c[t.permutation.empty() ? i : t.permutation[i]];
    out[i] = t.scale * rotate(t.rotation, src) + t.translation;
  }
  return Config(std::move(out));
}

/// Symmetries of the symplectic setting: no translation, but each x_a may be
/// negated (signs[a] = true flips it) after index permutation.
struct SympTransform {
  Matrix3 rotation = kIdentity3;
  double scale = 1.0;
  std::vector<std::size_t> permutation;
  std::vector<bool> flips;
};

inline SymplecticConfig transform(const SymplecticConfig& sc, const SympTransform& t) {
  detail::require_rotation(t.rotation);
  if (!(t.scale > 0.0) || !std::isfinite(t.scale)) throw InvalidInput("scale must be positive");
  detail::require_permutation(t.permutation, sc.size());
  if (!t.flips.empty() && t.flips.size() != sc.size()) throw InvalidInput("flip mask has the wrong length");
  std::vector<Point> out(sc.size());
  for (std::size_t i = 0; i < sc.size(); ++i) {
    Point p = sc[t.permutation.empty() ? i : t.permutation[i]];
    if (!t.flips.empty() && t.flips[i]) p = -p;
    out[i] = t.scale * rotate(t.rotation, p);
  }
  return SymplecticConfig(std::move(out));
}

// ---------------------------------------------------------------------------
// Random sampling

/// Uniform rotation from a normalized Gaussian quaternion.
template <class Rng>
Matrix3 random_rotation(Rng& rng) {
  std::normal_distribution<double> gauss;
  double w = 0, x = 0, y = 0, z = 0, n = 0;
  while (!(n > 1e-6)) {
    w = gauss(rng), x = gauss(rng), y = gauss(rng), z = gauss(rng);
    n = std::sqrt(w * w + x * x + y * y + z * z);
  }
  w /= n, x /= n, y /= n, z /= n;
  return Matrix3{{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
                  {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
                  {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
}

template <class Rng>
Point random_point(Rng& rng) {
  std::normal_distribution<double> gauss;
  const double a = gauss(rng);
  const double b = gauss(rng);
  const double c = gauss(rng);
  return {a, b, c};
}

inline constexpr int kMaxResample = 1000;

/// n i.i.d. standard normal points; resampled until the guard passes.
inline Config random_config(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("random_config: n must be >= 2");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    std::vector<Point> pts(n);
    for (auto& p : pts) p = random_point(rng);
    if (passes_guard(pts)) return Config(std::move(pts));
  }
  throw std::runtime_error("random_config: resampling limit reached");
}

inline SymplecticConfig random_symp_config(std::size_t m, std::uint64_t seed) {
  if (m < 1) throw InvalidInput("random_symp_config: m must be >= 1");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    std::vector<Point> pts(m);
    for (auto& p : pts) p = random_point(rng);
    SymplecticConfig sc(std::move(pts));
    if (passes_guard(sc)) return sc;
  }
  throw std::runtime_error("random_symp_config: resampling limit reached");
}

}  // namespace asdet
