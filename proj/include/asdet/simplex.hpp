#pragma once

// Derivative-free Nelder-Mead descent with a hard evaluation budget.
// Vertices are ordered by (value, vertex index), so equal values never
// reorder nondeterministically. A collapsed simplex is rebuilt around the
// best point with fresh random steps drawn from the seeded generator.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace asdet {

struct SimplexOptions {
  int max_evals = 2000;
  double initial_step = 0.1;
  // Relative spread |f_worst - f_best| below which the simplex is rebuilt.
  double restart_spread = 1e-13;
  std::uint64_t seed = 0;
};

struct SimplexResult {
  std::vector<double> x;
  double f = std::numeric_limits<double>::infinity();
  int evals = 0;
  int restarts = 0;
};

template <class Objective>
SimplexResult nelder_mead(Objective&& objective, std::vector<double> x0, const SimplexOptions& opt) {
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
  const std::size_t dim = x0.size();
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> jitter(0.5, 1.5);
  std::bernoulli_distribution coin(0.5);

  SimplexResult best;
  best.x = x0;

  auto eval = [&](const std::vector<double>& x) {
    const double f = objective(x);
    ++best.evals;
    if (f < best.f) best.f = f, best.x = x;
    return f;
  };
  auto budget_left = [&] { return best.evals < opt.max_evals; };

  if (!budget_left()) return best;
  if (dim == 0) {
    eval(x0);
    return best;
  }

  std::vector<std::vector<double>> verts(dim + 1, x0);
  std::vector<double> fv(dim + 1, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> order(dim + 1);

  // Fills vertices 1..dim around verts[0]; returns false when the budget ran out.
  auto build = [&](double step) {
    for (std::size_t i = 1; i <= dim; ++i) {
      verts[i] = verts[0];
      verts[i][i - 1] += (coin(rng) ? step : -step) * jitter(rng);
      if (!budget_left()) return false;
      fv[i] = eval(verts[i]);
    }
    return true;
  };

  fv[0] = eval(verts[0]);
  if (!build(opt.initial_step)) return best;

  std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);
  auto blend = [&](std::vector<double>& out, const std::vector<double>& from, const std::vector<double>& to, double t) {
    for (std::size_t k = 0; k < dim; ++k) out[k] = from[k] + t * (to[k] - from[k]);
  };

  while (budget_left()) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t lo = order.front(), hi = order.back(), second = order[dim - 1];

    const double spread = std::abs(fv[hi] - fv[lo]);
    double extent = 0.0;
    for (std::size_t i = 0; i <= dim; ++i)
      for (std::size_t k = 0; k < dim; ++k) extent = std::max(extent, std::abs(verts[i][k] - verts[lo][k]));
    if (std::isfinite(fv[lo]) && (spread <= opt.restart_spread * std::max(1.0, std::abs(fv[lo])) || extent < 1e-12)) {
      ++best.restarts;
      verts[0] = best.x;
      fv[0] = best.f;
      if (!build(opt.initial_step)) break;
      continue;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == hi) continue;
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += verts[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    blend(xr, centroid, verts[hi], -kReflect);
    const double fr = eval(xr);
    if (fr < fv[lo]) {
      if (!budget_left()) {
        verts[hi] = xr, fv[hi] = fr;
        break;
      }
      blend(xe, centroid, verts[hi], -kExpand);
      const double fe = eval(xe);
      if (fe < fr) verts[hi] = xe, fv[hi] = fe;
      else verts[hi] = xr, fv[hi] = fr;
      continue;
    }
    if (fr < fv[second]) {
      verts[hi] = xr, fv[hi] = fr;
      continue;
    }
    if (!budget_left()) break;
    // Outside contraction if the reflected point improved on the worst, inside otherwise.
    const bool outside = fr < fv[hi];
    blend(xc, centroid, outside ? xr : verts[hi], kContract);
    const double fc = eval(xc);
    if (fc < (outside ? fr : fv[hi])) {
      verts[hi] = xc, fv[hi] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= dim && budget_left(); ++i) {
      if (i == lo) continue;
      blend(verts[i], verts[lo], verts[i], kShrink);
      fv[i] = eval(verts[i]);
    }
  }
  return best;
}

}  // namespace asdet
