#pragma once

// Randomized and optimization-based search for configurations with |D| < 1
// (resp. |D_S| < 1). Results are reproducible from a master seed regardless
// of thread count: sample i always uses mix_seed(master, i) and reports are
// folded in index order.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "asdet/determinant.hpp"
#include "asdet/errors.hpp"
#include "asdet/simplex.hpp"
#include "asdet/spinorgeom.hpp"

namespace asdet {

enum class Kind { AS, Symplectic };

inline const char* to_string(Kind k) { return k == Kind::AS ? "AS" : "symplectic"; }

/// Records below 1 - kTolViolation are reported as putative counterexamples.
inline constexpr double kTolViolation = 1e-6;

struct ProbeRecord {
  Kind kind = Kind::AS;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  double abs_value = 0.0;
  double log_abs = 0.0;
  std::vector<double> coords;  // x1, y1, z1, x2, ...
  std::string method;          // "sample" or "minimize"
  int iterations = 0;
};

struct ProbeReport {
  Kind kind = Kind::AS;
  std::size_t size = 0;
  double tol_violation = kTolViolation;
  std::vector<ProbeRecord> records;
  std::size_t min_index = 0;
  std::size_t violations = 0;

  std::size_t samples() const { return records.size(); }
  const ProbeRecord& min_record() const { return records.at(min_index); }
};

/// splitmix64 finalizer applied to (master, index).
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs body(i) for i in [0, count) on up to `threads` workers, strided.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  const unsigned k = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1)));
  if (k <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (unsigned t = 0; t < k; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += k) body(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// Flattening

inline std::vector<double> flatten(std::span<const Point> pts) {
  std::vector<double> out;
  out.reserve(3 * pts.size());
  for (const auto& p : pts) out.insert(out.end(), {p.x1, p.x2, p.x3});
  return out;
}

inline std::vector<Point> unflatten(std::span<const double> xs) {
  if (xs.size() % 3 != 0) throw InvalidInput("coordinate list length must be a multiple of 3");
  std::vector<Point> out(xs.size() / 3);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {xs[3 * i], xs[3 * i + 1], xs[3 * i + 2]};
  return out;
}

/// The point set the guard is applied to: the configuration itself, or its doubling.
inline std::vector<Point> guarded_points(Kind kind, std::span<const double> coords) {
  auto pts = unflatten(coords);
  if (kind == Kind::AS) return pts;
  const Config doubled = ghat(SymplecticConfig(std::move(pts)));
  return {doubled.points().begin(), doubled.points().end()};
}

inline DetReport evaluate(Kind kind, std::span<const double> coords) {
  if (kind == Kind::AS) return eval_D(Config(unflatten(coords)));
  return eval_DS(SymplecticConfig(unflatten(coords)));
}

inline std::vector<double> random_coords(Kind kind, std::size_t size, std::uint64_t seed) {
  if (kind == Kind::AS) return flatten(random_config(size, seed).points());
  return flatten(random_symp_config(size, seed).points());
}

inline void require_probe_size(Kind kind, std::size_t size) {
  if (kind == Kind::AS && size < 2) throw InvalidInput("probe: n must be >= 2");
  if (kind == Kind::Symplectic && size < 1) throw InvalidInput("probe: m must be >= 1");
}

/// Index-ordered fold: the first record with the smallest |D| wins ties.
inline ProbeReport make_report(Kind kind, std::size_t size, std::vector<ProbeRecord> records, double tol_violation) {
  ProbeReport rep;
  rep.kind = kind;
  rep.size = size;
  rep.tol_violation = tol_violation;
  rep.records = std::move(records);
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    if (rep.records[i].abs_value < rep.records[rep.min_index].abs_value) rep.min_index = i;
    if (rep.records[i].abs_value < 1.0 - tol_violation) ++rep.violations;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Operations

inline ProbeReport sample_probe(Kind kind, std::size_t size, std::size_t samples, std::uint64_t master_seed,
                                unsigned threads = 0, double tol_violation = kTolViolation) {
  require_probe_size(kind, size);
  if (samples < 1) throw InvalidInput("probe: samples must be >= 1");
  std::vector<ProbeRecord> records(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    ProbeRecord& r = records[i];
    r.kind = kind;
    r.size = size;
    r.seed = mix_seed(master_seed, i);
    r.coords = random_coords(kind, size, r.seed);
    const DetReport d = evaluate(kind, r.coords);
    r.abs_value = d.abs;
    r.log_abs = d.log_abs();
    r.method = "sample";
    r.iterations = 1;
  });
  return make_report(kind, size, std::move(records), tol_violation);
}

/// Below this multiple of the guard ratio a quadratic penalty is added.
inline constexpr double kBarrierFactor = 10.0;

/// Simplex descent on |D| over flattened coordinates, starting from `start`.
/// The returned record is the guard-passing point of smallest |D| seen,
/// which includes the start itself.
inline ProbeRecord minimize_abs(Kind kind, std::span<const double> start, int budget, std::uint64_t seed) {
  if (budget < 1) throw InvalidInput("minimize: budget must be >= 1");
  const auto start_pts = guarded_points(kind, start);
  if (!passes_guard(start_pts)) throw DegenerateInput("minimize: start configuration fails the degeneracy guard");

  ProbeRecord best;
  best.kind = kind;
  best.size = start.size() / 3;
  best.seed = seed;
  best.method = "minimize";
  best.abs_value = std::numeric_limits<double>::infinity();

  const double barrier = kBarrierFactor * kGuardRatio;
  auto objective = [&](const std::vector<double>& x) {
    for (double c : x)
      if (!std::isfinite(c)) return std::numeric_limits<double>::infinity();
    const double ratio = separation_ratio(guarded_points(kind, x));
    if (!(ratio >= kGuardRatio)) return std::numeric_limits<double>::infinity();
    const DetReport d = evaluate(kind, x);
    if (d.abs < best.abs_value) {
      best.abs_value = d.abs;
      best.log_abs = d.log_abs();
      best.coords = x;
    }
    double f = d.abs;
    if (ratio < barrier) {
      const double gap = 1.0 - ratio / barrier;
      f += gap * gap;
    }
    return f;
  };

  SimplexOptions opt;
  opt.max_evals = budget;
  opt.seed = seed;
  opt.initial_step = 0.1 * std::max(diameter(start_pts), std::numeric_limits<double>::min());
  const SimplexResult res = nelder_mead(objective, std::vector<double>(start.begin(), start.end()), opt);
  best.iterations = res.evals;
  return best;
}

inline ProbeRecord minimize_abs(const Config& start, int budget, std::uint64_t seed) {
  return minimize_abs(Kind::AS, flatten(start.points()), budget, seed);
}

inline ProbeRecord minimize_abs(const SymplecticConfig& start, int budget, std::uint64_t seed) {
  return minimize_abs(Kind::Symplectic, flatten(start.points()), budget, seed);
}

/// `restarts` independent minimizations, run i starting from the random
/// configuration with seed mix_seed(master, i).
inline ProbeReport minimize_probe(Kind kind, std::size_t size, std::size_t restarts, int budget,
                                  std::uint64_t master_seed, unsigned threads = 0,
                                  double tol_violation = kTolViolation) {
  require_probe_size(kind, size);
  if (restarts < 1) throw InvalidInput("minimize: samples must be >= 1");
  std::vector<ProbeRecord> records(restarts);
  parallel_for(restarts, threads, [&](std::size_t i) {
    const std::uint64_t seed = mix_seed(master_seed, i);
    records[i] = minimize_abs(kind, random_coords(kind, size, seed), budget, seed);
  });
  return make_report(kind, size, std::move(records), tol_violation);
}

struct ReductionReport {
  std::size_t m = 0;
  std::size_t samples = 0;
  double max_rel_discrepancy = 0.0;
  std::uint64_t worst_seed = 0;
  double tol = 1e-9;

  bool pass() const { return max_rel_discrepancy <= tol; }
};

/// |D_S(x) / D(ghat(x)) - 1|, evaluated in scaled form.
inline double reduction_discrepancy(const SymplecticConfig& sc) {
  const DetReport ds = eval_DS(sc);
  const DetReport d = eval_D(ghat(sc));
  return std::abs((ds.value / d.value).value() - 1.0);
}

inline ReductionReport reduction_sweep(std::size_t m, std::size_t samples, std::uint64_t master_seed,
                                       unsigned threads = 0, double tol = 1e-9) {
  if (m < 1) throw InvalidInput("reduce-check: m must be >= 1");
  if (samples < 1) throw InvalidInput("reduce-check: samples must be >= 1");
  std::vector<double> disc(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    disc[i] = reduction_discrepancy(random_symp_config(m, mix_seed(master_seed, i)));
  });
  ReductionReport rep;
  rep.m = m;
  rep.samples = samples;
  rep.tol = tol;
  for (std::size_t i = 0; i < samples; ++i) {
    if (disc[i] > rep.max_rel_discrepancy || std::isnan(disc[i])) {
      rep.max_rel_discrepancy = std::isnan(disc[i]) ? INFINITY : disc[i];
      rep.worst_seed = mix_seed(master_seed, i);
    }
  }
  return rep;
}

}  // namespace asdet
