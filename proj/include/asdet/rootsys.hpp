#pragma once

// Root systems A (of U(2m), covectors on Z^{2m} in the y basis) and
// C (of Sp(m), covectors on Z^m in the x basis), the folding map
// g: e_a -> v_{2a-1} - v_{2a}, and a check that g*(A) = C.
//
// Indices are 0-based internally: y_0..y_{2m-1}, x_0..x_{m-1}.

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "asdet/errors.hpp"

namespace asdet {

struct RootVector {
  std::vector<int> coords;

  friend auto operator<=>(const RootVector&, const RootVector&) = default;

  RootVector operator-() const {
    RootVector out{coords};
    for (int& c : out.coords) c = -c;
    return out;
  }
  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](int c) { return c == 0; });
  }
};

enum class RootSide { A, C };

struct RootMultiset {
  RootSide side = RootSide::A;
  int m = 0;
  std::map<RootVector, int> entries;

  std::size_t support_size() const { return entries.size(); }
  int total() const {
    int t = 0;
    for (const auto& [_, k] : entries) t += k;
    return t;
  }
  void add(RootVector r, int mult = 1) { entries[std::move(r)] += mult; }
  bool closed_under_negation() const {
    for (const auto& [r, k] : entries) {
      auto it = entries.find(-r);
      if (it == entries.end() || it->second != k) return false;
    }
    return true;
  }
};

inline void require_rank(int m) {
  if (m < 1) throw InvalidInput("root system rank m must be >= 1");
}

/// y_alpha - y_beta for alpha != beta in 1..2m.
inline RootMultiset roots_A(int m) {
  require_rank(m);
  RootMultiset out{RootSide::A, m, {}};
  const int n = 2 * m;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      RootVector r{std::vector<int>(n, 0)};
      r.coords[a] = 1;
      r.coords[b] = -1;
      out.add(std::move(r));
    }
  }
  return out;
}

/// +-x_a +-x_b (a < b) and +-2 x_a.
inline RootMultiset roots_C(int m) {
  require_rank(m);
  RootMultiset out{RootSide::C, m, {}};
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      for (int sa : {1, -1}) {
        for (int sb : {1, -1}) {
          RootVector r{std::vector<int>(m, 0)};
          r.coords[a] = sa;
          r.coords[b] = sb;
          out.add(std::move(r));
        }
      }
    }
    for (int s : {2, -2}) {
      RootVector r{std::vector<int>(m, 0)};
      r.coords[a] = s;
      out.add(std::move(r));
    }
  }
  return out;
}

inline bool is_long_root(const RootVector& r) {
  return std::count_if(r.coords.begin(), r.coords.end(), [](int c) { return c != 0; }) == 1;
}

/// The 2m x m integer matrix of g; column a is v_{2a-1} - v_{2a}.
struct FoldMap {
  int m = 0;
  std::vector<std::vector<int>> matrix;  // [row][col]

  explicit FoldMap(int rank) : m(rank) {
    require_rank(rank);
    matrix.assign(2 * m, std::vector<int>(m, 0));
    for (int a = 0; a < m; ++a) {
      matrix[2 * a][a] = 1;
      matrix[2 * a + 1][a] = -1;
    }
  }
};

/// (g* r)(e_a) = r(g e_a), i.e. r^T G.
inline RootVector pullback(const FoldMap& g, const RootVector& r) {
  if (r.coords.size() != static_cast<std::size_t>(2 * g.m)) {
    throw InvalidInput("pullback: covector length must be 2m");
  }
  RootVector out{std::vector<int>(g.m, 0)};
  for (int a = 0; a < g.m; ++a)
    for (int row = 0; row < 2 * g.m; ++row) out.coords[a] += r.coords[row] * g.matrix[row][a];
  return out;
}

inline RootMultiset pullback(const FoldMap& g, const RootMultiset& a_side) {
  if (a_side.side != RootSide::A || a_side.m != g.m) throw InvalidInput("pullback: expected A-side roots of rank m");
  RootMultiset out{RootSide::C, g.m, {}};
  for (const auto& [r, k] : a_side.entries) out.add(pullback(g, r), k);
  return out;
}

struct FoldReport {
  int m = 0;
  bool set_equal = false;
  bool zero_free = false;
  // Common multiplicity of every long (resp. short) root in the image,
  // -1 if they disagree, 0 if there are no roots of that length.
  int long_mult = 0;
  int short_mult = 0;
  int a_size = 0;
  int c_size = 0;

  bool pass() const {
    return set_equal && zero_free && long_mult == 1 && (m == 1 ? short_mult == 0 : short_mult == 2);
  }
};

inline FoldReport verify_fold(int m) {
  const FoldMap g(m);
  const RootMultiset a = roots_A(m);
  const RootMultiset c = roots_C(m);
  const RootMultiset image = pullback(g, a);

  FoldReport rep;
  rep.m = m;
  rep.a_size = a.total();
  rep.c_size = c.total();
  rep.zero_free = std::none_of(image.entries.begin(), image.entries.end(),
                               [](const auto& e) { return e.first.is_zero(); });
  rep.set_equal = image.entries.size() == c.entries.size() &&
                  std::equal(image.entries.begin(), image.entries.end(), c.entries.begin(),
                             [](const auto& x, const auto& y) { return x.first == y.first; });

  auto common = [](int& slot, int k) { slot = (slot == 0 || slot == k) ? k : -1; };
  for (const auto& [r, k] : image.entries) common(is_long_root(r) ? rep.long_mult : rep.short_mult, k);
  return rep;
}

}  // namespace asdet
