#pragma once

// Independent brute-force oracles shared by the unit tests and the acceptance
// suite. None of these call into the library's algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using VSet = std::vector<std::uint32_t>;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Solves A x = b by Gaussian elimination with partial pivoting; false if singular.
inline bool solve(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
  const std::size_t m = b.size();
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < m; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (std::abs(a[p][c]) < 1e-12) return false;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < m; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < m; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  x.assign(m, 0.0);
  for (std::size_t c = m; c-- > 0;) {
    double s = b[c];
    for (std::size_t k = c + 1; k < m; ++k) s -= a[c][k] * x[k];
    x[c] = s / a[c][c];
  }
  return true;
}

// Circumcenter of the given points inside their affine hull.
inline bool circumcenter(const std::vector<Vec>& s, Vec& center) {
  const std::size_t m = s.size() - 1, d = s[0].size();
  if (m == 0) {
    center = s[0];
    return true;
  }
  std::vector<Vec> v(m, Vec(d));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) v[i][j] = s[i + 1][j] - s[0][j];
  std::vector<std::vector<double>> g(m, std::vector<double>(m));
  std::vector<double> rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) g[i][j] = 2.0 * std::inner_product(v[i].begin(), v[i].end(), v[j].begin(), 0.0);
    rhs[i] = std::inner_product(v[i].begin(), v[i].end(), v[i].begin(), 0.0);
  }
  std::vector<double> lam;
  if (!solve(g, rhs, lam)) return false;
  center = s[0];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) center[j] += lam[i] * v[i][j];
  return true;
}

// Minimum enclosing ball radius: smallest circumball over all support sets of
// at most d+1 points that contains every point.
inline double meb_radius(const std::vector<Vec>& pts) {
  const std::size_t n = pts.size(), d = pts[0].size();
  double best = kInf;
  const std::size_t max_support = std::min(n, d + 1);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > max_support) continue;
    std::vector<Vec> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) s.push_back(pts[i]);
    Vec c;
    if (!circumcenter(s, c)) continue;
    const double r = dist(c, s[0]);
    if (r >= best) continue;
    bool ok = true;
    for (const auto& p : pts) ok = ok && dist(c, p) <= r * (1.0 + 1e-10) + 1e-12;
    if (ok) best = r;
  }
  return best;
}

// All vertex subsets of size 1..k+1 (as sorted lists).
inline std::vector<VSet> subsets(std::uint32_t n, int k) {
  std::vector<VSet> out;
  VSet cur;
  auto rec = [&](auto&& self, std::uint32_t start) -> void {
    for (std::uint32_t i = start; i < n; ++i) {
      cur.push_back(i);
      out.push_back(cur);
      if (static_cast<int>(cur.size()) < k + 1) self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Exact Cech complex at alpha as a set of vertex sets.
inline std::set<VSet> cech_complex(const std::vector<Vec>& pts, int k, double alpha) {
  std::set<VSet> out;
  for (const auto& s : subsets(static_cast<std::uint32_t>(pts.size()), k)) {
    std::vector<Vec> sub;
    for (auto i : s) sub.push_back(pts[i]);
    if (meb_radius(sub) <= alpha) out.insert(s);
  }
  return out;
}

// Closed boxes have a common point iff max lo <= min hi in every coordinate.
inline bool boxes_meet(const std::vector<std::pair<Vec, Vec>>& boxes) {
  const std::size_t d = boxes[0].first.size();
  for (std::size_t i = 0; i < d; ++i) {
    double lo = -kInf, hi = kInf;
    for (const auto& [l, h] : boxes) {
      lo = std::max(lo, l[i]);
      hi = std::min(hi, h[i]);
    }
    if (lo > hi) return false;
  }
  return true;
}

// Cliques of size 1..k+1 of a graph given by an adjacency predicate.
template <typename Adj>
std::set<VSet> cliques(const VSet& vertices, Adj&& adj, int k) {
  std::set<VSet> out;
  VSet cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t i = start; i < vertices.size(); ++i) {
      bool ok = true;
      for (auto u : cur) ok = ok && adj(u, vertices[i]);
      if (!ok) continue;
      cur.push_back(vertices[i]);
      VSet sorted = cur;
      std::sort(sorted.begin(), sorted.end());
      out.insert(sorted);
      if (static_cast<int>(cur.size()) < k + 1) self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

struct UnionFind {
  std::map<std::uint32_t, std::uint32_t> parent;
  std::uint32_t find(std::uint32_t x) {
    if (!parent.count(x)) parent[x] = x;
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
  std::size_t components() {
    std::set<std::uint32_t> roots;
    for (auto& [x, p] : parent) roots.insert(find(x));
    return roots.size();
  }
};

struct Interval {
  int dim;
  double birth, death;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

// Textbook column reduction over Z/2 without any optimization. The input is a
// filtration in order; zero-length intervals are dropped, dims 0..k reported.
inline std::vector<Interval> reduce(const std::vector<std::pair<VSet, double>>& filt, int k) {
  std::map<VSet, std::size_t> index;
  for (std::size_t i = 0; i < filt.size(); ++i) index[filt[i].first] = i;
  const std::size_t n = filt.size();
  std::vector<std::vector<std::size_t>> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& s = filt[j].first;
    if (s.size() < 2) continue;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      VSet f;
      for (std::size_t t = 0; t < s.size(); ++t)
        if (t != drop) f.push_back(s[t]);
      col[j].push_back(index.at(f));
    }
    std::sort(col[j].begin(), col[j].end());
  }
  std::vector<long> low_owner(n, -1);
  std::vector<bool> paired(n, false);
  std::vector<Interval> out;
  for (std::size_t j = 0; j < n; ++j) {
    while (!col[j].empty()) {
      const std::size_t low = col[j].back();
      if (low_owner[low] < 0) break;
      std::vector<std::size_t> sum;
      const auto& other = col[static_cast<std::size_t>(low_owner[low])];
      std::set_symmetric_difference(col[j].begin(), col[j].end(), other.begin(), other.end(), std::back_inserter(sum));
      col[j] = std::move(sum);
    }
    if (!col[j].empty()) {
      const std::size_t low = col[j].back();
      low_owner[low] = static_cast<long>(j);
      paired[low] = paired[j] = true;
      const int dim = static_cast<int>(filt[low].first.size()) - 1;
      if (dim <= k && filt[low].second < filt[j].second) out.push_back({dim, filt[low].second, filt[j].second});
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const int dim = static_cast<int>(filt[j].first.size()) - 1;
    if (!paired[j] && dim <= k) out.push_back({dim, filt[j].second, kInf});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Bottleneck distance between two finite planar diagrams under the infinity
// norm with diagonal projection (y - x) / 2, by trying every bijection of the
// diagonal-augmented point sets.
inline double bottleneck_brute(const std::vector<std::pair<double, double>>& a,
                               const std::vector<std::pair<double, double>>& b) {
  const std::size_t m = a.size(), l = b.size(), n = m + l;
  auto diag = [](const std::pair<double, double>& p) { return (p.second - p.first) / 2.0; };
  // Slots 0..m-1 are points of a, m..n-1 are diagonal copies of b's points.
  auto cost = [&](std::size_t i, std::size_t j) {
    const bool ai = i < m, bj = j < l;
    if (ai && bj) return std::max(std::abs(a[i].first - b[j].first), std::abs(a[i].second - b[j].second));
    if (ai) return diag(a[i]);
    if (bj) return diag(b[j]);
    return 0.0;
  };
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = kInf;
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < n && worst < best; ++i) worst = std::max(worst, cost(i, perm[i]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return n == 0 ? 0.0 : best;
}

// Bottleneck between equally sized multisets of reals (no diagonal).
inline double matching_1d(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return kInf;
  std::sort(b.begin(), b.end());
  double best = kInf;
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return a.empty() ? 0.0 : best;
}

}  // namespace oracle
