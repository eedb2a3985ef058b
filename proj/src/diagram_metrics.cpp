#include "cechpix/diagram_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "cechpix/errors.hpp"
#include "json.hpp"

namespace cechpix {

namespace {

struct LogPoint {
  double x, y;
};

// Maximum bipartite matching by augmenting paths.
class Matcher {
 public:
  explicit Matcher(std::size_t left, std::size_t right) : adj_(left), match_right_(right, -1) {}
  void edge(std::size_t l, std::size_t r) { adj_[l].push_back(static_cast<int>(r)); }
  std::size_t solve() {
    std::size_t size = 0;
    match_left_.assign(adj_.size(), -1);
    for (std::size_t l = 0; l < adj_.size(); ++l) {
      seen_.assign(match_right_.size(), 0);
      if (augment(static_cast<int>(l))) ++size;
    }
    return size;
  }
  int partner(std::size_t l) const { return match_left_[l]; }

 private:
  bool augment(int l) {
    for (int r : adj_[static_cast<std::size_t>(l)]) {
      if (seen_[static_cast<std::size_t>(r)]) continue;
      seen_[static_cast<std::size_t>(r)] = 1;
      if (match_right_[static_cast<std::size_t>(r)] < 0 || augment(match_right_[static_cast<std::size_t>(r)])) {
        match_right_[static_cast<std::size_t>(r)] = l;
        match_left_[static_cast<std::size_t>(l)] = r;
        return true;
      }
    }
    return false;
  }
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_right_, match_left_;
  std::vector<std::uint8_t> seen_;
};

double pair_cost(const LogPoint& a, const LogPoint& b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }
double diag_cost(const LogPoint& a) { return (a.y - a.x) / 2.0; }

// Bottleneck with diagonal for planar log points.
BottleneckResult planar_bottleneck(const std::vector<LogPoint>& A, const std::vector<LogPoint>& B) {
  const std::size_t m = A.size(), n = B.size();
  std::vector<double> cand{0.0};
  for (const auto& a : A) cand.push_back(diag_cost(a));
  for (const auto& b : B) cand.push_back(diag_cost(b));
  for (const auto& a : A)
    for (const auto& b : B) cand.push_back(pair_cost(a, b));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  // Left: A then diagonal copies of B. Right: B then diagonal copies of A.
  auto build = [&](double t) {
    Matcher mt(m + n, n + m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (pair_cost(A[i], B[j]) <= t) mt.edge(i, j);
      if (diag_cost(A[i]) <= t) mt.edge(i, n + i);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (diag_cost(B[j]) <= t) mt.edge(m + j, j);
      for (std::size_t i = 0; i < m; ++i) mt.edge(m + j, n + i);
    }
    return mt;
  };
  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto mt = build(cand[mid]);
    if (mt.solve() == m + n)
      hi = mid;
    else
      lo = mid + 1;
  }
  BottleneckResult r;
  r.value = cand[lo];
  auto mt = build(r.value);
  mt.solve();
  for (std::size_t i = 0; i < m; ++i) {
    if (mt.partner(i) < static_cast<int>(n))
      ++r.matched;
    else
      ++r.to_diagonal;
  }
  for (std::size_t j = 0; j < n; ++j)
    if (mt.partner(m + j) < static_cast<int>(n)) ++r.to_diagonal;
  return r;
}

// Optimal bottleneck matching of two equal-size multisets of reals.
double sorted_match(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double checked_log(double v) {
  if (!(v > 0)) throw ValidationError("log-scale comparison needs positive values, got " + std::to_string(v));
  return std::log(v);
}

}  // namespace

BottleneckResult log_bottleneck_detail(const PersistenceDiagram& a, const PersistenceDiagram& b, int q) {
  std::vector<double> ess_a, ess_b;
  std::vector<LogPoint> fin_a, fin_b;
  std::vector<double> deaths_a, deaths_b;
  auto split = [&](const PersistenceDiagram& d, std::vector<double>& ess, std::vector<LogPoint>& fin,
                   std::vector<double>& deaths) {
    for (const auto& p : d.points) {
      if (p.dim != q) continue;
      if (p.essential()) {
        ess.push_back(q == 0 ? 0.0 : checked_log(p.birth));
      } else if (q == 0) {
        deaths.push_back(checked_log(p.death));
      } else {
        fin.push_back({checked_log(p.birth), checked_log(p.death)});
      }
    }
  };
  split(a, ess_a, fin_a, deaths_a);
  split(b, ess_b, fin_b, deaths_b);
  BottleneckResult r;
  if (ess_a.size() != ess_b.size() || deaths_a.size() != deaths_b.size()) {
    r.value = kInfinity;
    return r;
  }
  r.value = std::max(sorted_match(ess_a, ess_b), sorted_match(deaths_a, deaths_b));
  r.matched = ess_a.size() + deaths_a.size();
  if (!fin_a.empty() || !fin_b.empty()) {
    BottleneckResult p = planar_bottleneck(fin_a, fin_b);
    r.value = std::max(r.value, p.value);
    r.matched += p.matched;
    r.to_diagonal += p.to_diagonal;
  }
  return r;
}

double log_bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int q) {
  return log_bottleneck_detail(a, b, q).value;
}

bool InterleavingReport::pass() const {
  return std::all_of(per_dim.begin(), per_dim.end(), [](const auto& c) { return c.pass; });
}

InterleavingReport check_interleaving(const PersistenceDiagram& approx, const PersistenceDiagram& exact,
                                      double epsilon_user, int k) {
  if (!(epsilon_user > 0)) throw ValidationError("epsilon must be positive");
  if (k < 0) throw ValidationError("homology dimension must be nonnegative");
  if (approx.max_dim() > k || exact.max_dim() > k)
    throw ValidationError("diagram contains classes above the requested dimension " + std::to_string(k));
  InterleavingReport rep;
  rep.epsilon = epsilon_user;
  const double bound = std::log1p(epsilon_user);
  for (int q = 0; q <= k; ++q) {
    auto r = log_bottleneck_detail(approx, exact, q);
    rep.per_dim.push_back({q, r.value, bound, r.value <= bound + kInterleavingSlack, r.matched, r.to_diagonal});
  }
  return rep;
}

std::string report_json(const InterleavingReport& r, const ReportContext& ctx) {
  nlohmann::ordered_json j;
  j["epsilon"] = r.epsilon;
  j["mode"] = ctx.mode;
  j["n"] = ctx.n;
  j["d"] = ctx.d;
  j["k"] = ctx.k;
  auto dims = nlohmann::ordered_json::array();
  for (const auto& c : r.per_dim) {
    nlohmann::ordered_json e;
    e["dim"] = c.dim;
    if (std::isfinite(c.bottleneck))
      e["bottleneck"] = c.bottleneck;
    else
      e["bottleneck"] = nullptr;
    e["bound"] = c.bound;
    e["pass"] = c.pass;
    e["matched"] = c.matched;
    e["diagonal_matched"] = c.to_diagonal;
    dims.push_back(e);
  }
  j["per_dim"] = dims;
  j["tokens"] = {{"adds", ctx.adds}, {"contracts", ctx.contracts}, {"scales", ctx.scales}};
  return j.dump(2) + "\n";
}

}  // namespace cechpix
