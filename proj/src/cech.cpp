#include "cechpix/cech.hpp"

#include <algorithm>
#include <string>

#include "absl/container/flat_hash_map.h"
#include "cechpix/errors.hpp"

namespace cechpix {

FilteredComplex cech_filtration(const PointCloud& points, int k, double alpha_max) {
  if (points.size() > kOracleMaxPoints)
    throw ValidationError("oracle limit: exact filtration supports at most " + std::to_string(kOracleMaxPoints) +
                          " points, got " + std::to_string(points.size()));
  if (k < 0 || static_cast<std::size_t>(k) + 1 > kMaxSimplexSize)
    throw ValidationError("oracle limit: skeleton dimension " + std::to_string(k) + " unsupported");
  if (!(alpha_max > 0)) throw ValidationError("alpha_max must be positive");
  const std::size_t n = points.size();
  absl::flat_hash_map<Simplex, double> birth;
  std::vector<std::pair<Simplex, double>> items;
  std::vector<Simplex> layer;
  for (std::size_t i = 0; i < n; ++i) {
    Simplex s{static_cast<VertexId>(i)};
    birth.emplace(s, 0.0);
    items.emplace_back(s, 0.0);
    layer.push_back(s);
  }
  std::vector<std::size_t> ids;
  for (int q = 1; q <= k; ++q) {
    std::vector<Simplex> next;
    for (const auto& s : layer) {
      // Extend by larger vertices only, so each subset is produced once.
      for (auto v = static_cast<VertexId>(s[s.size() - 1] + 1); v < n; ++v) {
        Simplex t = s.with(v);
        double b = 0.0;
        bool ok = true;
        for (std::size_t i = 0; i < t.size(); ++i) {
          auto it = birth.find(t.facet(i));
          if (it == birth.end()) {
            ok = false;
            break;
          }
          b = std::max(b, it->second);
        }
        if (!ok) continue;
        ids.assign(t.begin(), t.end());
        b = std::max(b, min_enclosing_ball(points, ids).radius);
        if (b > alpha_max) continue;
        birth.emplace(t, b);
        items.emplace_back(t, b);
        next.push_back(t);
      }
    }
    layer = std::move(next);
  }
  return FilteredComplex::from_simplices(std::move(items));
}

}  // namespace cechpix
