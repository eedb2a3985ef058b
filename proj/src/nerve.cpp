#include "cechpix/nerve.hpp"

#include <algorithm>

#include "absl/container/flat_hash_map.h"
#include "cechpix/errors.hpp"

namespace cechpix {

std::vector<Edge> nerve_one_skeleton(const PixelSet& set) {
  std::vector<Edge> edges;
  for (const auto& [a, va] : set.members()) {
    for (const auto& b : set.larger_or_equal_neighbors(a)) {
      const bool own = a.degenerate() || b.level > a.level || (b.level == a.level && a < b);
      if (!own) continue;
      VertexId vb = set.vertex(b);
      edges.emplace_back(std::min(va, vb), std::max(va, vb));
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<Simplex> flag_expand(const std::vector<VertexId>& vertices, const std::vector<Edge>& edges, int k) {
  if (k < 0) throw ValidationError("flag_expand: skeleton dimension must be nonnegative");
  if (static_cast<std::size_t>(k) + 1 > kMaxSimplexSize) throw ValidationError("flag_expand: skeleton dimension too large");
  std::vector<VertexId> verts = vertices;
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  absl::flat_hash_map<VertexId, std::vector<VertexId>> up;  // neighbors with larger id
  for (auto [u, v] : edges) {
    if (u == v) continue;
    up[std::min(u, v)].push_back(std::max(u, v));
  }
  for (auto& [v, nb] : up) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  static const std::vector<VertexId> kEmpty;
  auto upper = [&](VertexId v) -> const std::vector<VertexId>& {
    auto it = up.find(v);
    return it == up.end() ? kEmpty : it->second;
  };
  std::vector<Simplex> out;
  std::vector<VertexId> clique;
  auto extend = [&](auto&& self, const std::vector<VertexId>& cand) -> void {
    out.push_back(Simplex::from_sorted(clique));
    if (clique.size() == static_cast<std::size_t>(k) + 1) return;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      const auto& nb = upper(cand[i]);
      std::vector<VertexId> next;
      std::set_intersection(cand.begin() + static_cast<std::ptrdiff_t>(i) + 1, cand.end(), nb.begin(), nb.end(),
                            std::back_inserter(next));
      clique.push_back(cand[i]);
      self(self, next);
      clique.pop_back();
    }
  };
  for (auto v : verts) {
    clique.assign(1, v);
    extend(extend, upper(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cechpix
