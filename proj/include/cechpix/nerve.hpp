#pragma once

#include <utility>
#include <vector>

#include "cechpix/pixel_set.hpp"
#include "cechpix/simplex.hpp"

namespace cechpix {

using Edge = std::pair<VertexId, VertexId>;

/// Intersecting pairs of members, as vertex-id pairs (u < v), sorted. Each
/// member only inspects neighbors of the same or larger size.
std::vector<Edge> nerve_one_skeleton(const PixelSet& set);

/// All cliques with at most k+1 vertices, including the vertices themselves,
/// sorted lexicographically.
std::vector<Simplex> flag_expand(const std::vector<VertexId>& vertices, const std::vector<Edge>& edges, int k);

}  // namespace cechpix
