#pragma once

#include <climits>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "cechpix/grid.hpp"
#include "cechpix/simplex.hpp"
#include "cechpix/wspd.hpp"

namespace cechpix {

inline constexpr VertexId kNoVertex = UINT32_MAX;

/// A set of pixels (mixed levels allowed) indexed by a hashed quadtree:
/// every proper ancestor of a member up to the top level carries the number
/// of members below it, so coverage and adjacency queries only descend into
/// occupied cells. Each member carries a vertex id payload.
class PixelSet {
 public:
  PixelSet(std::shared_ptr<const PixelGrid> grid, int scale_exponent);

  const PixelGrid& grid() const { return *grid_; }
  std::shared_ptr<const PixelGrid> grid_ptr() const { return grid_; }
  int scale_exponent() const { return scale_; }
  void set_scale_exponent(int k) { scale_ = k; }

  std::size_t size() const { return members_.size(); }
  bool contains(const PixelId& a) const { return members_.contains(a); }
  VertexId vertex(const PixelId& a) const;
  void set_vertex(const PixelId& a, VertexId v);
  const absl::flat_hash_map<PixelId, VertexId>& members() const { return members_; }
  std::vector<PixelId> sorted() const;

  /// Inserts a new member (no-op if present). Returns whether it was inserted.
  bool insert(const PixelId& a, VertexId v = kNoVertex);
  void erase(const PixelId& a);

  /// Member whose cube strictly contains a's cube. For a point pixel on a cell
  /// boundary, the smallest such member in (level, corner) order.
  std::optional<PixelId> covering(const PixelId& a) const;
  /// Members whose cubes lie strictly inside a's cube (including point pixels). Sorted.
  std::vector<PixelId> covered_by(const PixelId& a) const;
  /// All other members whose closed cubes meet a's cube. Sorted.
  std::vector<PixelId> intersecting(const PixelId& a) const;
  /// Other members meeting a that are at least as large as a.
  std::vector<PixelId> larger_or_equal_neighbors(const PixelId& a) const;
  /// Whether x lies in the union of member cubes.
  bool covers_point(std::span<const double> x) const;

  const std::map<int, std::size_t>& level_counts() const { return levels_; }
  std::size_t point_pixel_count() const { return point_count_; }

 private:
  void add_chain(const PixelId& a, int from_level, int to_level, int delta);
  void raise_top(int level);
  template <typename F>
  void for_each_cell_near(const PixelId& a, F&& f) const;
  template <typename F>
  void descend(const PixelId& cell, F&& f) const;

  std::shared_ptr<const PixelGrid> grid_;
  int scale_;
  absl::flat_hash_map<PixelId, VertexId> members_;
  absl::flat_hash_map<PixelId, std::uint32_t> below_;
  std::map<int, std::size_t> levels_;
  std::vector<std::int32_t> points_;  // live point-pixel ids, sorted
  std::size_t point_count_ = 0;
  int top_ = INT_MIN;
};

struct AdvanceDelta {
  std::vector<PixelId> added;                            // sorted
  std::vector<std::pair<PixelId, PixelId>> contracted;  // old -> coverer
  std::vector<VertexId> contracted_vertices;             // vertex ids of the old pixels
  std::vector<std::size_t> flood_sizes;                  // one per flooded ball
};

/// Union of the floods of all points at scale(k) on the level for scale(k).
PixelSet simple_pixel_set(const PointCloud& points, int k, std::shared_ptr<const PixelGrid> grid);

/// Exponent of the initial lazy scale: one step below every snapped interval; 0 if none.
int lazy_initial_exponent(const ActiveSchedule& schedule);
/// Point pixels for every input point; vertex id = point id.
PixelSet lazy_initialize(std::shared_ptr<const PixelGrid> grid, const ActiveSchedule& schedule);
/// One lazy step to exponent k, in place. New members carry kNoVertex.
AdvanceDelta lazy_advance_in_place(PixelSet& set, int k, const ActiveSchedule& schedule);
std::pair<PixelSet, AdvanceDelta> lazy_advance(const PixelSet& prev, int k, const ActiveSchedule& schedule);

std::optional<PixelId> covering_pixel(const PixelSet& set, const PixelId& a);

/// Exhaustive pairwise check; quadratic, for tests.
bool is_inclusion_maximal(const PixelSet& set);

}  // namespace cechpix
