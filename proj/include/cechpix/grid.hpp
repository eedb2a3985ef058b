#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cechpix/geometry.hpp"

namespace cechpix {

/// Geometric ladder I = {(1+eps)^k}; scales are named by their exponent k.
class ScaleLadder {
 public:
  /// eps must lie in (0, 1/4].
  explicit ScaleLadder(double epsilon);

  double epsilon() const { return epsilon_; }
  double scale(int k) const;
  /// Largest k with scale(k) <= alpha.
  int floor_exponent(double alpha) const;
  /// Smallest k with scale(k) >= alpha.
  int ceil_exponent(double alpha) const;

 private:
  double epsilon_;
  double log_base_;
};

/// i with 2^i <= alpha < 2^(i+1).
int level_for_scale(double alpha);

inline constexpr std::size_t kMaxPixelDim = 4;

/// A closed cube of the lattice at some dyadic level, or a zero-extent
/// pixel sitting on an input point.
struct PixelId {
  static constexpr std::int32_t kPointLevel = INT32_MIN;

  std::int32_t level = 0;
  std::int32_t point = -1;
  std::array<std::int64_t, kMaxPixelDim> corner{};

  static PixelId cube(std::int32_t level, std::span<const std::int64_t> corner);
  static PixelId point_pixel(std::int32_t point_id);

  bool degenerate() const { return point >= 0; }
  friend auto operator<=>(const PixelId&, const PixelId&) = default;
  template <typename H>
  friend H AbslHashValue(H h, const PixelId& p) {
    std::uint64_t x = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.level)) << 32) ^
                      static_cast<std::uint32_t>(p.point);
    for (auto c : p.corner) x = (x ^ static_cast<std::uint64_t>(c)) * 0x9E3779B97F4A7C15ull;
    return H::combine(std::move(h), x);
  }
};

/// Closed axis-parallel box; lo == hi is allowed in any coordinate.
struct Cuboid {
  Coords lo, hi;
};
bool cuboids_intersect(std::span<const Cuboid> boxes);

/// Lattices L_beta sharing the origin, with side eps * 2^level / (4 sqrt d).
/// Holds the input points so degenerate pixels can be resolved.
class PixelGrid {
 public:
  PixelGrid(const ScaleLadder& ladder, std::size_t dim);
  PixelGrid(const ScaleLadder& ladder, std::shared_ptr<const PointCloud> points);

  std::size_t dim() const { return dim_; }
  double epsilon() const { return epsilon_; }
  double side(int level) const;
  const PointCloud* points() const { return points_.get(); }

  PixelId pixel_containing(std::span<const double> x, int level) const;
  Coords center(const PixelId& a) const;
  Cuboid cuboid(const PixelId& a) const;
  /// Closed-cube overlap; degenerate pixels are their input point.
  bool intersect(const PixelId& a, const PixelId& b) const;
  /// Closed-cube containment of a in b (a == b counts).
  bool contains(const PixelId& outer, const PixelId& inner) const;
  bool contains_point(const PixelId& a, std::span<const double> x) const;
  PixelId parent(const PixelId& a, int target_level) const;

  /// Pixels at `level` whose centers lie within select_radius of p. Sorted.
  std::vector<PixelId> flood_ball(std::span<const double> p, double r, int level, double select_radius) const;
  /// Upper bound on the size of one flood at level_for_scale(alpha) with
  /// select radius select_ratio * alpha.
  double packing_bound(double select_ratio = 1.0) const;

 private:
  std::span<const double> point_of(const PixelId& a) const;

  std::size_t dim_;
  double epsilon_;
  double base_side_;
  std::shared_ptr<const PointCloud> points_;
};

}  // namespace cechpix
