#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "cechpix/geometry.hpp"
#include "cechpix/grid.hpp"

namespace cechpix {

using PointIndex = std::uint32_t;

/// Inclusive range of ladder exponents.
struct ExponentRange {
  int lo = 0;
  int hi = -1;
  bool contains(int k) const { return lo <= k && k <= hi; }
  friend bool operator==(const ExponentRange&, const ExponentRange&) = default;
};

struct WspdPair {
  std::vector<PointIndex> set_a, set_b;  // sorted
  PointIndex rep_a = 0, rep_b = 0;       // smallest id of each set
  double distance = 0.0;                 // |rep_a - rep_b|
  double raw_lo = 0.0, raw_hi = 0.0;     // distance / 8, 8 * distance
  ExponentRange snapped;                 // raw range widened to the ladder
};

/// A well-separated pair decomposition together with its active intervals.
class ActiveSchedule {
 public:
  ActiveSchedule(std::vector<WspdPair> pairs, double delta, ScaleLadder ladder, std::size_t n_points);

  const std::vector<WspdPair>& pairs() const { return pairs_; }
  double delta() const { return delta_; }
  const ScaleLadder& ladder() const { return ladder_; }
  std::size_t point_count() const { return active_.size(); }

  /// Merged snapped intervals of the pairs that have p as a representative.
  std::span<const ExponentRange> active_ranges(PointIndex p) const { return active_[p]; }
  bool is_active(PointIndex p, int k) const;

  /// Largest active scale of p that is <= scale(k), or 0.
  double radius(PointIndex p, int k) const;
  /// Same for an arbitrary real alpha.
  double radius_at(PointIndex p, double alpha) const;
  /// Radius from the unsnapped widened ranges [d/4, 4d] of every pair containing p,
  /// merged with the snapped representative ranges.
  double tilde_radius(PointIndex p, double alpha) const;

  /// Ladder exponents covered by at least one snapped interval, ascending.
  std::vector<int> critical_exponents() const;

  void write_pairs(std::ostream& out) const;

 private:
  std::vector<WspdPair> pairs_;
  double delta_;
  ScaleLadder ladder_;
  std::vector<std::vector<ExponentRange>> active_;
};

/// Throws ValidationError unless delta lies in (0, 1/10].
ActiveSchedule build_wspd(const PointCloud& points, double delta, const ScaleLadder& ladder);

/// Exhaustive check: every unordered pair covered, every pair separated with
/// diam <= delta * mindist. `delta` defaults to the schedule's own.
bool validate_wspd(const ActiveSchedule& schedule, const PointCloud& points,
                   std::optional<double> delta = std::nullopt);

double radius_function(const ActiveSchedule& schedule, PointIndex p, int k);
double tilde_radius_function(const ActiveSchedule& schedule, PointIndex p, double alpha);
std::vector<double> critical_scales(const ActiveSchedule& schedule);

}  // namespace cechpix
