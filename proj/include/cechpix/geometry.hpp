#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cechpix {

using Coords = std::vector<double>;

/// Finite point set in R^d, coordinates stored row-major.
class PointCloud {
 public:
  PointCloud() = default;
  /// Throws ValidationError on ragged rows, non-finite values or exact duplicates.
  explicit PointCloud(const std::vector<Coords>& rows);
  PointCloud(std::size_t dim, std::vector<double> flat);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return size() == 0; }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  double distance(std::size_t i, std::size_t j) const;
  double diameter() const;
  /// Smallest distance between two distinct points; 0 if n < 2.
  double min_distance() const;

 private:
  void validate() const;

  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);

struct Ball {
  Coords center;
  double radius = 0.0;
};

/// Smallest ball containing all points. Throws ValidationError("empty simplex")
/// on empty input.
Ball min_enclosing_ball(std::span<const std::span<const double>> points);
Ball min_enclosing_ball(const std::vector<Coords>& points);
Ball min_enclosing_ball(const PointCloud& cloud, std::span<const std::size_t> ids);

/// Decides whether min_x max_i (|x - c_i| - r_i) <= tol. Throws
/// IndeterminateError("indeterminate intersection") if the minimum cannot be
/// separated from tol within the iteration budget.
bool balls_intersect(std::span<const Ball> balls, double tol = 1e-9);

}  // namespace cechpix
