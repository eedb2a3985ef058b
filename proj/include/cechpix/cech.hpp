#pragma once

#include "cechpix/filtration.hpp"
#include "cechpix/geometry.hpp"

namespace cechpix {

inline constexpr std::size_t kOracleMaxPoints = 25;

/// Every subset of at most k+1 points whose minimum enclosing ball has radius
/// <= alpha_max, born at that radius (vertices at 0). Throws
/// ValidationError("oracle limit") above kOracleMaxPoints points.
FilteredComplex cech_filtration(const PointCloud& points, int k, double alpha_max);

}  // namespace cechpix
