#pragma once

#include <iosfwd>
#include <string>

#include "cechpix/geometry.hpp"
#include "cechpix/persistence.hpp"

namespace cechpix {

/// One point per line, whitespace-separated reals, '#' starts a comment.
/// The first data line fixes the dimension. Errors name the line.
PointCloud read_points(std::istream& in);
PointCloud read_points_file(const std::string& path);

/// Persistence diagram as an SVG: birth/death axes, diagonal, one marker per
/// finite point and essential classes on a rail above the plot.
std::string diagram_svg(const PersistenceDiagram& d);

}  // namespace cechpix
