#pragma once

#include <iosfwd>
#include <limits>
#include <vector>

#include "cechpix/filtration.hpp"

namespace cechpix {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct DiagramPoint {
  int dim = 0;
  double birth = 0.0;
  double death = kInfinity;
  bool essential() const { return death == kInfinity; }
  friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

struct PersistenceDiagram {
  std::vector<DiagramPoint> points;  // sorted

  std::vector<DiagramPoint> in_dim(int q) const;
  int max_dim() const;
  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

/// Z/2 boundary-matrix reduction with clearing. Reports dimensions 0..k;
/// zero-length intervals are dropped. Only the (k+1)-skeleton is reduced.
/// Throws InvariantError if the Euler characteristic of the reduced skeleton
/// disagrees with the pairing.
PersistenceDiagram persistence_diagram(const FilteredComplex& fc, int k);

/// CSV with header "dim,birth,death"; "inf" marks essential classes.
void write_diagram_csv(const PersistenceDiagram& d, std::ostream& out);
PersistenceDiagram read_diagram_csv(std::istream& in);

}  // namespace cechpix
