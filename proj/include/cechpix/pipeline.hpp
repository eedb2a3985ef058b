#pragma once

#include "cechpix/diagram_metrics.hpp"
#include "cechpix/persistence.hpp"
#include "cechpix/tower.hpp"

namespace cechpix {

// Homology up to dimension k needs simplices up to dimension k + 1, so the
// helpers below build one dimension above the reported range.

/// Diagram (dims 0..k) of a tower built with skeleton >= k + 1.
PersistenceDiagram tower_diagram(const TowerTokenStream& stream, int k);

/// Diagram (dims 0..k) of the exact Cech filtration.
PersistenceDiagram exact_diagram(const PointCloud& points, int k);

struct ComparisonRun {
  TowerResult tower;
  PersistenceDiagram approx, exact;
  InterleavingReport report;
};

/// Builds the tower for homology dims 0..k (options.skeleton is set to k + 1),
/// runs the oracle and compares.
ComparisonRun compare_with_exact(const PointCloud& points, TowerOptions options, int k,
                                 const ScaleObserver& observer = {});

}  // namespace cechpix
