#include "cechpix/pipeline.hpp"

#include "cechpix/cech.hpp"
#include "cechpix/filtration.hpp"

namespace cechpix {

PersistenceDiagram tower_diagram(const TowerTokenStream& stream, int k) {
  return persistence_diagram(tower_to_filtration(stream, k + 1), k);
}

PersistenceDiagram exact_diagram(const PointCloud& points, int k) {
  const double alpha_max = points.size() > 1 ? points.diameter() : 1.0;
  return persistence_diagram(cech_filtration(points, k + 1, alpha_max), k);
}

ComparisonRun compare_with_exact(const PointCloud& points, TowerOptions options, int k,
                                 const ScaleObserver& observer) {
  ComparisonRun run;
  options.skeleton = k + 1;
  run.tower = build_tower(points, options, observer);
  run.approx = tower_diagram(run.tower.stream, k);
  run.exact = exact_diagram(points, k);
  run.report = check_interleaving(run.approx, run.exact, options.epsilon_user, k);
  return run;
}

}  // namespace cechpix
