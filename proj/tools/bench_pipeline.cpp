// Phase timings of the full pipeline on one point file.
// usage: bench_pipeline <points> <epsilon> <k> <simple|lazy>

#include <chrono>
#include <iostream>

#include "cechpix/cech.hpp"
#include "cechpix/io.hpp"
#include "cechpix/pipeline.hpp"

using namespace cechpix;
using Clock = std::chrono::steady_clock;

int main(int argc, char** argv) {
  if (argc != 5) {
    std::cerr << "usage: bench_pipeline <points> <epsilon> <k> <simple|lazy>\n";
    return 1;
  }
  PointCloud pts = read_points_file(argv[1]);
  TowerOptions opt;
  opt.epsilon_user = std::stod(argv[2]);
  const int k = std::stoi(argv[3]);
  opt.skeleton = k + 1;
  opt.mode = parse_mode(argv[4]);
  auto t0 = Clock::now();
  auto lap = [&](const char* what) {
    auto t = Clock::now();
    std::cout << what << " " << std::chrono::duration<double>(t - t0).count() << "s\n";
    t0 = t;
  };
  TowerResult tower = build_tower(pts, opt);
  lap("tower");
  std::cout << "  tokens " << tower.stream.size() << " adds " << tower.stream.add_count() << " contracts "
            << tower.stream.contract_count() << " scales " << tower.stream.scale_count() << "\n";
  FilteredComplex fc = tower_to_filtration(tower.stream, k + 1);
  lap("coning");
  std::cout << "  simplices " << fc.size() << "\n";
  PersistenceDiagram approx = persistence_diagram(fc, k);
  lap("reduction");
  PersistenceDiagram exact = exact_diagram(pts, k);
  lap("exact");
  auto rep = check_interleaving(approx, exact, opt.epsilon_user, k);
  lap("compare");
  for (const auto& c : rep.per_dim)
    std::cout << "  dim " << c.dim << " bottleneck " << c.bottleneck << " bound " << c.bound
              << (c.pass ? " pass" : " FAIL") << "\n";
  return rep.pass() ? 0 : 2;
}
