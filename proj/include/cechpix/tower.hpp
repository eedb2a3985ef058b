#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "cechpix/geometry.hpp"
#include "cechpix/grid.hpp"
#include "cechpix/pixel_set.hpp"
#include "cechpix/token_stream.hpp"
#include "cechpix/wspd.hpp"

namespace cechpix {

enum class TowerMode { simple, lazy };

const char* to_string(TowerMode m);
/// Parses "simple" or "lazy"; throws ValidationError otherwise.
TowerMode parse_mode(const std::string& s);

struct TowerOptions {
  double epsilon_user = 0.5;  // in (0, 1]; the grid uses epsilon_user / 4
  int skeleton = 2;           // highest simplex dimension emitted
  TowerMode mode = TowerMode::lazy;
  std::optional<double> alpha_min, alpha_max;  // simple mode only
  std::size_t max_tokens = 0;                  // 0 means unlimited; else ResourceLimitError
};

struct ScaleStats {
  double scale = 0.0;
  std::size_t pixels = 0;
  std::size_t pixels_added = 0;
  std::size_t contractions = 0;
  std::size_t simplices_added = 0;  // dimension >= 1
};

struct TowerStats {
  std::vector<ScaleStats> scales;
  std::size_t floods = 0;
  std::size_t max_flood = 0;
  double flood_bound = 0.0;
  std::size_t pixels_added = 0;
  std::size_t simplices_added = 0;
  std::size_t wspd_pairs = 0;
  // Simplex adds (dimension >= 1) are asserted to stay below this factor times
  // pixels_added: each simplex is charged to its smallest pixel, which has at
  // most 3^d - 1 same-or-larger neighbors and gains new ones at most 3^d - 1 times.
  double simplex_factor = 0.0;
};

/// 3^d times the number of ways to pick 1..k same-or-larger neighbors.
double simplex_charge_factor(int d, int k);

/// State exposed to observers after each processed scale.
struct ScaleSnapshot {
  int exponent;
  double scale;
  const PixelSet& pixels;
  const TowerTokenStream& stream;
  const std::vector<PixelId>& registry;  // vertex id -> pixel
};
using ScaleObserver = std::function<void(const ScaleSnapshot&)>;

struct TowerResult {
  TowerTokenStream stream;
  std::vector<PixelId> registry;
  TowerStats stats;
};

/// Internal grid epsilon for a user epsilon; validates the range (0, 1].
double internal_epsilon(double epsilon_user);

TowerResult build_tower(const PointCloud& points, const TowerOptions& options, const ScaleObserver& observer = {});

/// Exponents processed by the simple scheme.
std::vector<int> simple_exponents(const PointCloud& points, const ScaleLadder& ladder, std::optional<double> alpha_min,
                                  std::optional<double> alpha_max);

}  // namespace cechpix
