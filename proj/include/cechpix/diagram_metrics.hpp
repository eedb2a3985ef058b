#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cechpix/persistence.hpp"

namespace cechpix {

struct BottleneckResult {
  double value = 0.0;            // +inf when essential counts differ
  std::size_t matched = 0;       // off-diagonal pairs in an optimal matching
  std::size_t to_diagonal = 0;   // points sent to the diagonal
};

/// Bottleneck distance in dimension q after mapping (b, d) to (ln b, ln d).
/// In dimension 0 births are ignored and classes are compared by death only.
/// Essential classes only match essential classes.
BottleneckResult log_bottleneck_detail(const PersistenceDiagram& a, const PersistenceDiagram& b, int q);
double log_bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int q);

struct DimensionCheck {
  int dim = 0;
  double bottleneck = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::size_t matched = 0;
  std::size_t to_diagonal = 0;
};

struct InterleavingReport {
  double epsilon = 0.0;
  std::vector<DimensionCheck> per_dim;
  bool pass() const;
};

inline constexpr double kInterleavingSlack = 1e-9;

/// Per dimension 0..k: pass iff log bottleneck <= ln(1 + epsilon_user) + 1e-9.
InterleavingReport check_interleaving(const PersistenceDiagram& approx, const PersistenceDiagram& exact,
                                      double epsilon_user, int k);

struct ReportContext {
  std::string mode;
  std::size_t n = 0, d = 0;
  int k = 0;
  std::size_t adds = 0, contracts = 0, scales = 0;
};

/// Report as a JSON document (infinite distances are written as null).
std::string report_json(const InterleavingReport& r, const ReportContext& ctx);

}  // namespace cechpix
