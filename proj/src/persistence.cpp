#include "cechpix/persistence.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "absl/container/flat_hash_map.h"
#include "cechpix/errors.hpp"
#include "cechpix/token_stream.hpp"

namespace cechpix {

std::vector<DiagramPoint> PersistenceDiagram::in_dim(int q) const {
  std::vector<DiagramPoint> out;
  for (const auto& p : points)
    if (p.dim == q) out.push_back(p);
  return out;
}

int PersistenceDiagram::max_dim() const {
  int m = -1;
  for (const auto& p : points) m = std::max(m, p.dim);
  return m;
}

namespace {

constexpr SimplexIndex kNone = std::numeric_limits<SimplexIndex>::max();

// working ^= other, both sorted ascending
void add_column(std::vector<SimplexIndex>& working, std::span<const SimplexIndex> other,
                std::vector<SimplexIndex>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(working.begin(), working.end(), other.begin(), other.end(),
                                std::back_inserter(scratch));
  working.swap(scratch);
}

}  // namespace

PersistenceDiagram persistence_diagram(const FilteredComplex& fc, int k) {
  if (k < 0) throw ValidationError("homology dimension must be nonnegative");
  const std::size_t n = fc.size();
  const int top = std::min(fc.max_dim(), k + 1);
  std::vector<SimplexIndex> pivot_owner(n, kNone);  // row -> column
  std::vector<std::uint8_t> cleared(n, 0);          // column known to reduce to zero
  std::vector<std::uint8_t> zero(n, 0);              // column reduced to zero
  std::vector<std::pair<SimplexIndex, SimplexIndex>> pairs;
  std::vector<SimplexIndex> working, scratch;

  std::vector<std::vector<SimplexIndex>> by_dim(static_cast<std::size_t>(std::max(top, 0) + 1));
  for (std::size_t i = 0; i < n; ++i)
    if (fc.dim(i) <= top) by_dim[static_cast<std::size_t>(fc.dim(i))].push_back(static_cast<SimplexIndex>(i));

  for (int q = top; q >= 1; --q) {
    absl::flat_hash_map<SimplexIndex, std::vector<SimplexIndex>> reduced;
    for (SimplexIndex j : by_dim[static_cast<std::size_t>(q)]) {
      if (cleared[j]) {
        zero[j] = 1;
        continue;
      }
      auto b = fc.boundary(j);
      working.assign(b.begin(), b.end());
      bool modified = false;
      while (!working.empty()) {
        const SimplexIndex owner = pivot_owner[working.back()];
        if (owner == kNone) break;
        auto it = reduced.find(owner);
        if (it != reduced.end())
          add_column(working, it->second, scratch);
        else
          add_column(working, fc.boundary(owner), scratch);
        modified = true;
      }
      if (working.empty()) {
        zero[j] = 1;
        continue;
      }
      const SimplexIndex low = working.back();
      pivot_owner[low] = j;
      cleared[low] = 1;
      pairs.emplace_back(low, j);
      if (modified) reduced.emplace(j, working);
    }
  }

  PersistenceDiagram d;
  for (auto [b, j] : pairs) {
    const int q = fc.dim(b);
    if (q > k) continue;
    const double vb = fc.value(b), vd = fc.value(j);
    if (vb != vd) d.points.push_back({q, vb, vd});
  }
  // Essential: positive simplices never used as a pivot row.
  long long euler = 0, betti_alt = 0;
  for (int q = 0; q <= top; ++q)
    for (SimplexIndex i : by_dim[static_cast<std::size_t>(q)]) {
      euler += (q % 2 == 0) ? 1 : -1;
      const bool positive = q == 0 || zero[i];
      if (positive && pivot_owner[i] == kNone) {
        betti_alt += (q % 2 == 0) ? 1 : -1;
        if (q <= k) d.points.push_back({q, fc.value(i), kInfinity});
      }
    }
  if (euler != betti_alt)
    throw InvariantError("Euler characteristic " + std::to_string(euler) +
                         " disagrees with the alternating Betti sum " + std::to_string(betti_alt));
  std::sort(d.points.begin(), d.points.end());
  return d;
}

void write_diagram_csv(const PersistenceDiagram& d, std::ostream& out) {
  out << "dim,birth,death\n";
  for (const auto& p : d.points)
    out << p.dim << ',' << format_real(p.birth) << ',' << (p.essential() ? std::string("inf") : format_real(p.death))
        << '\n';
}

PersistenceDiagram read_diagram_csv(std::istream& in) {
  PersistenceDiagram d;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      if (line != "dim,birth,death")
        throw ValidationError("line " + std::to_string(lineno) + ": expected header 'dim,birth,death'");
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    auto fail = [&](const std::string& what) {
      throw ValidationError("line " + std::to_string(lineno) + ": " + what);
    };
    if (f.size() != 3) fail("expected 3 fields");
    DiagramPoint p;
    auto r = std::from_chars(f[0].data(), f[0].data() + f[0].size(), p.dim);
    if (r.ec != std::errc() || r.ptr != f[0].data() + f[0].size() || p.dim < 0) fail("bad dimension '" + f[0] + "'");
    auto real = [&](const std::string& s, double& x) {
      if (s == "inf") {
        x = kInfinity;
        return;
      }
      auto rr = std::from_chars(s.data(), s.data() + s.size(), x);
      if (rr.ec != std::errc() || rr.ptr != s.data() + s.size()) fail("bad number '" + s + "'");
    };
    real(f[1], p.birth);
    real(f[2], p.death);
    if (p.birth == kInfinity) fail("birth cannot be infinite");
    if (p.death < p.birth) fail("death before birth");
    d.points.push_back(p);
  }
  if (!header) throw ValidationError("diagram file is empty");
  std::sort(d.points.begin(), d.points.end());
  return d;
}

}  // namespace cechpix
