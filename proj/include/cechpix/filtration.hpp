#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "cechpix/simplex.hpp"
#include "cechpix/token_stream.hpp"

namespace cechpix {

using SimplexIndex = std::uint32_t;

/// Simplices in a valid filtration order (values nondecreasing, faces first),
/// stored flat, with facet indices.
class FilteredComplex {
 public:
  std::size_t size() const { return offsets_.size() - 1; }
  bool empty() const { return size() == 0; }
  int dim(std::size_t i) const { return static_cast<int>(offsets_[i + 1] - offsets_[i]) - 1; }
  int max_dim() const { return max_dim_; }
  std::span<const VertexId> vertices(std::size_t i) const {
    return {vertices_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  Simplex simplex(std::size_t i) const { return Simplex::unchecked(vertices(i)); }
  /// Facet indices, ascending; empty for vertices.
  std::span<const SimplexIndex> boundary(std::size_t i) const {
    return dim(i) == 0 ? std::span<const SimplexIndex>{}
                       : std::span<const SimplexIndex>{boundary_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  double value(std::size_t i) const;
  /// Number of simplices per dimension.
  std::vector<std::size_t> counts() const;

  /// Appends a simplex whose facets (given as indices, any order) are already present.
  void push(std::span<const VertexId> sorted_vertices, double value, std::span<const SimplexIndex> facets);

  /// Sorts by (value, dimension, lexicographic) and links facets. Throws
  /// ValidationError when a face is missing or born after its coface.
  static FilteredComplex from_simplices(std::vector<std::pair<Simplex, double>> simplices);

  /// Re-checks order, face presence and value monotonicity.
  void validate() const;

 private:
  std::vector<VertexId> vertices_;
  std::vector<SimplexIndex> boundary_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<std::size_t> run_start_;
  std::vector<double> run_value_;
  int max_dim_ = -1;
};

/// Lines "<value> v0 v1 ...".
void write_filtration(const FilteredComplex& fc, std::ostream& out);
FilteredComplex read_filtration(std::istream& in);

/// Converts a tower into a filtration with the same persistence by coning
/// every contraction. Simplices above max_dim are not created (max_dim < 0
/// means no limit beyond the simplex size cap). Malformed streams raise
/// ValidationError("token <i>: ...").
FilteredComplex tower_to_filtration(const TowerTokenStream& stream, int max_dim = -1);

}  // namespace cechpix
