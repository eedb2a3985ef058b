#include "cechpix/simplex.hpp"

#include "cechpix/errors.hpp"

namespace cechpix {

Simplex Simplex::from_sorted(std::span<const VertexId> v) {
  if (v.size() > kMaxSimplexSize)
    throw ValidationError("simplex has " + std::to_string(v.size()) + " vertices, limit is " +
                          std::to_string(kMaxSimplexSize));
  Simplex s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0 && v[i] <= v[i - 1]) throw ValidationError("simplex vertices must be strictly increasing");
    s.v_[i] = v[i];
  }
  s.n_ = static_cast<std::uint8_t>(v.size());
  return s;
}

Simplex Simplex::from_unsorted(std::span<const VertexId> v) {
  if (v.size() > kMaxSimplexSize)
    throw ValidationError("simplex has " + std::to_string(v.size()) + " vertices, limit is " +
                          std::to_string(kMaxSimplexSize));
  std::array<VertexId, kMaxSimplexSize> tmp{};
  std::copy(v.begin(), v.end(), tmp.begin());
  std::sort(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(v.size()));
  return from_sorted({tmp.data(), v.size()});
}

Simplex Simplex::facet(std::size_t i) const {
  Simplex s;
  for (std::size_t j = 0, k = 0; j < n_; ++j)
    if (j != i) s.v_[k++] = v_[j];
  s.n_ = static_cast<std::uint8_t>(n_ - 1);
  return s;
}

Simplex Simplex::with(VertexId x) const {
  if (n_ == kMaxSimplexSize) throw ValidationError("simplex size limit exceeded");
  Simplex s;
  std::size_t k = 0;
  bool placed = false;
  for (std::size_t j = 0; j < n_; ++j) {
    if (!placed && x < v_[j]) {
      s.v_[k++] = x;
      placed = true;
    }
    if (v_[j] == x) throw InvariantError("Simplex::with: vertex already present");
    s.v_[k++] = v_[j];
  }
  if (!placed) s.v_[k++] = x;
  s.n_ = static_cast<std::uint8_t>(k);
  return s;
}

Simplex Simplex::renamed(VertexId u, VertexId v) const {
  if (!contains(u)) return *this;
  Simplex base = facet(static_cast<std::size_t>(std::lower_bound(begin(), end(), u) - begin()));
  return base.contains(v) ? base : base.with(v);
}

std::string Simplex::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) out += ',';
    out += std::to_string(v_[i]);
  }
  return out + "}";
}

}  // namespace cechpix
