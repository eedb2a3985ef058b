#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace cechpix {

using VertexId = std::uint32_t;

inline constexpr std::size_t kMaxSimplexSize = 6;  // dimension <= 5

/// Strictly increasing vertex list of bounded size, stored inline.
class Simplex {
 public:
  Simplex() = default;
  Simplex(std::initializer_list<VertexId> v) : Simplex(from_unsorted(std::span<const VertexId>(v.begin(), v.size()))) {}

  /// Throws ValidationError if unsorted, repeated or too large.
  static Simplex from_sorted(std::span<const VertexId> v);
  static Simplex from_unsorted(std::span<const VertexId> v);
  /// No checks; v must be strictly increasing and fit.
  static Simplex unchecked(std::span<const VertexId> v) {
    Simplex s;
    std::copy(v.begin(), v.end(), s.v_.begin());
    s.n_ = static_cast<std::uint8_t>(v.size());
    return s;
  }

  std::size_t size() const { return n_; }
  int dim() const { return static_cast<int>(n_) - 1; }
  bool empty() const { return n_ == 0; }
  const VertexId* begin() const { return v_.data(); }
  const VertexId* end() const { return v_.data() + n_; }
  VertexId operator[](std::size_t i) const { return v_[i]; }
  std::span<const VertexId> vertices() const { return {v_.data(), n_}; }

  bool contains(VertexId x) const { return std::binary_search(begin(), end(), x); }
  /// Facet obtained by dropping position i.
  Simplex facet(std::size_t i) const;
  /// this + {x}; x must not be a vertex yet.
  Simplex with(VertexId x) const;
  /// Image under u -> v (may shrink if v is already present).
  Simplex renamed(VertexId u, VertexId v) const;

  std::string str() const;

  friend bool operator==(const Simplex& a, const Simplex& b) {
    return a.n_ == b.n_ && std::equal(a.begin(), a.end(), b.begin());
  }
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }
  template <typename H>
  friend H AbslHashValue(H h, const Simplex& s) {
    return H::combine_contiguous(std::move(h), s.v_.data(), s.n_);
  }

 private:
  std::array<VertexId, kMaxSimplexSize> v_{};
  std::uint8_t n_ = 0;
};

/// Order used for filtrations at equal value: by dimension, then lexicographic.
inline bool dim_lex_less(const Simplex& a, const Simplex& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace cechpix
