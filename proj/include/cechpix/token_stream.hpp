#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "cechpix/simplex.hpp"

namespace cechpix {

enum class TokenKind : std::uint8_t { scale = 0, add = 1, contract = 2 };

struct TokenView {
  TokenKind kind;
  double scale = 0.0;                   // scale tokens
  std::span<const VertexId> vertices;  // add: the simplex; contract: {u, v}
};

/// Ordered tower tokens in a compact word-encoded buffer.
class TowerTokenStream {
 public:
  void push_scale(double s);
  void push_add(std::span<const VertexId> sorted_vertices);
  void push_add(const Simplex& s) { push_add(s.vertices()); }
  void push_contract(VertexId u, VertexId v);

  std::size_t size() const { return tokens_; }
  std::size_t scale_count() const { return scales_.size(); }
  std::size_t add_count() const { return adds_; }
  std::size_t contract_count() const { return contracts_; }
  /// Number of add tokens of dimension q.
  std::size_t add_count(int q) const;

  class const_iterator {
   public:
    using value_type = TokenView;
    using difference_type = std::ptrdiff_t;
    const_iterator() = default;
    const_iterator(const TowerTokenStream* s, std::size_t pos) : s_(s), pos_(pos) {}
    TokenView operator*() const;
    const_iterator& operator++();
    const_iterator operator++(int) {
      auto t = *this;
      ++*this;
      return t;
    }
    bool operator==(const const_iterator& o) const { return pos_ == o.pos_; }
    std::size_t word_position() const { return pos_; }

   private:
    const TowerTokenStream* s_ = nullptr;
    std::size_t pos_ = 0;
  };
  const_iterator begin() const { return {this, 0}; }
  const_iterator end() const { return {this, words_.size()}; }
  /// Iterator positioned at a word offset previously taken from word_position().
  const_iterator at_word(std::size_t pos) const { return {this, pos}; }

  friend bool operator==(const TowerTokenStream& a, const TowerTokenStream& b) {
    return a.words_ == b.words_ && a.scales_ == b.scales_;
  }

 private:
  std::vector<std::uint32_t> words_;
  std::vector<double> scales_;
  std::vector<std::size_t> adds_by_dim_;
  std::size_t tokens_ = 0, adds_ = 0, contracts_ = 0;
};

/// Shortest decimal that round-trips to the same double.
std::string format_real(double x);

void write_tokens(const TowerTokenStream& stream, std::ostream& out);
/// Throws ValidationError naming the offending line.
TowerTokenStream read_tokens(std::istream& in);

/// Simplicial complex keyed by vertex sets, with a per-vertex star index.
class LiveComplex {
 public:
  bool contains(const Simplex& s) const { return simplices_.contains(s); }
  bool vertex_live(VertexId v) const { return contains(Simplex::from_sorted({&v, 1})); }
  void insert(const Simplex& s);
  void erase(const Simplex& s);
  /// Live simplices containing v, sorted by (dimension, lexicographic).
  std::vector<Simplex> star(VertexId v) const;
  std::size_t size() const { return simplices_.size(); }
  std::size_t size(int q) const;
  const absl::flat_hash_set<Simplex>& simplices() const { return simplices_; }
  std::vector<Simplex> sorted() const;

 private:
  absl::flat_hash_set<Simplex> simplices_;
  absl::flat_hash_map<VertexId, std::vector<Simplex>> stars_;
  std::vector<std::size_t> by_dim_;
};

/// Applies tokens to a LiveComplex with full well-formedness checks. Errors
/// are ValidationError("token <i>: ...").
class TowerReplay {
 public:
  void apply(const TokenView& t);
  void apply_all(const TowerTokenStream& s);
  const LiveComplex& complex() const { return complex_; }
  double scale() const { return scale_; }
  std::size_t tokens_applied() const { return index_; }

 private:
  [[noreturn]] void fail(const std::string& what) const;

  LiveComplex complex_;
  absl::flat_hash_set<VertexId> ever_;
  double scale_ = 0.0;
  bool started_ = false;
  std::size_t index_ = 0;
};

}  // namespace cechpix
