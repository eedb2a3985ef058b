#include "cechpix/filtration.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "absl/container/flat_hash_map.h"
#include "cechpix/errors.hpp"

namespace cechpix {

double FilteredComplex::value(std::size_t i) const {
  auto it = std::upper_bound(run_start_.begin(), run_start_.end(), i);
  return run_value_[static_cast<std::size_t>(it - run_start_.begin()) - 1];
}

std::vector<std::size_t> FilteredComplex::counts() const {
  std::vector<std::size_t> c(static_cast<std::size_t>(max_dim_ + 1), 0);
  for (std::size_t i = 0; i < size(); ++i) ++c[static_cast<std::size_t>(dim(i))];
  return c;
}

void FilteredComplex::push(std::span<const VertexId> v, double value, std::span<const SimplexIndex> facets) {
  if (v.empty()) throw ValidationError("empty simplex");
  if (!run_value_.empty() && value < run_value_.back()) throw ValidationError("filtration values must not decrease");
  if (v.size() > 1 && facets.size() != v.size()) throw ValidationError("facet count does not match dimension");
  if (vertices_.size() + v.size() > std::numeric_limits<std::uint32_t>::max())
    throw ValidationError("filtration too large");
  if (run_value_.empty() || value != run_value_.back()) {
    run_start_.push_back(size());
    run_value_.push_back(value);
  }
  vertices_.insert(vertices_.end(), v.begin(), v.end());
  if (v.size() == 1) {
    boundary_.push_back(0);
  } else {
    const std::size_t at = boundary_.size();
    boundary_.insert(boundary_.end(), facets.begin(), facets.end());
    std::sort(boundary_.begin() + static_cast<std::ptrdiff_t>(at), boundary_.end());
  }
  offsets_.push_back(static_cast<std::uint32_t>(vertices_.size()));
  max_dim_ = std::max(max_dim_, static_cast<int>(v.size()) - 1);
}

FilteredComplex FilteredComplex::from_simplices(std::vector<std::pair<Simplex, double>> simplices) {
  std::sort(simplices.begin(), simplices.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return dim_lex_less(a.first, b.first);
  });
  FilteredComplex fc;
  absl::flat_hash_map<Simplex, SimplexIndex> index;
  std::vector<SimplexIndex> facets;
  for (const auto& [s, value] : simplices) {
    if (s.empty()) throw ValidationError("empty simplex");
    if (!index.emplace(s, static_cast<SimplexIndex>(fc.size())).second)
      throw ValidationError("duplicate simplex " + s.str());
    facets.clear();
    if (s.size() > 1)
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto it = index.find(s.facet(i));
        if (it == index.end())
          throw ValidationError("face " + s.facet(i).str() + " of " + s.str() + " is missing or appears later");
        facets.push_back(it->second);
      }
    fc.push(s.vertices(), value, facets);
  }
  return fc;
}

void FilteredComplex::validate() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (i > 0 && value(i) < value(i - 1)) throw ValidationError("filtration values decrease");
    auto b = boundary(i);
    for (auto f : b) {
      if (f >= i) throw ValidationError("face after coface in filtration");
      if (dim(f) != dim(i) - 1) throw ValidationError("boundary entry of wrong dimension");
    }
  }
}

void write_filtration(const FilteredComplex& fc, std::ostream& out) {
  std::string line;
  for (std::size_t i = 0; i < fc.size(); ++i) {
    line = format_real(fc.value(i));
    for (auto v : fc.vertices(i)) (line += ' ') += std::to_string(v);
    line += '\n';
    out << line;
  }
}

FilteredComplex read_filtration(std::istream& in) {
  std::vector<std::pair<Simplex, double>> items;
  std::string line, tok;
  std::size_t lineno = 0;
  std::vector<VertexId> ids;
  while (std::getline(in, line)) {
    ++lineno;
    auto fail = [&](const std::string& what) {
      throw ValidationError("line " + std::to_string(lineno) + ": " + what);
    };
    std::istringstream ls(line);
    if (!(ls >> tok)) continue;
    double value = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) fail("bad value '" + tok + "'");
    ids.clear();
    while (ls >> tok) {
      VertexId v = 0;
      auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (r.ec != std::errc() || r.ptr != tok.data() + tok.size()) fail("bad vertex id '" + tok + "'");
      ids.push_back(v);
    }
    if (ids.empty()) fail("simplex without vertices");
    try {
      items.emplace_back(Simplex::from_unsorted(ids), value);
    } catch (const ValidationError& e) {
      fail(e.what());
    }
  }
  return FilteredComplex::from_simplices(std::move(items));
}

// ---------------------------------------------------------------------------
// Coning
//
// A contraction of u into v is realized by coning: every live simplex tau that
// contains the dying vertex gains the survivor, then the dying vertex's star
// leaves the live complex. Either endpoint may play the dying role (the two
// choices give isomorphic complexes), so the endpoint with the smaller live
// star dies and the token's target id is redirected to the survivor.

namespace {

constexpr VertexId kDeadVertex = std::numeric_limits<VertexId>::max();

// Live simplices bucketed by their smallest vertex. The facets of a simplex
// sit in at most two buckets, which keeps lookups cache-local.
class LowerStarMap {
 public:
  void grow(std::size_t vertices) {
    if (buckets_.size() < vertices) buckets_.resize(vertices);
  }

  const SimplexIndex* find(const Simplex& s) const {
    const auto& b = buckets_[s[0]];
    for (const auto& e : b)
      if (matches(e, s)) return &e.index;
    return nullptr;
  }

  void insert(const Simplex& s, SimplexIndex index) {
    Entry e{};
    e.size = static_cast<std::uint8_t>(s.size());
    std::copy(s.begin() + 1, s.end(), e.tail.begin());
    e.index = index;
    buckets_[s[0]].push_back(e);
  }

  void erase(const Simplex& s) {
    auto& b = buckets_[s[0]];
    for (auto& e : b)
      if (matches(e, s)) {
        e = b.back();
        b.pop_back();
        if (b.empty()) std::vector<Entry>().swap(b);
        return;
      }
  }

 private:
  struct Entry {
    std::array<VertexId, kMaxSimplexSize - 1> tail;
    std::uint8_t size;
    SimplexIndex index;
  };

  static bool matches(const Entry& e, const Simplex& s) {
    if (e.size != s.size()) return false;
    for (std::size_t i = 1; i < s.size(); ++i)
      if (e.tail[i - 1] != s[i]) return false;
    return true;
  }

  std::vector<std::vector<Entry>> buckets_;
};

class Coner {
 public:
  explicit Coner(int max_dim) : max_dim_(max_dim < 0 ? static_cast<int>(kMaxSimplexSize) - 1 : max_dim) {}

  FilteredComplex run(const TowerTokenStream& stream) {
    std::size_t index = 0;
    for (const TokenView t : stream) {
      token_ = index++;
      switch (t.kind) {
        case TokenKind::scale:
          if (started_ && !(t.scale > scale_)) fail("scales must increase strictly");
          scale_ = t.scale;
          started_ = true;
          break;
        case TokenKind::add:
          add(t.vertices);
          break;
        case TokenKind::contract:
          contract(t.vertices[0], t.vertices[1]);
          break;
      }
    }
    return std::move(fc_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("token " + std::to_string(token_) + ": " + what);
  }

  // Internal name of a token vertex id, or kDeadVertex.
  VertexId resolve(VertexId v) const { return v < alias_.size() ? alias_[v] : kDeadVertex; }

  SimplexIndex insert(const Simplex& s, const SimplexIndex* facets) {
    const auto idx = static_cast<SimplexIndex>(fc_.size());
    fc_.push(s.vertices(), scale_, {facets, s.size() > 1 ? s.size() : 0});
    live_.insert(s, idx);
    alive_.push_back(1);
    for (auto v : s) {
      stars_[v].push_back(idx);
      ++live_count_[v];
    }
    return idx;
  }

  void add(std::span<const VertexId> ids) {
    if (!started_) fail("add before the first scale");
    if (ids.size() == 1) {
      const VertexId v = ids[0];
      if (v < alias_.size() && alias_[v] != kUnused) fail("vertex id " + std::to_string(v) + " reused");
      if (alias_.size() <= v) alias_.resize(static_cast<std::size_t>(v) + 1, kUnused);
      if (stars_.size() <= v) {
        stars_.resize(static_cast<std::size_t>(v) + 1);
        live_count_.resize(static_cast<std::size_t>(v) + 1, 0);
        live_.grow(stars_.size());
      }
      alias_[v] = v;
      insert(Simplex::unchecked(ids), nullptr);
      return;
    }
    std::array<VertexId, kMaxSimplexSize> names{};
    for (std::size_t i = 0; i < ids.size(); ++i) {
      names[i] = resolve(ids[i]);
      if (names[i] == kDeadVertex || names[i] == kUnused)
        fail("vertex " + std::to_string(ids[i]) + " is not live");
    }
    std::sort(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(ids.size()));
    const Simplex s = Simplex::unchecked({names.data(), ids.size()});
    if (live_.find(s)) fail("simplex is already live");
    if (s.dim() > max_dim_) return;
    std::array<SimplexIndex, kMaxSimplexSize> facets{};
    for (std::size_t i = 0; i < s.size(); ++i) {
      const SimplexIndex* f = live_.find(s.facet(i));
      if (!f) fail("a face of the added simplex is not live");
      facets[i] = *f;
    }
    insert(s, facets.data());
  }

  SimplexIndex ensure(const Simplex& s) {
    if (const SimplexIndex* f = live_.find(s)) return *f;
    std::array<SimplexIndex, kMaxSimplexSize> facets{};
    for (std::size_t i = 0; s.size() > 1 && i < s.size(); ++i) facets[i] = ensure(s.facet(i));
    return insert(s, facets.data());
  }

  // Live simplices containing x, grouped by increasing dimension.
  void live_star(VertexId x, std::vector<SimplexIndex>& out) {
    out.clear();
    auto& list = stars_[x];
    std::size_t keep = 0;
    for (auto i : list)
      if (alive_[i]) list[keep++] = i;
    list.resize(keep);
    for (int q = 0; q <= max_dim_; ++q)
      for (auto i : list)
        if (fc_.dim(i) == q) out.push_back(i);
  }

  void contract(VertexId u, VertexId v) {
    if (!started_) fail("contract before the first scale");
    if (u == v) fail("contract of a vertex into itself");
    const VertexId a = resolve(u), b = resolve(v);
    if (a == kDeadVertex || a == kUnused) fail("contracted vertex " + std::to_string(u) + " is not live");
    if (b == kDeadVertex || b == kUnused) fail("target vertex " + std::to_string(v) + " is not live");
    VertexId dying = a, survivor = b;
    if (live_count_[b] < live_count_[a]) std::swap(dying, survivor);
    live_star(dying, star_);
    for (auto i : star_) {
      const Simplex tau = fc_.simplex(i);
      if (tau.contains(survivor)) continue;
      if (tau.dim() + 1 <= max_dim_)
        ensure(tau.with(survivor));
      else
        ensure(tau.renamed(dying, survivor));
    }
    live_star(dying, star_);
    for (auto i : star_) {
      alive_[i] = 0;
      const Simplex tau = fc_.simplex(i);
      live_.erase(tau);
      for (auto x : tau) --live_count_[x];
    }
    stars_[dying].clear();
    stars_[dying].shrink_to_fit();
    alias_[u] = kDeadVertex;
    alias_[v] = survivor;
  }

  static constexpr VertexId kUnused = kDeadVertex - 1;

  int max_dim_;
  FilteredComplex fc_;
  LowerStarMap live_;
  std::vector<std::vector<SimplexIndex>> stars_;
  std::vector<std::uint32_t> live_count_;
  std::vector<std::uint8_t> alive_;
  std::vector<VertexId> alias_;
  std::vector<SimplexIndex> star_;
  double scale_ = 0.0;
  bool started_ = false;
  std::size_t token_ = 0;
};

}  // namespace

FilteredComplex tower_to_filtration(const TowerTokenStream& stream, int max_dim) { return Coner(max_dim).run(stream); }

}  // namespace cechpix
