#include "cechpix/token_stream.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "cechpix/errors.hpp"

namespace cechpix {

namespace {
constexpr std::uint32_t kKindShift = 29;
constexpr std::uint32_t kPayloadMask = (1u << kKindShift) - 1;
}  // namespace

void TowerTokenStream::push_scale(double s) {
  words_.push_back((static_cast<std::uint32_t>(TokenKind::scale) << kKindShift) |
                   static_cast<std::uint32_t>(scales_.size()));
  scales_.push_back(s);
  ++tokens_;
}

void TowerTokenStream::push_add(std::span<const VertexId> v) {
  words_.push_back((static_cast<std::uint32_t>(TokenKind::add) << kKindShift) | static_cast<std::uint32_t>(v.size()));
  words_.insert(words_.end(), v.begin(), v.end());
  if (adds_by_dim_.size() < v.size()) adds_by_dim_.resize(v.size(), 0);
  ++adds_by_dim_[v.size() - 1];
  ++adds_;
  ++tokens_;
}

void TowerTokenStream::push_contract(VertexId u, VertexId v) {
  words_.push_back((static_cast<std::uint32_t>(TokenKind::contract) << kKindShift) | 2u);
  words_.push_back(u);
  words_.push_back(v);
  ++contracts_;
  ++tokens_;
}

std::size_t TowerTokenStream::add_count(int q) const {
  return q >= 0 && static_cast<std::size_t>(q) < adds_by_dim_.size() ? adds_by_dim_[q] : 0;
}

TokenView TowerTokenStream::const_iterator::operator*() const {
  const std::uint32_t head = s_->words_[pos_];
  TokenView t{};
  t.kind = static_cast<TokenKind>(head >> kKindShift);
  const std::uint32_t payload = head & kPayloadMask;
  if (t.kind == TokenKind::scale)
    t.scale = s_->scales_[payload];
  else
    t.vertices = {s_->words_.data() + pos_ + 1, payload};
  return t;
}

TowerTokenStream::const_iterator& TowerTokenStream::const_iterator::operator++() {
  const std::uint32_t head = s_->words_[pos_];
  const auto kind = static_cast<TokenKind>(head >> kKindShift);
  pos_ += 1 + (kind == TokenKind::scale ? 0 : (head & kPayloadMask));
  return *this;
}

std::string format_real(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_tokens(const TowerTokenStream& stream, std::ostream& out) {
  std::string line;
  for (const TokenView t : stream) {
    switch (t.kind) {
      case TokenKind::scale:
        line = "scale " + format_real(t.scale);
        break;
      case TokenKind::add:
        line = "add";
        for (auto v : t.vertices) (line += ' ') += std::to_string(v);
        break;
      case TokenKind::contract:
        line = "contract " + std::to_string(t.vertices[0]) + ' ' + std::to_string(t.vertices[1]);
        break;
    }
    line += '\n';
    out << line;
  }
}

TowerTokenStream read_tokens(std::istream& in) {
  TowerTokenStream s;
  std::string line;
  std::size_t lineno = 0;
  std::vector<VertexId> ids;
  while (std::getline(in, line)) {
    ++lineno;
    auto fail = [&](const std::string& what) {
      throw ValidationError("line " + std::to_string(lineno) + ": " + what);
    };
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "scale") {
      std::string tok;
      if (!(ls >> tok)) fail("scale token without value");
      double x = 0.0;
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) fail("bad scale value '" + tok + "'");
      s.push_scale(x);
    } else if (kw == "add" || kw == "contract") {
      ids.clear();
      std::string tok;
      while (ls >> tok) {
        VertexId v = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) fail("bad vertex id '" + tok + "'");
        ids.push_back(v);
      }
      if (kw == "add") {
        if (ids.empty()) fail("add token without vertices");
        for (std::size_t i = 1; i < ids.size(); ++i)
          if (ids[i] <= ids[i - 1]) fail("add token vertices must be strictly increasing");
        if (ids.size() > kMaxSimplexSize) fail("simplex too large");
        s.push_add(ids);
      } else {
        if (ids.size() != 2) fail("contract token needs exactly two vertex ids");
        s.push_contract(ids[0], ids[1]);
      }
      continue;
    } else {
      fail("unknown token '" + kw + "'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing text '" + extra + "'");
  }
  return s;
}

// ---------------------------------------------------------------------------

void LiveComplex::insert(const Simplex& s) {
  if (!simplices_.insert(s).second) return;
  for (auto v : s) stars_[v].push_back(s);
  if (by_dim_.size() < s.size()) by_dim_.resize(s.size(), 0);
  ++by_dim_[s.size() - 1];
}

void LiveComplex::erase(const Simplex& s) {
  if (simplices_.erase(s) == 0) return;
  --by_dim_[s.size() - 1];
  if (s.size() == 1) stars_.erase(s[0]);
}

std::vector<Simplex> LiveComplex::star(VertexId v) const {
  std::vector<Simplex> out;
  auto it = stars_.find(v);
  if (it == stars_.end()) return out;
  for (const auto& s : it->second)
    if (simplices_.contains(s)) out.push_back(s);
  std::sort(out.begin(), out.end(), dim_lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t LiveComplex::size(int q) const {
  return q >= 0 && static_cast<std::size_t>(q) < by_dim_.size() ? by_dim_[q] : 0;
}

std::vector<Simplex> LiveComplex::sorted() const {
  std::vector<Simplex> out(simplices_.begin(), simplices_.end());
  std::sort(out.begin(), out.end());
  return out;
}

void TowerReplay::fail(const std::string& what) const {
  throw ValidationError("token " + std::to_string(index_) + ": " + what);
}

void TowerReplay::apply(const TokenView& t) {
  switch (t.kind) {
    case TokenKind::scale:
      if (started_ && !(t.scale > scale_)) fail("scales must increase strictly");
      scale_ = t.scale;
      started_ = true;
      break;
    case TokenKind::add: {
      if (!started_) fail("add before the first scale");
      Simplex s = Simplex::from_sorted(t.vertices);
      if (complex_.contains(s)) fail("simplex " + s.str() + " is already live");
      if (s.size() == 1) {
        if (!ever_.insert(s[0]).second) fail("vertex id " + std::to_string(s[0]) + " reused");
      } else {
        for (std::size_t i = 0; i < s.size(); ++i)
          if (!complex_.contains(s.facet(i))) fail("face " + s.facet(i).str() + " of " + s.str() + " is not live");
      }
      complex_.insert(s);
      break;
    }
    case TokenKind::contract: {
      if (!started_) fail("contract before the first scale");
      const VertexId u = t.vertices[0], v = t.vertices[1];
      if (u == v) fail("contract of a vertex into itself");
      if (!complex_.vertex_live(u)) fail("contracted vertex " + std::to_string(u) + " is not live");
      if (!complex_.vertex_live(v)) fail("target vertex " + std::to_string(v) + " is not live");
      auto star = complex_.star(u);
      for (const auto& s : star) complex_.insert(s.renamed(u, v));
      for (auto it = star.rbegin(); it != star.rend(); ++it) complex_.erase(*it);
      break;
    }
  }
  ++index_;
}

void TowerReplay::apply_all(const TowerTokenStream& s) {
  for (const TokenView t : s) apply(t);
}

}  // namespace cechpix
