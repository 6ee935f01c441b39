#ifndef HCUBE_VERTEX_SET_HPP
#define HCUBE_VERTEX_SET_HPP

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hcube {

using Vertex = std::uint32_t;

// Fixed-width bit vector over vertex ids [0, universe). Iteration is always
// ascending id, so every sweep built on top of this is deterministic.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe)
      : nbits_(universe), words_((universe + 63) / 64, 0) {}

  static VertexSet of(std::size_t universe, std::initializer_list<Vertex> vs) {
    VertexSet s(universe);
    for (Vertex v : vs) s.insert(v);
    return s;
  }

  std::size_t universe() const { return nbits_; }

  bool contains(Vertex v) const {
    assert(v < nbits_);
    return (words_[v >> 6] >> (v & 63)) & 1;
  }
  void insert(Vertex v) {
    assert(v < nbits_);
    words_[v >> 6] |= std::uint64_t(1) << (v & 63);
  }
  void erase(Vertex v) {
    assert(v < nbits_);
    words_[v >> 6] &= ~(std::uint64_t(1) << (v & 63));
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  static constexpr Vertex npos = ~Vertex(0);

  // Lowest member, npos when empty.
  Vertex front() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return Vertex(i * 64 + std::countr_zero(words_[i]));
    return npos;
  }

  // First member with id > v, npos when none.
  Vertex next(Vertex v) const {
    std::size_t i = (v + 1) >> 6;
    if (i >= words_.size()) return npos;
    std::uint64_t w = words_[i] & (~std::uint64_t(0) << ((v + 1) & 63));
    while (true) {
      if (w) return Vertex(i * 64 + std::countr_zero(w));
      if (++i >= words_.size()) return npos;
      w = words_[i];
    }
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        fn(Vertex(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(count());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  VertexSet& operator|=(const VertexSet& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  bool operator==(const VertexSet& o) const {
    return nbits_ == o.nbits_ && words_ == o.words_;
  }

  bool is_subset_of(const VertexSet& o) const {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool intersects(const VertexSet& o) const {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  // Lexicographic order on ascending member sequences: the set holding the
  // lowest id on which the two differ comes first; a proper prefix comes first.
  bool lex_less(const VertexSet& o) const {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t diff = words_[i] ^ o.words_[i];
      if (!diff) continue;
      // members below e are shared; the set holding e is smaller unless the
      // other one is a proper prefix (has nothing at or above e)
      int b = std::countr_zero(diff);
      Vertex e = Vertex(i * 64 + b);
      bool mine = (words_[i] >> b) & 1;
      const VertexSet& other = mine ? o : *this;
      bool other_has_tail = other.next(e) != npos;
      return mine == other_has_tail;
    }
    return false;
  }

  std::size_t hash() const {
    std::size_t h = nbits_;
    for (auto w : words_) h = h * 0x9e3779b97f4a7c15ULL + std::hash<std::uint64_t>{}(w);
    return h;
  }

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for_each([&](Vertex v) {
      if (!first) s += ",";
      s += std::to_string(v);
      first = false;
    });
    return s + "}";
  }

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace hcube

#endif
