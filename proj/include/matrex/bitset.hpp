#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace matrex {

// Subset of a fixed universe {0, ..., universe-1} packed into 64-bit words.
// The first word is stored inline, so universes of up to 64 elements (all the
// desk-scale experiments) never touch the heap; larger universes spill the
// remaining words into a vector.
//
// operator< compares the ascending element sequences lexicographically, so
// for equal cardinality {0,1} < {0,2} < {1,2} and a strict prefix sorts
// before its extensions.
class Bitset {
 public:
  Bitset() = default;

  explicit Bitset(int universe) : universe_(universe) {
    assert(universe >= 0);
    if (universe > 64) tail_.assign((universe + 63) / 64 - 1, 0);
  }

  static Bitset of(int universe, std::initializer_list<int> elems) {
    Bitset b(universe);
    for (int e : elems) b.set(e);
    return b;
  }

  static Bitset from_elements(int universe, const std::vector<int>& elems) {
    Bitset b(universe);
    for (int e : elems) b.set(e);
    return b;
  }

  int universe() const { return universe_; }

  int count() const {
    int c = std::popcount(head_);
    for (std::uint64_t w : tail_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    if (head_) return false;
    for (std::uint64_t w : tail_)
      if (w) return false;
    return true;
  }

  bool test(int e) const {
    assert(e >= 0 && e < universe_);
    return (word(e >> 6) >> (e & 63)) & 1u;
  }

  void set(int e) {
    assert(e >= 0 && e < universe_);
    word(e >> 6) |= std::uint64_t(1) << (e & 63);
  }

  void reset(int e) {
    assert(e >= 0 && e < universe_);
    word(e >> 6) &= ~(std::uint64_t(1) << (e & 63));
  }

  void clear() {
    head_ = 0;
    for (auto& w : tail_) w = 0;
  }

  // Copy with `out` removed and `in` added; the workhorse of every swap.
  Bitset exchanged(int out, int in) const {
    Bitset r = *this;
    r.reset(out);
    r.set(in);
    return r;
  }

  int smallest() const {
    if (head_) return std::countr_zero(head_);
    for (std::size_t k = 0; k < tail_.size(); ++k)
      if (tail_[k]) return 64 * (int(k) + 1) + std::countr_zero(tail_[k]);
    return -1;
  }

  bool contains(const Bitset& o) const {
    assert(universe_ == o.universe_);
    if (o.head_ & ~head_) return false;
    for (std::size_t k = 0; k < tail_.size(); ++k)
      if (o.tail_[k] & ~tail_[k]) return false;
    return true;
  }

  bool intersects(const Bitset& o) const {
    assert(universe_ == o.universe_);
    if (head_ & o.head_) return true;
    for (std::size_t k = 0; k < tail_.size(); ++k)
      if (tail_[k] & o.tail_[k]) return true;
    return false;
  }

  Bitset& operator|=(const Bitset& o) { return apply(o, [](std::uint64_t a, std::uint64_t b) { return a | b; }); }
  Bitset& operator&=(const Bitset& o) { return apply(o, [](std::uint64_t a, std::uint64_t b) { return a & b; }); }
  Bitset& operator^=(const Bitset& o) { return apply(o, [](std::uint64_t a, std::uint64_t b) { return a ^ b; }); }
  Bitset& operator-=(const Bitset& o) { return apply(o, [](std::uint64_t a, std::uint64_t b) { return a & ~b; }); }

  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  Bitset complement() const {
    Bitset r(universe_);
    r.head_ = ~head_;
    for (std::size_t k = 0; k < tail_.size(); ++k) r.tail_[k] = ~tail_[k];
    r.trim();
    return r;
  }

  bool operator==(const Bitset& o) const {
    return universe_ == o.universe_ && head_ == o.head_ && tail_ == o.tail_;
  }
  bool operator!=(const Bitset& o) const { return !(*this == o); }

  bool operator<(const Bitset& o) const {
    assert(universe_ == o.universe_);
    int nw = word_count();
    for (int k = 0; k < nw; ++k) {
      std::uint64_t a = cword(k), b = o.cword(k);
      if (a == b) continue;
      std::uint64_t d = a ^ b;
      std::uint64_t low = d & (~d + 1);
      // The set owning the lowest differing bit has the smaller element
      // there; it precedes unless the other set is a strict prefix.
      if (a & low) return any_above(o, k, low);
      return !any_above(*this, k, low);
    }
    return false;
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(count());
    for (int e : *this) out.push_back(e);
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e : *this) {
      if (!first) s += ",";
      s += std::to_string(e);
      first = false;
    }
    return s + "}";
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull ^ std::uint64_t(universe_);
    auto mix = [&h](std::uint64_t w) {
      h ^= w;
      h *= 1099511628211ull;
    };
    mix(head_);
    for (std::uint64_t w : tail_) mix(w);
    return std::size_t(h);
  }

  class Iterator {
   public:
    Iterator(const Bitset* b, int pos) : b_(b), pos_(pos) {}
    int operator*() const { return pos_; }
    Iterator& operator++() {
      pos_ = b_->next_after(pos_);
      return *this;
    }
    bool operator!=(const Iterator& o) const { return pos_ != o.pos_; }

   private:
    const Bitset* b_;
    int pos_;
  };

  Iterator begin() const { return Iterator(this, next_after(-1)); }
  Iterator end() const { return Iterator(this, universe_); }

 private:
  int word_count() const { return universe_ <= 64 ? 1 : 1 + int(tail_.size()); }

  std::uint64_t cword(int k) const { return k == 0 ? head_ : tail_[k - 1]; }
  std::uint64_t& word(int k) { return k == 0 ? head_ : tail_[k - 1]; }
  std::uint64_t word(int k) const { return cword(k); }

  template <class F>
  Bitset& apply(const Bitset& o, F f) {
    assert(universe_ == o.universe_);
    head_ = f(head_, o.head_);
    for (std::size_t k = 0; k < tail_.size(); ++k) tail_[k] = f(tail_[k], o.tail_[k]);
    return *this;
  }

  void trim() {
    int last = universe_ == 0 ? 0 : (universe_ - 1) >> 6;
    int used = universe_ - 64 * last;
    std::uint64_t mask = used >= 64 ? ~std::uint64_t(0)
                                    : ((std::uint64_t(1) << used) - 1);
    if (universe_ == 0) mask = 0;
    word(last) &= mask;
    for (int k = last + 1; k < word_count(); ++k) word(k) = 0;
  }

  static bool any_above(const Bitset& x, int k, std::uint64_t low) {
    // `low << 1` overflowing to zero gives mask 0, which is what we want:
    // nothing sits above bit 63 inside this word.
    std::uint64_t mask = ~((low << 1) - 1);
    if (low == (std::uint64_t(1) << 63)) mask = 0;
    if (x.cword(k) & mask) return true;
    for (int j = k + 1; j < x.word_count(); ++j)
      if (x.cword(j)) return true;
    return false;
  }

  int next_after(int pos) const {
    int k = pos < 0 ? 0 : (pos + 1) >> 6;
    int bit = pos < 0 ? 0 : (pos + 1) & 63;
    int nw = word_count();
    while (k < nw) {
      std::uint64_t w = cword(k) >> bit << bit;
      if (w) {
        int r = 64 * k + std::countr_zero(w);
        return r < universe_ ? r : universe_;
      }
      ++k;
      bit = 0;
    }
    return universe_;
  }

  int universe_ = 0;
  std::uint64_t head_ = 0;
  std::vector<std::uint64_t> tail_;
};

// A basis is just a subset; the matroid code enforces the cardinality.
using Basis = Bitset;

}  // namespace matrex

template <>
struct std::hash<matrex::Bitset> {
  std::size_t operator()(const matrex::Bitset& b) const { return b.hash(); }
};
