#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "matrex/bitset.hpp"
#include "matrex/error.hpp"

namespace matrex {

// Multiset of bases, the combinatorial shadow of a squarefree-in-each-factor
// monomial in basis variables. Factors are kept sorted so equal multisets
// compare equal; ordered tuples (needed for positional-exchange experiments)
// are plain std::vector<Basis> instead.
class Monomial {
 public:
  Monomial() = default;

  explicit Monomial(std::vector<Basis> factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end());
  }

  const std::vector<Basis>& factors() const { return factors_; }
  int degree() const { return int(factors_.size()); }
  bool empty() const { return factors_.empty(); }

  bool operator==(const Monomial& o) const { return factors_ == o.factors_; }
  bool operator!=(const Monomial& o) const { return factors_ != o.factors_; }
  bool operator<(const Monomial& o) const { return factors_ < o.factors_; }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ factors_.size();
    for (const Basis& b : factors_) h = h * 0x100000001b3ull ^ b.hash();
    return h;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      if (k) s += " ";
      s += factors_[k].to_string();
    }
    return s + "]";
  }

 private:
  std::vector<Basis> factors_;
};

// How often each ground element appears across the factors.
struct Multidegree {
  std::vector<int> counts;

  bool operator==(const Multidegree&) const = default;
  bool operator<(const Multidegree& o) const { return counts < o.counts; }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int c : counts) h = (h ^ std::size_t(c)) * 0x100000001b3ull;
    return h;
  }
};

inline Multidegree multidegree_of(const std::vector<Basis>& factors, int ground_size) {
  Multidegree d;
  d.counts.assign(ground_size, 0);
  for (const Basis& b : factors) {
    if (b.universe() != ground_size)
      throw InvalidParameter("factor universe does not match ground set size");
    for (int e : b) ++d.counts[e];
  }
  return d;
}

inline Multidegree multidegree_of(const Monomial& m, int ground_size) {
  return multidegree_of(m.factors(), ground_size);
}

// Same degree and same multidegree: the two sides of a well-formed binomial.
inline bool compatible(const Monomial& a, const Monomial& b, int ground_size) {
  return a.degree() == b.degree() &&
         multidegree_of(a, ground_size) == multidegree_of(b, ground_size);
}

}  // namespace matrex

template <>
struct std::hash<matrex::Monomial> {
  std::size_t operator()(const matrex::Monomial& m) const { return m.hash(); }
};

template <>
struct std::hash<matrex::Multidegree> {
  std::size_t operator()(const matrex::Multidegree& d) const { return d.hash(); }
};
