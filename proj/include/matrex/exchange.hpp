#pragma once

#include <optional>
#include <utility>

#include "matrex/matroid.hpp"

namespace matrex {

// One move of a certificate: the bases at positions i and j of the working
// list trade e for f, i.e. position i drops e and gains f while position j
// drops f and gains e. e == f is the identity and is legal.
struct SwapMove {
  int i = 0;
  int j = 0;
  int e = 0;
  int f = 0;

  bool operator==(const SwapMove&) const = default;
};

// Smallest f in b2 \ b1 such that both b1 - e + f and b2 - f + e are bases.
// Such an f exists for every e in b1 \ b2 (symmetric exchange); not finding
// one means the oracle is broken.
int symmetric_exchange(const Matroid& m, const Basis& b1, const Basis& b2, int e);

// Smallest subset a2 of b2 (by size, then lexicographically) such that
// b1 - a1 + a2 and b2 - a2 + a1 are both bases. Exists for every a1 inside
// b1 (multiple symmetric exchange).
Bitset multiple_symmetric_exchange(const Matroid& m, const Basis& b1, const Basis& b2,
                                   const Bitset& a1);

// Apply the trade (e, f) to the pair if both results are bases. Failure is an
// ordinary outcome, not an error; searches probe freely with this.
std::optional<std::pair<Basis, Basis>> try_double_swap(const Matroid& m, const Basis& b1,
                                                       const Basis& b2, int e, int f);

inline SwapMove reversed(const SwapMove& mv) { return SwapMove{mv.i, mv.j, mv.f, mv.e}; }

}  // namespace matrex
