#include "matrex/exchange.hpp"

#include <numeric>
#include <vector>

namespace matrex {

namespace {

void require_basis_pair(const Matroid& m, const Basis& b1, const Basis& b2) {
  if (!m.is_basis(b1))
    throw InvalidParameter(b1.to_string() + " is not a basis");
  if (!m.is_basis(b2))
    throw InvalidParameter(b2.to_string() + " is not a basis");
}

}  // namespace

int symmetric_exchange(const Matroid& m, const Basis& b1, const Basis& b2, int e) {
  require_basis_pair(m, b1, b2);
  if (e < 0 || e >= m.ground_size() || !b1.test(e) || b2.test(e))
    throw InvalidParameter("element " + std::to_string(e) + " is not in " +
                           b1.to_string() + " \\ " + b2.to_string());
  for (int f : b2 - b1) {
    if (m.is_basis(b1.exchanged(e, f)) && m.is_basis(b2.exchanged(f, e))) return f;
  }
  throw InternalConsistency("no symmetric exchange for element " + std::to_string(e) +
                            " between " + b1.to_string() + " and " + b2.to_string());
}

Bitset multiple_symmetric_exchange(const Matroid& m, const Basis& b1, const Basis& b2,
                                   const Bitset& a1) {
  require_basis_pair(m, b1, b2);
  if (!b1.contains(a1))
    throw InvalidParameter(a1.to_string() + " is not a subset of " + b1.to_string());

  const std::vector<int> pool = b2.elements();
  const int n = int(pool.size());
  const Bitset b1_minus = b1 - a1;

  for (int size = 0; size <= n; ++size) {
    // Lexicographically ordered size-`size` subsets of b2. The cardinality
    // prune is the count test inside is_basis, which runs before the oracle.
    std::vector<int> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      Bitset a2(b2.universe());
      for (int k : idx) a2.set(pool[k]);
      Basis d1 = b1_minus | a2;
      Basis d2 = (b2 - a2) | a1;
      if (m.is_basis(d1) && m.is_basis(d2)) return a2;
      int i = size - 1;
      while (i >= 0 && idx[i] == n - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  throw InternalConsistency("no multiple symmetric exchange for " + a1.to_string() +
                            " between " + b1.to_string() + " and " + b2.to_string());
}

std::optional<std::pair<Basis, Basis>> try_double_swap(const Matroid& m, const Basis& b1,
                                                       const Basis& b2, int e, int f) {
  if (e < 0 || e >= m.ground_size() || !b1.test(e))
    throw InvalidParameter("element " + std::to_string(e) + " is not in " +
                           b1.to_string());
  if (f < 0 || f >= m.ground_size() || !b2.test(f))
    throw InvalidParameter("element " + std::to_string(f) + " is not in " +
                           b2.to_string());
  Basis d1 = b1.exchanged(e, f);
  Basis d2 = b2.exchanged(f, e);
  if (!m.is_basis(d1) || !m.is_basis(d2)) return std::nullopt;
  return std::make_pair(std::move(d1), std::move(d2));
}

}  // namespace matrex
