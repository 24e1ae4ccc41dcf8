#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "matrex/certificate.hpp"
#include "matrex/matroid.hpp"
#include "matrex/monomial.hpp"

namespace matrex {

// Bijection source -> target that is the identity on source ∩ target and
// exchanges every subset: for each A ⊆ source, source ∪ π(A) \ A and
// target ∪ A \ π(A) are both bases. Stored as the full sorted (from, to) map.
struct ExchangeBijection {
  Basis source, target;
  std::vector<std::pair<int, int>> mapping;

  int image_of(int e) const {
    for (auto [from, to] : mapping)
      if (from == e) return to;
    throw InvalidParameter("element " + std::to_string(e) + " is not in the source");
  }
};

// Backtracking over the moving part, pruning with every subset check that the
// partial assignment already decides. Returns the lexicographically first
// bijection, or nothing when the pair has none.
std::optional<ExchangeBijection> find_sbo_bijection(const Matroid& m, const Basis& b1,
                                                    const Basis& b2);

struct SboCheck {
  bool strongly_base_orderable = true;
  std::optional<std::pair<Basis, Basis>> witness;  // a pair with no bijection
};

SboCheck is_strongly_base_orderable(const Matroid& m,
                                    std::uint64_t basis_cap = kDefaultBasisCap);

// Thrown when a rewrite needs a bijection for a pair that has none; the
// caller asserted a property the matroid lacks.
class NotBaseOrderable : public InvalidParameter {
 public:
  NotBaseOrderable(const Basis& b1, const Basis& b2)
      : InvalidParameter("no subset-exchange bijection between " + b1.to_string() +
                         " and " + b2.to_string()),
        pair(b1, b2) {}
  std::pair<Basis, Basis> pair;
};

// Largest total pairwise intersection over pairings of the two factor lists,
// with one witness pairing (the lexicographically smallest optimal one).
// Equal multisets reach degree * rank; every move that aligns a factor pair
// pushes the value up, which is what drives rewrite_certificate.
struct OverlapValue {
  int value = 0;
  std::vector<int> pairing;  // position i of `a` is paired with pairing[i] of `b`
};

OverlapValue overlap(const std::vector<Basis>& a, const std::vector<Basis>& b);
OverlapValue overlap(const Monomial& a, const Monomial& b);

// Certificate taking the first sequence to the second by double swaps,
// produced by the subset-exchange recursion: align by an optimal pairing,
// pick a mismatched element, split the union of an offending pair along a
// two-coloring of the bijection graph, emit the forward swaps, recurse, then
// emit the target-side swaps reversed. Requires a strongly base orderable
// matroid; surfaces NotBaseOrderable otherwise. When overlap_trace is given
// it receives the overlap value at each recursion level, which the recursion
// drives up strictly.
Certificate rewrite_certificate(const Matroid& m, const std::vector<Basis>& from,
                                const std::vector<Basis>& to,
                                std::vector<int>* overlap_trace = nullptr);

}  // namespace matrex
