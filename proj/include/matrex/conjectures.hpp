#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matrex/certificate.hpp"
#include "matrex/fiber.hpp"
#include "matrex/matroid.hpp"

namespace matrex {

// Exchange-connectivity checkers over all fibers up to a degree bound.
// Variants name which moves connect a fiber:
//   1 - double swaps on ordered tuples at fixed position pairs,
//   2 - double swaps on unordered monomials,
//   3 - multiple symmetric exchanges on unordered monomials.
// Connectivity under 1 implies 2 implies 3 fiberwise.
struct TEFiberIssue {
  int degree = 0;
  Multidegree multidegree;
  std::uint64_t components = 0;
};

enum class Verdict { Holds, Fails, Inconclusive };

struct TEReport {
  int variant = 2;
  int max_degree = 0;
  // Fibers whose state space (tuples for variant 1, monomials otherwise)
  // has at least two nodes; singletons are vacuous and skipped.
  std::uint64_t fibers_examined = 0;
  std::vector<TEFiberIssue> disconnected;
  Verdict verdict = Verdict::Holds;
  std::string note;
};

// subset_bound limits |A1| for variant 3; 0 picks min(rank, 6). jobs > 1
// distributes fibers across threads; results are aggregated in fiber order,
// so reports do not depend on scheduling.
TEReport te_check(const Matroid& m, int max_degree, int variant, const Caps& caps = {},
                  int jobs = 1, int subset_bound = 0);

// Search for a swap sequence taking the ordered pair (b1, b2) to (b2, b1).
// The certificate's moves genuinely flip the order: replaying them at stable
// positions from the sorted pair ends with the two bases transposed.
std::optional<Certificate> commutation_check(const Matroid& m, const Basis& b1,
                                             const Basis& b2, const Caps& caps = {});

// Cyclic arrangement of the whole ground set in which every window of rank
// consecutive elements (wrapping) is a basis. Requires the ground set to be
// the disjoint union of two bases; exhaustion returns nothing.
std::optional<std::vector<int>> cyclic_ordering(const Matroid& m,
                                                const Caps& caps = {});

struct HarnessReport {
  TEReport m_te1;
  TEReport mm_te1;
  TEReport mm_te2;
  bool consistent = true;
  std::string detail;
};

// Compares variant-1 connectivity of m with variant-1/2 connectivity of
// m + m up to max_degree and flags any combination the degree-truncated
// equivalences forbid. Findings are reported as consistent-with, never as
// proof.
HarnessReport direct_sum_harness(const MatroidPtr& m, int max_degree,
                                 const Caps& caps = {}, int jobs = 1);

// Nonnegative integer vectors with a common coordinate sum satisfying the
// vector exchange axiom; validated exhaustively at construction.
class DiscretePolymatroid {
 public:
  explicit DiscretePolymatroid(std::vector<std::vector<int>> bases);

  int dimension() const { return dim_; }
  int rank() const { return rank_; }
  const std::vector<std::vector<int>>& bases() const { return bases_; }
  bool is_base(const std::vector<int>& v) const;

 private:
  int dim_ = 0;
  int rank_ = 0;
  std::vector<std::vector<int>> bases_;
};

// The classical reduction: ground set {0..rank-1} x {0..dim-1} with element
// (level, column) encoded as level * dim + column; a set is independent when
// its column counts fit under some base vector. Axioms of the result are
// verified exhaustively before it is returned.
MatroidPtr polymatroid_to_matroid(const DiscretePolymatroid& p,
                                  std::uint64_t basis_cap = kDefaultBasisCap);

std::vector<int> column_counts(const DiscretePolymatroid& p, const Basis& b);

// Base of the lifted matroid whose column counts are v, filled bottom-up.
Basis lift_base(const DiscretePolymatroid& p, const std::vector<int>& v);

// One unit moving between coordinates: u loses at from_coord and gains at
// to_coord, v does the opposite.
struct PolymatroidSwap {
  int from_coord = 0;
  int to_coord = 0;
  bool operator==(const PolymatroidSwap&) const = default;
};

// Projection of a valid lifted swap onto the polymatroid: empty when both
// elements share a column, exactly one reciprocal unit move otherwise. A
// projection that fails to be a base exchange would falsify the reduction
// and throws.
std::vector<PolymatroidSwap> polymatroid_swap_correspondence(
    const DiscretePolymatroid& p, const Matroid& lifted, const Basis& b1,
    const Basis& b2, int e, int f);

}  // namespace matrex
