#pragma once

#include <string>
#include <vector>

#include "matrex/exchange.hpp"
#include "matrex/monomial.hpp"

namespace matrex {

// Machine-checkable witness that `end` is reachable from `start` by double
// swaps. Replay semantics: initialize a working list from start's canonical
// factor order, apply each move at its stable positions (never re-sort), and
// compare the final list with `end` as a multiset.
struct Certificate {
  Monomial start;
  Monomial end;
  std::vector<SwapMove> moves;
  std::string matroid_sha;
};

// Maintains the working list during generation so emitted moves always name
// positions that replay exactly. Generators that think in terms of basis
// values (every search here does) use swap_values, which locates the values
// in the current list.
class CertificateBuilder {
 public:
  CertificateBuilder(const Matroid& m, Monomial start);

  // Position i drops e and gains f, position j drops f and gains e.
  void swap_positions(int i, int j, int e, int f);

  // Find positions currently holding these values, then swap. The first
  // position holding value_i is used; value_j is looked up at the other
  // positions. Throws InternalConsistency when a value is absent or a result
  // is not a basis, since generators only emit swaps they believe valid.
  void swap_values(const Basis& value_i, const Basis& value_j, int e, int f);

  const std::vector<Basis>& working() const { return working_; }
  std::size_t move_count() const { return moves_.size(); }

  Certificate finish() const;

 private:
  const Matroid& matroid_;
  Monomial start_;
  std::vector<Basis> working_;
  std::vector<SwapMove> moves_;
};

struct ReplayResult {
  bool valid = false;
  int failed_move = -1;  // index of the offending move, -1 when none
  std::string reason;
};

// Independent replay of a certificate against an oracle. Shares no code with
// the generators: a fresh working list, bit operations, and is_basis only.
ReplayResult verify_certificate(const Matroid& m, const Certificate& cert);

}  // namespace matrex
