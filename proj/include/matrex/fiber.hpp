#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "matrex/certificate.hpp"
#include "matrex/matroid.hpp"
#include "matrex/monomial.hpp"

namespace matrex {

// Resource guards threaded through every potentially large search. A zero
// time limit means none. Node caps count distinct states ever stored.
struct Caps {
  std::uint64_t max_bases = kDefaultBasisCap;
  std::uint64_t max_fiber_nodes = 1'000'000;
  double time_limit_seconds = 0;
};

// All double-swap neighbors of a monomial: canonical, deduplicated, sorted,
// the monomial itself excluded.
std::vector<Monomial> neighbors(const Matroid& m, const Monomial& mono);

// Positional variant for ordered tuples: swaps act at a position pair and
// nothing is ever re-sorted.
std::vector<std::vector<Basis>> ordered_neighbors(const Matroid& m,
                                                  const std::vector<Basis>& tuple);

// Every monomial with the given multidegree, ascending. An infeasible
// multidegree yields an empty list; blowing the node cap is an error.
std::vector<Monomial> fiber_enumerate(const Matroid& m, const Multidegree& d,
                                      const Caps& caps = {});

struct FiberReport {
  Multidegree multidegree;
  std::uint64_t nodes = 0;
  std::uint64_t components = 0;
  std::vector<std::uint64_t> component_sizes;  // discovery order
  std::optional<int> diameter;                 // largest component, on request
  double elapsed_seconds = 0;
};

FiberReport connected_components(const Matroid& m, const Multidegree& d,
                                 const Caps& caps = {}, bool want_diameter = false);

// Shortest double-swap path between two compatible monomials, as a replayable
// certificate; nothing when they sit in different fiber components. This is
// the operational membership test for the double-swap ideal.
std::optional<Certificate> find_swap_path(const Matroid& m, const Monomial& from,
                                          const Monomial& to, const Caps& caps = {});

// Plain reachability, same search without path reconstruction.
bool swap_connected(const Matroid& m, const Monomial& from, const Monomial& to,
                    const Caps& caps = {});

}  // namespace matrex
