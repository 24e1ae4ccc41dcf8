#pragma once

#include <utility>
#include <vector>

#include "matrex/certificate.hpp"
#include "matrex/fiber.hpp"

namespace matrex {

// Distance of a basis from a reference basis: |b \ ref|. For a monomial the
// distances of the factors add up.
int reference_degree(const Basis& ref, const Basis& b);
int reference_degree(const Basis& ref, const Monomial& m);

struct BalanceResult {
  std::vector<Basis> balanced;  // every factor within distance 1 of the reference
  Certificate cert;             // from (dist-1) reference copies + b to the list
};

// Splits a basis at distance d from the reference into d factors at distance
// one, consuming d-1 reference copies; one swap per peeled unit.
BalanceResult balance(const Matroid& m, const Basis& ref, const Basis& b);

// A monomial whose factors all sit at distance <= 1 from the reference reads
// as a multigraph: factor ref - leave + enter becomes the edge (enter, leave).
// Factors equal to the reference contribute no edge.
struct BalancedMultigraph {
  Basis reference;
  std::vector<std::pair<int, int>> edges;  // (enter, leave)
};

BalancedMultigraph balanced_multigraph(const Basis& ref, const Monomial& m);

// Partition of the symmetric difference of the two edge multisets into even
// closed walks that alternate between g-edges and h-edges. Each cycle is the
// vertex list [f1, e1, f2, e2, ...]: (f_t, e_t) is a g-edge, (e_t, f_{t+1})
// an h-edge, indices wrapping. Requires equal references and equal vertex
// degrees (the multigraph face of compatibility).
std::vector<std::vector<int>> alternating_cycle_decomposition(
    const BalancedMultigraph& g, const BalancedMultigraph& h);

struct SaturationWitness {
  Certificate cert;
  Basis reference;
  int exponent = 0;
};

// Certificate that ref^k * m1 and ref^k * m2 are swap-connected, where
// k = max(0, reference_degree(ref, m1) - degree). The padded pair is always
// expected to connect; an exhausted search without a path is a falsification
// event and throws accordingly, while a cap overrun stays a ResourceLimit.
SaturationWitness saturation_witness(const Matroid& m, const Monomial& m1,
                                     const Monomial& m2, const Basis& ref,
                                     const Caps& caps = {});

// Smallest padding exponent that connects the pair; never exceeds the
// saturation_witness exponent unless that bound itself fails.
int min_saturation_exponent(const Matroid& m, const Monomial& m1, const Monomial& m2,
                            const Basis& ref, const Caps& caps = {});

}  // namespace matrex
