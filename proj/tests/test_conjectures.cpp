#include <algorithm>

#include "catalog.hpp"
#include "doctest.h"
#include "matrex/conjectures.hpp"

using namespace matrex;

namespace {

Monomial mono(int n, std::initializer_list<std::initializer_list<int>> factors) {
  std::vector<Basis> fs;
  for (auto f : factors) fs.push_back(Basis::of(n, f));
  return Monomial(std::move(fs));
}

}  // namespace

TEST_CASE("exchange connectivity holds on the uniform fixture") {
  auto m = uniform_matroid(2, 4);
  TEReport v1 = te_check(*m, 3, 1);
  CHECK(v1.verdict == Verdict::Holds);
  CHECK(v1.fibers_examined == 51);
  CHECK(v1.disconnected.empty());

  TEReport v2 = te_check(*m, 3, 2);
  CHECK(v2.verdict == Verdict::Holds);
  CHECK(v2.fibers_examined == 7);

  TEReport v3 = te_check(*m, 3, 3);
  CHECK(v3.verdict == Verdict::Holds);
  CHECK(v3.fibers_examined == 7);

  // bounding the moved subset at one makes variant 3 the plain double swap
  TEReport tight = te_check(*m, 3, 3, {}, 1, 1);
  CHECK(tight.verdict == Verdict::Holds);
  CHECK(tight.fibers_examined == 7);
}

TEST_CASE("exchange connectivity holds on the graphic fixture") {
  auto k4 = fixtures::k4();
  TEReport v1 = te_check(*k4, 2, 1);
  CHECK(v1.verdict == Verdict::Holds);
  CHECK(v1.fibers_examined == 85);
  TEReport v2 = te_check(*k4, 2, 2);
  CHECK(v2.verdict == Verdict::Holds);
  CHECK(v2.fibers_examined == 31);
  TEReport v3 = te_check(*k4, 2, 3);
  CHECK(v3.verdict == Verdict::Holds);
  CHECK(v3.fibers_examined == 31);
}

TEST_CASE("parallel runs agree with serial runs") {
  auto k4 = fixtures::k4();
  TEReport serial = te_check(*k4, 2, 2, {}, 1);
  TEReport wide = te_check(*k4, 2, 2, {}, 4);
  CHECK(serial.fibers_examined == wide.fibers_examined);
  CHECK(serial.disconnected.size() == wide.disconnected.size());
  CHECK(serial.verdict == wide.verdict);
}

TEST_CASE("degree one is vacuous and bad arguments are rejected") {
  auto m = uniform_matroid(2, 4);
  TEReport r = te_check(*m, 1, 2);
  CHECK(r.verdict == Verdict::Holds);
  CHECK(r.fibers_examined == 0);
  CHECK_THROWS_AS(te_check(*m, 0, 2), InvalidParameter);
  CHECK_THROWS_AS(te_check(*m, 2, 0), InvalidParameter);
  CHECK_THROWS_AS(te_check(*m, 2, 4), InvalidParameter);
}

TEST_CASE("a tight node cap turns the verdict inconclusive") {
  auto m = uniform_matroid(2, 4);
  Caps caps;
  caps.max_fiber_nodes = 2;
  TEReport r = te_check(*m, 3, 2, caps);
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK(r.fibers_examined == 0);
  CHECK(r.note.substr(0, 9) == "degree 2:");
}

TEST_CASE("commutation certificates transpose an ordered pair") {
  auto m = uniform_matroid(2, 4);
  Basis a = Basis::of(4, {0, 1});
  Basis b = Basis::of(4, {2, 3});
  auto cert = commutation_check(*m, a, b);
  REQUIRE(cert.has_value());
  CHECK(cert->start == Monomial({a, b}));
  CHECK(cert->end == cert->start);
  CHECK(cert->moves.size() == 2);
  CHECK(verify_certificate(*m, *cert).valid);

  // positional replay genuinely lands on the transposed tuple
  std::vector<Basis> tup{a, b};
  for (const SwapMove& mv : cert->moves) {
    Basis x = tup[mv.i].exchanged(mv.e, mv.f);
    Basis y = tup[mv.j].exchanged(mv.f, mv.e);
    tup[mv.i] = x;
    tup[mv.j] = y;
  }
  CHECK(tup == std::vector<Basis>{b, a});
}

TEST_CASE("commutation on a graphic pair and on equal bases") {
  auto k4 = fixtures::k4();
  Basis a = Basis::of(6, {0, 1, 4});
  Basis b = Basis::of(6, {2, 3, 5});
  auto cert = commutation_check(*k4, a, b);
  REQUIRE(cert.has_value());
  CHECK(!cert->moves.empty());
  std::vector<Basis> tup{std::min(a, b), std::max(a, b)};
  std::vector<Basis> want{tup[1], tup[0]};
  for (const SwapMove& mv : cert->moves) {
    Basis x = tup[mv.i].exchanged(mv.e, mv.f);
    Basis y = tup[mv.j].exchanged(mv.f, mv.e);
    tup[mv.i] = x;
    tup[mv.j] = y;
  }
  CHECK(tup == want);

  auto same = commutation_check(*k4, a, a);
  REQUIRE(same.has_value());
  CHECK(same->moves.empty());

  CHECK_THROWS_AS(commutation_check(*k4, Basis::of(6, {0, 1, 3}), b),
                  InvalidParameter);
  Caps caps;
  caps.max_fiber_nodes = 2;
  CHECK_THROWS_AS(commutation_check(*uniform_matroid(2, 4), Basis::of(4, {0, 1}),
                                    Basis::of(4, {2, 3}), caps),
                  ResourceLimit);
}

TEST_CASE("cyclic orderings wrap every rank window through the bases") {
  auto k4 = fixtures::k4();
  auto ord = cyclic_ordering(*k4);
  REQUIRE(ord.has_value());
  CHECK(*ord == std::vector<int>{0, 1, 4, 2, 3, 5});

  CHECK(*cyclic_ordering(*uniform_matroid(2, 4)) == std::vector<int>{0, 1, 2, 3});
  CHECK(*cyclic_ordering(*fixtures::doubled_p3()) == std::vector<int>{0, 2, 1, 3});
  CHECK(*cyclic_ordering(*fixtures::doubled_star()) ==
        std::vector<int>{0, 2, 4, 1, 3, 5});
  CHECK(*cyclic_ordering(*uniform_matroid(1, 2)) == std::vector<int>{0, 1});
}

TEST_CASE("cyclic orderings across the catalog are valid arrangements") {
  for (const auto& entry : fixtures::cyclic_catalog()) {
    const auto& m = *entry.m;
    auto ord = cyclic_ordering(m);
    REQUIRE(ord.has_value());
    const int n = m.ground_size();
    const int r = m.rank();
    REQUIRE(int(ord->size()) == n);
    CHECK((*ord)[0] == 0);
    std::vector<int> sorted(*ord);
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < n; ++k) CHECK(sorted[k] == k);
    for (int s = 0; s < n; ++s) {
      Bitset w(n);
      for (int k = 0; k < r; ++k) w.set((*ord)[(s + k) % n]);
      CHECK(m.is_basis(w));
    }
  }
}

TEST_CASE("cyclic ordering rejects ground sets that cannot split") {
  CHECK_THROWS_AS(cyclic_ordering(*uniform_matroid(2, 5)), InvalidParameter);
  auto no_split = explicit_matroid(
      4, {Basis::of(4, {0, 1}), Basis::of(4, {0, 2})});
  CHECK_THROWS_AS(cyclic_ordering(*no_split), InvalidParameter);
  Caps caps;
  caps.max_fiber_nodes = 1;
  CHECK_THROWS_AS(cyclic_ordering(*fixtures::k4(), caps), ResourceLimit);
}

TEST_CASE("the direct sum harness reports consistent observations") {
  HarnessReport rep = direct_sum_harness(uniform_matroid(2, 4), 2);
  CHECK(rep.consistent);
  CHECK(rep.m_te1.verdict == Verdict::Holds);
  CHECK(rep.m_te1.variant == 1);
  CHECK(rep.m_te1.fibers_examined == 13);
  CHECK(rep.mm_te1.verdict == Verdict::Holds);
  CHECK(rep.mm_te1.fibers_examined == 325);
  CHECK(rep.mm_te2.verdict == Verdict::Holds);
  CHECK(rep.mm_te2.fibers_examined == 181);
  CHECK(rep.detail ==
        "observations up to degree 2 are consistent with the expected equivalences");

  CHECK_THROWS_AS(direct_sum_harness(nullptr, 2), InvalidParameter);
}

TEST_CASE("a capped harness reports incomplete but consistent observations") {
  Caps caps;
  caps.max_fiber_nodes = 50;
  HarnessReport rep = direct_sum_harness(uniform_matroid(2, 4), 2, caps);
  CHECK(rep.consistent);
  CHECK(rep.mm_te1.verdict == Verdict::Inconclusive);
  CHECK(rep.detail.find("incomplete") != std::string::npos);
}

TEST_CASE("discrete polymatroids validate the vector exchange axiom") {
  DiscretePolymatroid p({{2, 0}, {1, 1}, {0, 2}});
  CHECK(p.dimension() == 2);
  CHECK(p.rank() == 2);
  CHECK(p.bases().size() == 3);
  CHECK(p.is_base({1, 1}));
  CHECK(!p.is_base({2, 1}));
  CHECK(!p.is_base({2, 0, 0}));

  DiscretePolymatroid dedup({{1, 0}, {1, 0}, {0, 1}});
  CHECK(dedup.bases().size() == 2);

  CHECK_THROWS_AS(DiscretePolymatroid({{2, 0, 0}, {0, 2, 0}}), InvalidParameter);
  CHECK_THROWS_AS(DiscretePolymatroid({{1, 0}, {2, 0}}), InvalidParameter);
  CHECK_THROWS_AS(DiscretePolymatroid({{-1, 2}}), InvalidParameter);
  CHECK_THROWS_AS(DiscretePolymatroid(std::vector<std::vector<int>>{}),
                  InvalidParameter);
  CHECK_THROWS_AS(DiscretePolymatroid({{1, 0}, {0, 1, 0}}), InvalidParameter);
  CHECK_THROWS_AS(DiscretePolymatroid(std::vector<std::vector<int>>{{}}),
                  InvalidParameter);
}

TEST_CASE("the lift of a segment polymatroid is a uniform matroid") {
  DiscretePolymatroid p({{2, 0}, {1, 1}, {0, 2}});
  MatroidPtr lifted = polymatroid_to_matroid(p);
  CHECK(lifted->ground_size() == 4);
  CHECK(lifted->rank() == 2);
  CHECK(lifted->bases().size() == 6);  // independence never bites: U(2,4)

  DiscretePolymatroid unit({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  MatroidPtr u13 = polymatroid_to_matroid(unit);
  CHECK(u13->ground_size() == 3);
  CHECK(u13->bases().size() == 3);

  DiscretePolymatroid mid({{2, 0, 1}, {1, 1, 1}, {0, 2, 1}});
  MatroidPtr lift_mid = polymatroid_to_matroid(mid);
  CHECK(lift_mid->ground_size() == 9);
  CHECK(lift_mid->rank() == 3);
  CHECK(!lift_mid->is_basis(Basis::of(9, {0, 1, 3})));  // counts (2,1,0) fit no base
}

TEST_CASE("column counts and lifts are inverse on base vectors") {
  for (const auto& [name, p] : fixtures::polymatroid_fixtures()) {
    CAPTURE(name);
    MatroidPtr lifted = polymatroid_to_matroid(p);
    for (const auto& v : p.bases()) {
      Basis b = lift_base(p, v);
      CHECK(lifted->is_basis(b));
      CHECK(column_counts(p, b) == v);
    }
    // every lifted basis projects onto a base vector
    for (const Basis& b : lifted->bases()) CHECK(p.is_base(column_counts(p, b)));
  }
  DiscretePolymatroid p({{2, 0}, {1, 1}, {0, 2}});
  CHECK(lift_base(p, {2, 0}) == Basis::of(4, {0, 2}));
  CHECK(lift_base(p, {1, 1}) == Basis::of(4, {0, 1}));
  CHECK_THROWS_AS(lift_base(p, {2, 1}), InvalidParameter);
  CHECK_THROWS_AS(column_counts(p, Basis::of(6, {0, 1})), InvalidParameter);
}

TEST_CASE("lifted swaps project to at most one unit move") {
  DiscretePolymatroid p({{2, 0}, {1, 1}, {0, 2}});
  MatroidPtr lifted = polymatroid_to_matroid(p);

  auto cross = polymatroid_swap_correspondence(p, *lifted, Basis::of(4, {0, 2}),
                                               Basis::of(4, {1, 3}), 0, 1);
  REQUIRE(cross.size() == 1);
  CHECK(cross[0] == PolymatroidSwap{0, 1});

  auto same_col = polymatroid_swap_correspondence(p, *lifted, Basis::of(4, {0, 1}),
                                                  Basis::of(4, {2, 3}), 0, 2);
  CHECK(same_col.empty());

  CHECK_THROWS_AS(polymatroid_swap_correspondence(p, *lifted, Basis::of(4, {0, 2}),
                                                  Basis::of(4, {1, 3}), 1, 0),
                  InvalidParameter);
  CHECK_THROWS_AS(polymatroid_swap_correspondence(p, *uniform_matroid(2, 6),
                                                  Basis::of(6, {0, 2}),
                                                  Basis::of(6, {1, 3}), 0, 1),
                  InvalidParameter);

  DiscretePolymatroid mid({{2, 0, 1}, {1, 1, 1}, {0, 2, 1}});
  MatroidPtr lift_mid = polymatroid_to_matroid(mid);
  CHECK_THROWS_AS(polymatroid_swap_correspondence(mid, *lift_mid,
                                                  Basis::of(9, {0, 2, 3}),
                                                  Basis::of(9, {1, 2, 4}), 2, 1),
                  InvalidParameter);  // the swapped set leaves the lift
}

TEST_CASE("every valid lifted swap projects consistently across fixtures") {
  for (const auto& [name, p] : fixtures::polymatroid_fixtures()) {
    CAPTURE(name);
    MatroidPtr lifted = polymatroid_to_matroid(p);
    const auto& bases = lifted->bases();
    int tried = 0;
    for (const Basis& b1 : bases) {
      for (const Basis& b2 : bases) {
        for (int e : b1 - b2) {
          for (int f : b2 - b1) {
            if (!lifted->is_basis(b1.exchanged(e, f)) ||
                !lifted->is_basis(b2.exchanged(f, e)))
              continue;
            auto swaps = polymatroid_swap_correspondence(p, *lifted, b1, b2, e, f);
            const int dim = p.dimension();
            if (e % dim == f % dim) {
              CHECK(swaps.empty());
            } else {
              REQUIRE(swaps.size() == 1);
              CHECK(swaps[0].from_coord == e % dim);
              CHECK(swaps[0].to_coord == f % dim);
            }
            ++tried;
          }
        }
      }
    }
    CHECK(tried > 0);
  }
}
