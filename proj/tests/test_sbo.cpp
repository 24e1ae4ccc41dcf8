#include <random>

#include "catalog.hpp"
#include "doctest.h"
#include "matrex/fiber.hpp"
#include "matrex/sbo.hpp"

using namespace matrex;

TEST_CASE("bijections map moving parts and fix the intersection") {
  auto m = uniform_matroid(2, 4);
  auto pi = find_sbo_bijection(*m, Basis::of(4, {0, 1}), Basis::of(4, {2, 3}));
  REQUIRE(pi.has_value());
  CHECK(pi->mapping == std::vector<std::pair<int, int>>{{0, 2}, {1, 3}});
  CHECK(pi->image_of(0) == 2);
  CHECK_THROWS_AS(pi->image_of(2), InvalidParameter);

  auto fixed = find_sbo_bijection(*m, Basis::of(4, {0, 1}), Basis::of(4, {0, 2}));
  REQUIRE(fixed.has_value());
  CHECK(fixed->mapping == std::vector<std::pair<int, int>>{{0, 0}, {1, 2}});
}

TEST_CASE("every subset exchange of a found bijection is a basis pair") {
  auto m = fixtures::diamond();
  const auto& bases = m->bases();
  for (const Basis& b1 : bases) {
    for (const Basis& b2 : bases) {
      auto pi = find_sbo_bijection(*m, b1, b2);
      REQUIRE(pi.has_value());  // series-parallel graphs are base orderable
      const auto moving = (b1 - b2).elements();
      for (unsigned mask = 0; mask < (1u << moving.size()); ++mask) {
        Bitset a(m->ground_size());
        Bitset img(m->ground_size());
        for (std::size_t t = 0; t < moving.size(); ++t)
          if (mask >> t & 1) {
            a.set(moving[t]);
            img.set(pi->image_of(moving[t]));
          }
        CHECK(m->is_basis((b1 - a) | img));
        CHECK(m->is_basis((b2 - img) | a));
      }
    }
  }
}

TEST_CASE("k4 is not strongly base orderable and names a witness") {
  SboCheck check = is_strongly_base_orderable(*fixtures::k4());
  CHECK(!check.strongly_base_orderable);
  REQUIRE(check.witness.has_value());
  CHECK(check.witness->first == Basis::of(6, {0, 1, 4}));
  CHECK(check.witness->second == Basis::of(6, {2, 3, 5}));
  CHECK(!find_sbo_bijection(*fixtures::k4(), check.witness->first,
                            check.witness->second)
             .has_value());
}

TEST_CASE("uniform and transversal stock is strongly base orderable") {
  CHECK(is_strongly_base_orderable(*uniform_matroid(3, 6)).strongly_base_orderable);
  CHECK(is_strongly_base_orderable(
            *transversal_matroid(5, {{0, 1, 2}, {2, 3, 4}}))
            .strongly_base_orderable);
  CHECK(is_strongly_base_orderable(*fixtures::doubled_p3()).strongly_base_orderable);
}

TEST_CASE("overlap maximizes matched intersections") {
  std::vector<Basis> a{Basis::of(4, {0, 1}), Basis::of(4, {2, 3})};
  std::vector<Basis> b{Basis::of(4, {0, 2}), Basis::of(4, {1, 3})};
  OverlapValue ov = overlap(a, b);
  CHECK(ov.value == 2);

  OverlapValue self = overlap(a, a);
  CHECK(self.value == 4);
  CHECK(self.pairing == std::vector<int>{0, 1});

  // a tie between pairings resolves to the lexicographically first one
  std::vector<Basis> c{Basis::of(4, {0, 1}), Basis::of(4, {0, 1})};
  std::vector<Basis> d{Basis::of(4, {0, 1}), Basis::of(4, {2, 3})};
  CHECK(overlap(c, d).pairing == std::vector<int>{0, 1});
  CHECK(overlap(c, d).value == 2);
}

TEST_CASE("long sequences route overlap through the assignment solver") {
  // nine factors forces the Hungarian path; optimum pairs equal factors
  std::vector<Basis> a, b;
  for (int k = 0; k < 9; ++k) {
    a.push_back(Basis::of(4, {k % 2, 2 + (k % 2)}));
    b.push_back(Basis::of(4, {(k + 1) % 2, 2 + ((k + 1) % 2)}));
  }
  OverlapValue ov = overlap(a, b);
  CHECK(ov.value == 2 * 9 - 2);  // only one factor of each parity misses
  std::vector<char> hit(9, 0);
  for (int p : ov.pairing) {
    REQUIRE(p >= 0);
    REQUIRE(p < 9);
    CHECK(!hit[p]);
    hit[p] = 1;
  }
}

TEST_CASE("rewrite connects compatible sequences and verifies") {
  auto m = uniform_matroid(2, 4);
  std::vector<Basis> from{Basis::of(4, {0, 1}), Basis::of(4, {2, 3})};
  std::vector<Basis> to{Basis::of(4, {0, 2}), Basis::of(4, {1, 3})};
  std::vector<int> trace;
  Certificate cert = rewrite_certificate(*m, from, to, &trace);
  CHECK(cert.start == Monomial(from));
  CHECK(cert.end == Monomial(to));
  CHECK(verify_certificate(*m, cert).valid);
  CHECK(!trace.empty());
  for (std::size_t k = 1; k < trace.size(); ++k) CHECK(trace[k] > trace[k - 1]);

  Certificate still = rewrite_certificate(*m, from, from);
  CHECK(still.moves.empty());
}

TEST_CASE("rewrite surfaces missing orderability instead of guessing") {
  auto k4 = fixtures::k4();
  std::vector<Basis> from{Basis::of(6, {0, 1, 4}), Basis::of(6, {2, 3, 5})};
  std::vector<Basis> to{Basis::of(6, {0, 3, 5}), Basis::of(6, {1, 2, 4})};
  CHECK_THROWS_AS(rewrite_certificate(*k4, from, to), NotBaseOrderable);
}

TEST_CASE("rewrite validates its inputs") {
  auto m = uniform_matroid(2, 4);
  std::vector<Basis> one{Basis::of(4, {0, 1})};
  std::vector<Basis> two{Basis::of(4, {0, 1}), Basis::of(4, {2, 3})};
  CHECK_THROWS_AS(rewrite_certificate(*m, one, two), InvalidParameter);
  CHECK_THROWS_AS(
      rewrite_certificate(*m, two,
                          {Basis::of(4, {0, 1}), Basis::of(4, {1, 2})}),
      InvalidParameter);  // multidegrees differ
  CHECK_THROWS_AS(
      rewrite_certificate(*m, two, {Basis::of(4, {0, 1}), Basis::of(4, {0, 1, 2})}),
      InvalidParameter);
}

TEST_CASE("random compatible pairs rewrite and replay") {
  auto m = uniform_matroid(2, 5);
  const auto& bases = m->bases();
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> pick(0, int(bases.size()) - 1);
  int done = 0;
  while (done < 40) {
    std::vector<Basis> from{bases[pick(rng)], bases[pick(rng)], bases[pick(rng)]};
    Monomial target(from);
    // shuffle the multiset by a few random double swaps to stay compatible
    auto nbhd = neighbors(*m, target);
    for (int hops = 0; hops < 3 && !nbhd.empty(); ++hops) {
      target = nbhd[std::uniform_int_distribution<int>(0, int(nbhd.size()) - 1)(rng)];
      nbhd = neighbors(*m, target);
    }
    std::vector<int> trace;
    Certificate cert = rewrite_certificate(*m, from, target.factors(), &trace);
    CHECK(verify_certificate(*m, cert).valid);
    CHECK(cert.end == target);
    for (std::size_t k = 1; k < trace.size(); ++k) CHECK(trace[k] > trace[k - 1]);
    ++done;
  }
}
