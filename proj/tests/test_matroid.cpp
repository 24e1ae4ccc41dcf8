#include <algorithm>

#include "catalog.hpp"
#include "doctest.h"
#include "matrex/matroid.hpp"

using namespace matrex;

TEST_CASE("uniform bases ascend and hit the binomial count") {
  auto m = uniform_matroid(2, 4);
  const auto& bases = m->bases();
  REQUIRE(bases.size() == 6);
  CHECK(bases.front() == Basis::of(4, {0, 1}));
  CHECK(bases.back() == Basis::of(4, {2, 3}));
  CHECK(std::is_sorted(bases.begin(), bases.end()));
  CHECK(m->rank() == 2);
  CHECK(m->is_basis(Basis::of(4, {1, 3})));
  CHECK(!m->is_independent(Basis::of(4, {0, 1, 2})));

  CHECK(uniform_matroid(0, 3)->bases() == std::vector<Basis>{Basis(3)});
  CHECK(uniform_matroid(3, 3)->bases() == std::vector<Basis>{Basis::of(3, {0, 1, 2})});
}

TEST_CASE("k4 has sixteen spanning trees") {
  auto m = fixtures::k4();
  CHECK(m->rank() == 3);
  CHECK(m->bases().size() == 16);
  CHECK(m->is_basis(Basis::of(6, {0, 1, 2})));   // star at vertex 0
  CHECK(!m->is_basis(Basis::of(6, {0, 1, 3})));  // triangle 0-1-2
  CHECK(m->rank_of(Basis::of(6, {0, 1})) == 2);
  CHECK(m->rank_of(Basis::of(6, {0, 1, 3})) == 2);
  CHECK(m->rank_of(Basis::of(6, {}).complement()) == 3);
}

TEST_CASE("graphic loops never join an independent set") {
  auto m = graphic_matroid(3, {{0, 1}, {1, 1}, {1, 2}});
  CHECK(!m->is_independent(Basis::of(3, {1})));
  CHECK(m->bases() == std::vector<Basis>{Basis::of(3, {0, 2})});
}

TEST_CASE("linear matroid over small fields") {
  auto m = linear_matroid(2, {{1, 0, 1}, {0, 1, 1}});
  CHECK(m->rank() == 2);
  CHECK(m->bases().size() == 3);
  CHECK(m->is_basis(Basis::of(3, {0, 2})));

  // over GF(3) the third and fourth columns differ, so all pairs work
  auto q = linear_matroid(3, {{1, 0, 1, 1}, {0, 1, 1, 2}});
  CHECK(q->bases().size() == 6);

  CHECK_THROWS_AS(linear_matroid(4, {{1}}), InvalidParameter);
  CHECK_THROWS_AS(linear_matroid(2, {{1, 0}, {0}}), InvalidParameter);
}

TEST_CASE("transversal systems match by distinct representatives") {
  auto m = transversal_matroid(5, {{0, 1, 2}, {2, 3, 4}});
  CHECK(m->rank() == 2);
  CHECK(m->bases().size() == 8);  // all pairs except {0,1} and {3,4}
  CHECK(!m->is_basis(Basis::of(5, {0, 1})));
  CHECK(!m->is_basis(Basis::of(5, {3, 4})));
  CHECK(m->is_basis(Basis::of(5, {2, 4})));
}

TEST_CASE("dual, direct sum and minor backends") {
  auto d = dual_matroid(uniform_matroid(2, 4));
  CHECK(d->rank() == 2);
  CHECK(d->bases().size() == 6);

  auto dk4 = dual_matroid(fixtures::k4());
  CHECK(dk4->rank() == 3);
  CHECK(dk4->bases().size() == 16);
  CHECK(dk4->is_basis(Basis::of(6, {3, 4, 5})));   // complement of the star
  CHECK(!dk4->is_basis(Basis::of(6, {2, 4, 5})));  // complement of a triangle

  auto s = direct_sum(uniform_matroid(1, 2), uniform_matroid(1, 2));
  CHECK(s->ground_size() == 4);
  CHECK(s->rank() == 2);
  CHECK(s->bases() == std::vector<Basis>{Basis::of(4, {0, 2}), Basis::of(4, {0, 3}),
                                         Basis::of(4, {1, 2}), Basis::of(4, {1, 3})});

  auto mi = minor_matroid(uniform_matroid(3, 6), Bitset::of(6, {5}), Bitset::of(6, {4}));
  CHECK(mi->ground_size() == 4);
  CHECK(mi->rank() == 2);
  CHECK(mi->bases().size() == 6);
  CHECK_THROWS_AS(minor_matroid(uniform_matroid(3, 6), Bitset::of(6, {1}),
                                Bitset::of(6, {1})),
                  InvalidParameter);
}

TEST_CASE("explicit family must satisfy the exchange property") {
  CHECK_THROWS_WITH_AS(
      explicit_matroid(4, {Basis::of(4, {0, 1}), Basis::of(4, {2, 3})}),
      doctest::Contains("exchange"), InvalidParameter);

  auto ok = explicit_matroid(3, {Basis::of(3, {0, 1}), Basis::of(3, {0, 2}),
                                 Basis::of(3, {1, 2})});
  CHECK(ok->bases().size() == 3);
}

TEST_CASE("verify_axioms reports the first witness") {
  AxiomCheck bad =
      verify_axioms({Basis::of(4, {0, 1}), Basis::of(4, {2, 3})});
  CHECK(!bad.ok);
  CHECK(bad.from == Basis::of(4, {0, 1}));
  CHECK(bad.to == Basis::of(4, {2, 3}));
  CHECK(bad.element == 0);

  AxiomCheck mixed = verify_axioms({Basis::of(4, {0, 1}), Basis::of(4, {2})});
  CHECK(!mixed.ok);
  CHECK(mixed.element == -1);

  CHECK(verify_axioms(uniform_matroid(2, 4)->bases()).ok);
  CHECK(verify_axioms(fixtures::k4()->bases()).ok);
  CHECK_THROWS_AS(verify_axioms({}), InvalidParameter);
}

TEST_CASE("fingerprints bind to the canonical definition") {
  auto m = uniform_matroid(2, 4);
  CHECK(m->definition_json() == R"({"n":4,"r":2,"type":"uniform"})");
  CHECK(m->fingerprint() ==
        "7e644d4552f152737e90fb0aa3cef88c54511765141801b5305b64f3207ff4c6");
  CHECK(uniform_matroid(2, 4)->fingerprint() == m->fingerprint());
  CHECK(uniform_matroid(2, 5)->fingerprint() != m->fingerprint());
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("enumeration caps are enforced") {
  CHECK_THROWS_AS(uniform_matroid(10, 25)->bases(10), ResourceLimit);
  CHECK_THROWS_AS(uniform_matroid(2, 6)->bases(10), ResourceLimit);
  CHECK(uniform_matroid(2, 6)->bases(15).size() == 15);
}

TEST_CASE("subsets must live in the ground set") {
  auto m = uniform_matroid(2, 4);
  CHECK_THROWS_AS(m->is_basis(Basis::of(5, {0, 1})), InvalidParameter);
  CHECK_THROWS_AS(m->rank_of(Basis::of(3, {0})), InvalidParameter);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(uniform_matroid(3, 2), InvalidParameter);
  CHECK_THROWS_AS(uniform_matroid(-1, 2), InvalidParameter);
  CHECK_THROWS_AS(graphic_matroid(2, {{0, 2}}), InvalidParameter);
  CHECK_THROWS_AS(uniform_matroid(1, 2, {"only-one"}), InvalidParameter);
  CHECK_THROWS_AS(transversal_matroid(3, {{0, 3}}), InvalidParameter);
}
