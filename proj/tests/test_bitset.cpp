#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "matrex/bitset.hpp"

using matrex::Bitset;

TEST_CASE("construction and element round trip") {
  Bitset b = Bitset::of(5, {0, 3});
  CHECK(b.universe() == 5);
  CHECK(b.count() == 2);
  CHECK(b.test(0));
  CHECK(!b.test(1));
  CHECK(b.test(3));
  CHECK(b.elements() == std::vector<int>{0, 3});
  CHECK(b.to_string() == "{0,3}");

  Bitset c = Bitset::from_elements(5, {3, 0});
  CHECK(b == c);

  Bitset empty(4);
  CHECK(empty.count() == 0);
  CHECK(empty.elements().empty());
}

TEST_CASE("set, reset, exchanged") {
  Bitset b = Bitset::of(6, {1, 4});
  b.set(2);
  b.reset(4);
  CHECK(b.elements() == std::vector<int>{1, 2});

  Bitset swapped = Bitset::of(6, {1, 2}).exchanged(1, 5);
  CHECK(swapped.elements() == std::vector<int>{2, 5});
}

TEST_CASE("boolean algebra") {
  Bitset a = Bitset::of(6, {0, 1, 3});
  Bitset b = Bitset::of(6, {1, 3, 5});
  CHECK((a | b).elements() == std::vector<int>{0, 1, 3, 5});
  CHECK((a & b).elements() == std::vector<int>{1, 3});
  CHECK((a ^ b).elements() == std::vector<int>{0, 5});
  CHECK((a - b).elements() == std::vector<int>{0});
  CHECK(a.complement().elements() == std::vector<int>{2, 4, 5});
  CHECK(a.intersects(b));
  CHECK(!Bitset::of(6, {0}).intersects(Bitset::of(6, {1})));
  CHECK(a.contains(Bitset::of(6, {0, 3})));
  CHECK(!a.contains(Bitset::of(6, {0, 2})));
  CHECK(a.smallest() == 0);
  CHECK(b.smallest() == 1);
}

TEST_CASE("order reads as sorted element sequences") {
  CHECK(Bitset::of(4, {0, 1}) < Bitset::of(4, {0, 2}));
  CHECK(Bitset::of(4, {0, 3}) < Bitset::of(4, {1, 2}));
  CHECK(!(Bitset::of(4, {1, 2}) < Bitset::of(4, {1, 2})));
  CHECK(Bitset::of(4, {2, 3}) < Bitset::of(4, {3}));

  std::vector<Bitset> all{Bitset::of(4, {2, 3}), Bitset::of(4, {0, 1}),
                          Bitset::of(4, {1, 3}), Bitset::of(4, {0, 2})};
  std::sort(all.begin(), all.end());
  CHECK(all[0] == Bitset::of(4, {0, 1}));
  CHECK(all[1] == Bitset::of(4, {0, 2}));
  CHECK(all[2] == Bitset::of(4, {1, 3}));
  CHECK(all[3] == Bitset::of(4, {2, 3}));
}

TEST_CASE("universes above one word spill correctly") {
  Bitset b(130);
  b.set(0);
  b.set(64);
  b.set(129);
  CHECK(b.count() == 3);
  CHECK(b.elements() == std::vector<int>{0, 64, 129});
  CHECK(b.exchanged(64, 65).elements() == std::vector<int>{0, 65, 129});
  CHECK(b.complement().count() == 127);
  CHECK(Bitset::of(130, {0, 64}) < Bitset::of(130, {0, 65}));
  CHECK(Bitset::of(130, {129}).smallest() == 129);

  Bitset c = Bitset::of(130, {64});
  CHECK((b & c).elements() == std::vector<int>{64});
  CHECK((b - c).elements() == std::vector<int>{0, 129});
}

TEST_CASE("iteration ascends") {
  Bitset b = Bitset::of(70, {3, 68, 12});
  std::vector<int> seen;
  for (int e : b) seen.push_back(e);
  CHECK(seen == std::vector<int>{3, 12, 68});
}

TEST_CASE("hashes separate nearby sets") {
  std::set<std::size_t> hashes;
  hashes.insert(Bitset::of(8, {0, 1}).hash());
  hashes.insert(Bitset::of(8, {0, 2}).hash());
  hashes.insert(Bitset::of(8, {1, 2}).hash());
  hashes.insert(Bitset(8).hash());
  CHECK(hashes.size() == 4);
}
