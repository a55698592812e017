#include <set>

#include "doctest.h"
#include "steinext/rootset.hpp"

using namespace steinext;

TEST_CASE("interval decomposition and block sizes") {
  CHECK(block_sizes(6, mask_of({1, 2, 4})) == std::vector<int>{3, 2, 1});
  auto iv = maximal_intervals(mask_of({1, 2, 4}));
  REQUIRE(iv.size() == 2);
  CHECK(iv[0] == Interval{1, 2});
  CHECK(iv[1] == Interval{4, 4});
  CHECK(block_sizes(4, 0) == std::vector<int>{1, 1, 1, 1});
  CHECK(maximal_intervals(0).empty());
  CHECK(block_sizes(4, full_mask(4)) == std::vector<int>{4});
  CHECK(block_offsets(6, mask_of({1, 2, 4})) == std::vector<int>{0, 3, 5});
}

TEST_CASE("m_count") {
  CHECK(m_count(mask_of({1, 3, 4}), 4) == 2);
  CHECK(m_count(mask_of({2}), 2) == 0);
  CHECK(m_count(mask_of({1, 2, 3}), 2) == 1);
  CHECK_THROWS_AS(m_count(mask_of({1}), 2), InvalidArgument);
}

TEST_CASE("do_not_connect and h_degree") {
  CHECK(do_not_connect(mask_of({1}), mask_of({3})));
  CHECK_FALSE(do_not_connect(mask_of({1}), mask_of({2})));
  CHECK(do_not_connect(0, mask_of({1, 2, 3})));
  CHECK(h_degree(full_mask(3), 0) == 2);
  CHECK(h_degree(mask_of({1, 2}), mask_of({1, 2})) == 0);
  CHECK(h_degree(mask_of({1, 2}), mask_of({2, 3})) == 2);
}

TEST_CASE("r_sequence") {
  CHECK(r_sequence(3, mask_of({1}), 0) == std::vector<int>{0, 2, 3});
  CHECK(r_sequence(4, mask_of({1, 3}), 0) == std::vector<int>{0, 2, 4});
  for (Mask I = 0; I <= full_mask(5); ++I) CHECK(r_sequence(5, full_mask(5), I) == std::vector<int>{0, num_blocks(5, I)});
}

TEST_CASE("interval partitions: count and shape") {
  for (int n = 1; n <= 8; ++n) {
    for (Mask I = 0; I <= full_mask(n); ++I) {
      long expect = 1;
      for (auto& J : maximal_intervals(I)) expect <<= (J.hi - J.lo);
      auto parts = interval_partitions(I);
      CHECK(long(parts.size()) == expect);
      std::set<std::vector<Mask>> seen(parts.begin(), parts.end());
      CHECK(seen.size() == parts.size());
      for (const auto& p : parts) {
        Mask u = 0;
        for (Mask q : p) {
          CHECK((u & q) == 0);
          CHECK(maximal_intervals(q).size() == 1);
          u |= q;
        }
        CHECK(u == I);
      }
    }
  }
}

TEST_CASE("subset parsing") {
  CHECK(parse_set("", 4) == 0);
  CHECK(parse_set("1,3", 4) == mask_of({1, 3}));
  CHECK_THROWS_AS(parse_set("4", 4), InvalidArgument);
  CHECK_THROWS_AS(parse_set("1,,2", 4), InvalidArgument);
  CHECK_THROWS_AS(parse_set("x", 4), InvalidArgument);
}

TEST_CASE("positive roots") {
  auto roots = positive_roots(4);
  CHECK(roots.size() == 6);
  CHECK(roots[0].simple());
  CHECK(root_of_interval(mask_of({2, 3})) == PositiveRoot{2, 4});
  CHECK_THROWS_AS(root_of_interval(mask_of({1, 3})), InvalidArgument);
}
