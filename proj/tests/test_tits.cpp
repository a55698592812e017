#include "doctest.h"
#include "steinext/tits.hpp"

using namespace steinext;

TEST_CASE("n=2 page tables") {
  Page& P = page(2, 1, 0, full_mask(2));
  std::vector<int> col1, col0;
  for (int k = 0; k < 4; ++k) {
    col1.push_back(P.e1_dim(1, k));
    col0.push_back(P.e1_dim(0, k));
  }
  CHECK(col1 == std::vector<int>{1, 0, 0, 1});
  CHECK(col0 == std::vector<int>{1, 2, 1, 0});
  CHECK(P.d1_rank(1, 0) == 1);
  CHECK(P.e2_dim(0, 1) == 2);
  CHECK(P.e2_dim(0, 0) == 0);
  CHECK(P.e2_dim(1, 3) == 1);
  CHECK(P.e2_dim(0, 2) == 1);
}

TEST_CASE("n=3 page values") {
  Page& P = page(3, 1, 0, full_mask(3));
  CHECK(P.e2_dim(0, 2) == 4);
  CHECK(P.e2_dim(1, 3) == 1);
  CHECK(P.e2_dim(2, 4) == 0);
}

TEST_CASE("E2 = E1 when I0 = I1") {
  Page& P = page(3, 2, mask_of({1}), mask_of({1}));
  for (int k = 0; k <= P.max_k(); ++k) CHECK(P.e2_dim(1, k) == P.e1_dim(1, k));
}

TEST_CASE("d1 squared and Euler, n <= 3") {
  for (int n = 2; n <= 3; ++n)
    for (int dK = 1; dK <= 2; ++dK)
      for (Mask I1 = 0; I1 <= full_mask(n); ++I1)
        for (Mask I0 = I1;; I0 = (I0 - 1) & I1) {
          Page& P = page(n, dK, I0, I1);
          for (int k = 0; k <= P.max_k(); ++k) {
            for (int ell = P.ell_min(); ell <= P.ell_max(); ++ell) CHECK(P.d1_squared_zero(ell, k));
            auto [e1, e2] = euler_row(P, k);
            CHECK(e1 == e2);
          }
          if (I0 == 0) break;
        }
}

TEST_CASE("E2 reps are cocycles and independent mod image") {
  Page& P = page(3, 1, 0, full_mask(3));
  for (int k = 0; k <= P.max_k(); ++k)
    for (int ell = 0; ell <= 2; ++ell) {
      auto reps = P.e2_reps(ell, k);
      CHECK(int(reps.size()) == P.e2_dim(ell, k));
      for (auto& r : reps) CHECK(P.is_cocycle(ell, k, r));
    }
}

TEST_CASE("degeneration small cases") {
  CHECK(degeneration_check(2, 1, 0, full_mask(2)).ok);
  CHECK(degeneration_check(3, 1, 0, full_mask(3)).ok);
  CHECK(degeneration_check(3, 1, mask_of({1}), mask_of({1})).ok);
}
