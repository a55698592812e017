#include <algorithm>

#include "doctest.h"
#include "steinext/cup.hpp"

using namespace steinext;

namespace {

template <class F>
void for_chains(int n, F f) {
  Mask F_ = full_mask(n);
  for (Mask I1 = 0; I1 <= F_; ++I1)
    for (Mask I0 = I1;; I0 = (I0 - 1) & I1) {
      for (Mask I2 = I0;; I2 = (I2 - 1) & I0) {
        for (Mask I4 = I2;; I4 = (I4 - 1) & I2) {
          f(I0, I1, I2, I4);
          if (I4 == 0) break;
        }
        if (I2 == 0) break;
      }
      if (I0 == 0) break;
    }
}

bool same_span(const Subspace& a, const Subspace& b) {
  return a.dim() == b.dim() && subspace_contains(a, b);
}

EClass basis_vec(int n, int dK, Mask I0, Mask I2, int j) { return {n, dK, I0, I2, unit_vec(j)}; }

}  // namespace

TEST_CASE("cup context validation") {
  CupContext c{3, 1, mask_of({1}), full_mask(3), mask_of({2}), 0, 1, 1, 0, 0};
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  CupContext d{3, 1, full_mask(3), full_mask(3), mask_of({1}), 0, 2, 2, 5, 2};
  CHECK_THROWS_AS(d.validate(), InvalidArgument);
  auto ctxs = cup_contexts(3, 1, full_mask(3), full_mask(3), mask_of({1}), 0);
  REQUIRE_FALSE(ctxs.empty());
  for (const auto& x : ctxs) CHECK_NOTHROW(x.validate());
  CHECK(ctxs[0].swapped().swapped().I2 == ctxs[0].I2);
}

TEST_CASE("chain reports, n <= 3 and n = 4 with d_K = 1") {
  for (int n = 2; n <= 4; ++n)
    for (int dK = 1; dK <= (n == 4 ? 1 : 2); ++dK)
      for_chains(n, [&](Mask I0, Mask I1, Mask I2, Mask I4) {
        auto r = cup_chain_report(n, dK, I0, I1, I2, I4);
        INFO("n=", n, " dK=", dK, " chain ", format_set(I0), "|", format_set(I1), "|", format_set(I2), "|",
             format_set(I4), " ", r.first_failure);
        CHECK(r.ok());
        CHECK(r.injective);
        CHECK(r.swap_law);
        CHECK(r.normalized_sign_constant);
        CHECK(r.bijective == do_not_connect(I0 & ~I2, I2 & ~I4));
      });
}

TEST_CASE("separated chain agrees with the combinatorial route") {
  Mask F = full_mask(4);
  Mask I0 = F, I2 = mask_of({2, 3}), I4 = mask_of({2});
  REQUIRE(separated(I0, I2, I4));
  auto r = cup_chain_report(4, 1, I0, F, I2, I4);
  CHECK(r.ok());
  CHECK(r.separated_checked > 0);
  CHECK(r.separated_agree);
  CHECK(r.bijective);
  CHECK_FALSE(separated(F, mask_of({1}), 0));
}

TEST_CASE("unit classes act trivially") {
  for (int n = 2; n <= 4; ++n) {
    Mask F = full_mask(n);
    for (Mask I0 = 0; I0 <= F; ++I0)
      for (Mask I2 = I0;; I2 = (I2 - 1) & I0) {
        int d = e_dim(n, 1, I0, I2);
        for (int j = 0; j < d; ++j) {
          EClass x = basis_vec(n, 1, I0, I2, j);
          CHECK(cup(unit_class(n, 1, I0), x).v == x.v);
          CHECK(cup(x, unit_class(n, 1, I2)).v == x.v);
        }
        if (I2 == 0) break;
      }
  }
}

TEST_CASE("graded cup is associative") {
  int n = 4, dK = 1;
  Mask F = full_mask(n);
  for (Mask I2 = F;; I2 = (I2 - 1) & F) {
    for (Mask I4 = I2;; I4 = (I4 - 1) & I2) {
      for (Mask I6 = I4;; I6 = (I6 - 1) & I4) {
        for (int a = 0; a < e_dim(n, dK, F, I2); ++a)
          for (int b = 0; b < e_dim(n, dK, I2, I4); ++b)
            for (int c = 0; c < e_dim(n, dK, I4, I6); ++c) {
              EClass x = basis_vec(n, dK, F, I2, a), y = basis_vec(n, dK, I2, I4, b), z = basis_vec(n, dK, I4, I6, c);
              CHECK(cup(cup(x, y), z).v == cup(x, cup(y, z)).v);
            }
        if (I6 == 0) break;
      }
      if (I4 == 0) break;
    }
    if (I2 == 0) break;
  }
}

TEST_CASE("basis of products of generators") {
  int expect1[] = {0, 0, 2, 5, 13}, expect2[] = {0, 0, 3, 11, 41};
  for (int n = 2; n <= 4; ++n) {
    CHECK(basis_X(n, 1, full_mask(n), 0).rank == expect1[n]);
    CHECK(basis_X(n, 2, full_mask(n), 0).rank == expect2[n]);
    Mask F = full_mask(n);
    for (Mask I0 = 0; I0 <= F; ++I0)
      for (Mask I2 = I0;; I2 = (I2 - 1) & I0) {
        auto B = basis_X(n, 2, I0, I2);
        CHECK(B.rank == B.expected);
        if (I2 == 0) break;
      }
  }
  for (int dK = 1; dK <= 3; ++dK)
    for (const auto& a : positive_roots(4))
      CHECK(int(generators_Xbar(4, dK, a).size()) == dK + (a.simple() ? 1 : 0));
}

TEST_CASE("smooth line does not depend on the order") {
  for (int n = 3; n <= 4; ++n) {
    Mask F = full_mask(n);
    std::vector<int> order = elements(F);
    EClass ref = smooth_line(n, 1, F, 0);
    CHECK_FALSE(ref.v.empty());
    do {
      CHECK(smooth_line(n, 1, F, 0, order).v == ref.v);
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST_CASE("Ê subspaces") {
  int n = 4, dK = 1;
  Mask F = full_mask(n);
  Subspace line = span_of({smooth_line(n, dK, F, 0).v}, e_dim(n, dK, F, 0));
  for (Mask I = 0; I <= F; ++I) CHECK(same_span(ehat_subspace(n, dK, I, I), line));
  for (Mask I0 = 0; I0 <= F; ++I0)
    for (Mask I2 = I0;; I2 = (I2 - 1) & I0) {
      auto S = ehat_subspace(n, dK, I0, I2);
      CHECK(S.dim() == e_dim(n, dK, I0, I2));
      CHECK(same_span(S, ehat_subspace(n, dK, I0 & ~I2, 0)));
      // enlarging I0 \ I2 enlarges the image
      for (Mask J = 0; J <= F; ++J)
        if (!(I0 & ~I2 & ~J)) CHECK(subspace_contains(ehat_subspace(n, dK, J, 0), S));
      if (I2 == 0) break;
    }
}

TEST_CASE("decomposable part has codimension #X̄") {
  for (int n = 2; n <= 4; ++n)
    for (int dK = 1; dK <= 2; ++dK) {
      Mask F = full_mask(n);
      for (Mask I = 1; I <= F; ++I) {
        int codim = e_dim(n, dK, I, 0) - decomposable_span(n, dK, I).dim();
        auto iv = maximal_intervals(I);
        int expect = iv.size() > 1 ? 0 : dK + (popcount(I) == 1 ? 1 : 0);
        CHECK(codim == expect);
      }
    }
}
