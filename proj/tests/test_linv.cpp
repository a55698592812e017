#include "doctest.h"
#include "steinext/linv.hpp"

using namespace steinext;

namespace {

LInvariantParams constant_params(int n, int dK, const Q& c) {
  LInvariantParams p{n, dK, {}};
  for (const auto& a : positive_roots(n))
    for (int iota = 0; iota < dK; ++iota) p.L[{a, iota}] = c;
  return p;
}

}  // namespace

TEST_CASE("n = 2: W is the line through x_log - c x^inf") {
  for (int dK = 1; dK <= 2; ++dK) {
    LInvariantParams p = constant_params(2, dK, Q(3, 7));
    p.L[{PositiveRoot{1, 2}, 0}] = Q(-5, 2);
    Hyperplane h = params_to_hyperplane(p);
    EClass xinf = smooth_line(2, dK, full_mask(2), 0);
    CHECK(h.eval(xinf.v) != 0);
    for (int iota = 0; iota < dK; ++iota) {
      EClass xl = log_class(2, dK, full_mask(2), 0, iota);
      Q L = p.L.at({PositiveRoot{1, 2}, iota});
      CHECK(h.eval(axpy(xl.v, -L, xinf.v)) == 0);
      CHECK(h.eval(xl.v) / h.eval(xinf.v) == L);
    }
  }
}

TEST_CASE("all parameters zero") {
  int n = 3, dK = 1;
  Hyperplane h = params_to_hyperplane(constant_params(n, dK, 0));
  auto B = basis_X(n, dK, full_mask(n), 0);
  int outside = 0;
  for (const auto& v : B.vectors)
    if (h.eval(v.v) != 0) ++outside;
  // only the product of val classes avoids W
  CHECK(outside == 1);
  CHECK(h.eval(smooth_line(n, dK, full_mask(n), 0).v) != 0);
}

TEST_CASE("round trip and invariant check on random parameters") {
  std::mt19937_64 rng(2024);
  for (int n = 2; n <= 4; ++n)
    for (int dK = 1; dK <= 2; ++dK)
      for (int s = 0; s < 10; ++s) {
        auto p = random_params(n, dK, rng);
        Hyperplane h = params_to_hyperplane(p);
        CHECK(hyperplane_to_params(h).L == p.L);
        CHECK(is_bs_invariant(h).ok);
        CHECK(simple_condition(h).ok);
        CHECK(same_hyperplane(params_to_hyperplane(hyperplane_to_params(h)), h));
      }
}

TEST_CASE("perturbed hyperplanes are rejected") {
  std::mt19937_64 rng(99);
  for (int n = 2; n <= 4; ++n) {
    Hyperplane h = params_to_hyperplane(random_params(n, 1, rng));
    for (int s = 0; s < 10; ++s) {
      Hyperplane g = perturbed_hyperplane(h, rng);
      auto r = is_bs_invariant(g);
      CHECK_FALSE(r.ok);
      CHECK((r.condition == 1 || r.condition == 2));
      CHECK_FALSE(r.message.empty());
      // the interval conditions are sufficient, so they must fail too
      CHECK_FALSE(simple_condition(g).ok);
      if (n == 2) CHECK_THROWS_AS(hyperplane_to_params(g), NotAnInvariant);
    }
  }
}

TEST_CASE("hyperplane containing the smooth line") {
  int n = 3, dK = 1;
  Hyperplane h = params_to_hyperplane(constant_params(n, dK, 1));
  auto x = smooth_line(n, dK, full_mask(n), 0).v;
  // move φ to vanish on x^∞ along a coordinate where x^∞ is supported
  int j = x.front().first;
  h.phi[j] -= h.eval(x) / x.front().second;
  REQUIRE(h.eval(x) == 0);
  auto r = is_bs_invariant(h);
  CHECK_FALSE(r.ok);
  CHECK(r.condition == 1);
  CHECK_THROWS_AS(hyperplane_to_params(h), NotAnInvariant);
}

TEST_CASE("sum formula") {
  std::mt19937_64 rng(5);
  for (int n = 3; n <= 4; ++n)
    for (int s = 0; s < 5; ++s) {
      Hyperplane h = params_to_hyperplane(random_params(n, 1, rng));
      for (const auto& a : positive_roots(n))
        if (!a.simple()) CHECK(sum_formula_check(h, a));
    }
  Hyperplane h = params_to_hyperplane(random_params(3, 1, rng));
  CHECK_THROWS_AS(sum_formula_check(h, {1, 2}), InvalidArgument);
}

TEST_CASE("params validation") {
  LInvariantParams p = constant_params(3, 1, 0);
  p.L.erase(p.L.begin());
  CHECK_THROWS_AS(params_to_hyperplane(p), InvalidArgument);
  Hyperplane zero{3, 1, std::vector<Q>(5, Q(0))};
  CHECK_THROWS_AS(is_bs_invariant(zero), InvalidArgument);
  Hyperplane shortv{3, 1, std::vector<Q>(4, Q(1))};
  CHECK_THROWS_AS(is_bs_invariant(shortv), InvalidArgument);
}

TEST_CASE("Galois ext dimensions") {
  CHECK(galois_ext_dim(4, 4, 0, 2) == 1);
  CHECK(galois_ext_dim(3, 4, 0, 2) == 0);
  CHECK(galois_ext_dim(0, 1, 2, 1) == 1);
  CHECK(galois_ext_dim(1, 1, 2, 1) == 0);
  CHECK(galois_ext_dim(0, 5, 1, 2) == 2);
  CHECK(galois_ext_dim(4, 5, 1, 2) == 3);
  CHECK(galois_ext_dim(5, 5, 1, 2) == 3);
  CHECK_THROWS_AS(galois_ext_dim(0, 0, 3, 1), InvalidArgument);
}

TEST_CASE("universal dimension recursion") {
  CHECK(universal_dim(1, 1).dim == 1);
  CHECK(universal_dim(2, 1).dim == 2);
  CHECK(universal_dim(3, 1).dim == 5);
  auto u = universal_dim(4, 1);
  CHECK(u.dim == 13);
  CHECK(u.trace.size() == 4);
  CHECK(u.trace.back() == "D(4) = 2*D(3) + 1*D(2) + 1*D(1) = 13");
  for (int n = 1; n <= 8; ++n)
    for (int dK = 1; dK <= 3; ++dK) CHECK(universal_dim(n, dK).dim == interval_partition_count(n, dK));
  for (int n = 2; n <= 5; ++n)
    for (int dK = 1; dK <= 2; ++dK) CHECK(universal_dim(n, dK).dim == e_dim(n, dK, full_mask(n), 0));
}
