#include "doctest.h"
#include "steinext/atoms.hpp"

using namespace steinext;

namespace {

Tuple make(const Context& c, Mask I, Mono chars, std::vector<std::vector<PrimitivePair>> blocks) {
  TupleData d{I, chars, {}};
  for (auto& b : blocks) {
    PairSet s = 0;
    for (auto& p : b) s |= PairSet(1) << pair_index(p.m, p.iota, c.dK());
    d.blocks.push_back(s);
  }
  return encode(c, d);
}

template <class F>
void for_pages(int n, int dK, F f) {
  for (Mask I1 = 0; I1 <= full_mask(n); ++I1)
    for (Mask I0 = I1;; I0 = (I0 - 1) & I1) {
      f(page(n, dK, I0, I1));
      if (I0 == 0) break;
    }
}

}  // namespace

TEST_CASE("p_plus / p_minus") {
  const Context& c = context(3, 1);
  Tuple t = make(c, mask_of({2}), 0, {{}, {{3, 0}}});
  // the split at 2 leaves a block of size 1 on the left of the (3,ι) block
  CHECK_FALSE(p_minus(c, t, 2).has_value());
  Tuple e = make(c, mask_of({1}), 0, {{}, {}});
  auto m = p_minus(c, e, 1);
  REQUIRE(m);
  CHECK(m->I == 0);
  auto back = p_plus(c, *m, 1);
  REQUIRE(back);
  CHECK(*back == e);
  Tuple two = make(c, 0, 0, {{}, {}, {}});
  CHECK(p_plus(c, two, 1).has_value());
  const Context& c4 = context(4, 1);
  Tuple clash = make(c4, mask_of({1, 3}), 0, {{{3, 0}}, {{3, 0}}});
  CHECK_FALSE(p_plus(c4, clash, 2).has_value());
}

TEST_CASE("p_minus then p_plus is the identity when defined") {
  for (int dK = 1; dK <= 2; ++dK) {
    const Context& c = context(4, dK);
    for (Mask I = 0; I <= full_mask(4); ++I)
      for (int k = 0; k <= c.max_degree(I); ++k)
        for (Mono x : c.monomials(I, k))
          for (int i : elements(I)) {
            auto m = p_minus(c, {I, x}, i);
            if (!m) continue;
            auto b = p_plus(c, *m, i);
            REQUIRE(b);
            CHECK(*b == Tuple{I, x});
            CHECK(e_theta(c, *m) == e_theta(c, {I, x}));
          }
  }
}

TEST_CASE("e_theta") {
  const Context& c = context(4, 1);
  CHECK(e_theta(c, make(c, 0, 0, {{}, {}, {}, {}})) == 0);
  CHECK(e_theta(c, make(c, mask_of({1, 3}), 0, {{{3, 0}}, {}})) == 3);
  const Context& c6 = context(6, 1);
  CHECK(e_theta(c6, make(c6, mask_of({1, 3, 4}), 0, {{{3, 0}}, {{5, 0}}, {}})) == 8);
  for (Mask I = 0; I <= full_mask(4); ++I)
    for (int k = 0; k <= c.max_degree(I); ++k)
      for (Mono x : c.monomials(I, k))
        for (int i = 1; i < 4; ++i) {
          auto p = p_plus(c, {I, x}, i);
          if (p) CHECK(e_theta(c, *p) <= e_theta(c, {I, x}));
        }
}

TEST_CASE("improvements worked cases") {
  const Context& c = context(3, 1);
  PagePair pp(c, 0, full_mask(3));
  Tuple t = make(c, mask_of({1}), 0, {{{3, 0}}, {}});
  CHECK(all_improvements(pp, t).empty());
  CHECK_FALSE(is_maximally_atomic(pp, t));
  Tuple e = make(c, mask_of({1}), 0, {{}, {}});
  auto imps = improvements(pp, e, 0);
  REQUIRE(imps.size() == 1);
  CHECK(imps[0].result == make(c, mask_of({2}), 0, {{}, {}}));
  Tuple good = make(c, mask_of({2}), 0, {{}, {{3, 0}}});
  CHECK(is_maximally_atomic(pp, good));
  CHECK(epsilon(good.I) == 1);
  // no i' available: I_1 excludes the boundary
  PagePair pp2(c, 0, mask_of({1}));
  CHECK(improvements(pp2, e, 0).empty());
}

TEST_CASE("atom classes worked cases") {
  Page& P3 = page(3, 1, 0, full_mask(3));
  CHECK(enumerate_psi(P3, 0, 2).size() == 4);
  auto one = enumerate_psi(P3, 1, 3);
  REQUIRE(one.size() == 1);
  CHECK(one[0].max.I == mask_of({2}));
  CHECK(one[0].members.size() == 1);
  Page& P2 = page(2, 1, 0, full_mask(2));
  CHECK(enumerate_psi(P2, 1, 2).empty());
  CHECK_THROWS_AS(enumerate_psi(P3, 0, 5), InvalidArgument);
}

TEST_CASE("leftmost I0 gives singleton classes") {
  for (int n = 2; n <= 4; ++n)
    for (int a = 0; a < n; ++a) {
      Mask I0 = a ? Interval{1, a}.mask() : 0;
      Page& P = page(n, 1, I0, full_mask(n));
      for (int ell = P.ell_min(); ell <= P.ell_max(); ++ell)
        for (int k = 0; k <= P.max_k(); ++k)
          for (const auto& cl : atom_classes(P, ell, k)) CHECK(cl.members.size() == 1);
    }
}

TEST_CASE("psi counts and diamond for n <= 3") {
  for (int n = 2; n <= 3; ++n)
    for (int dK = 1; dK <= 2; ++dK)
      for_pages(n, dK, [&](Page& P) {
        PagePair pp(P);
        for (int ell = P.ell_min(); ell <= P.ell_max(); ++ell) {
          int b = bottom_row(P, ell);
          for (int k : {b, b + 1}) {
            auto psi = enumerate_psi(P, ell, k);
            CHECK(int(psi.size()) == P.e2_dim(ell, k));
            Echelon ech = P.image(ell, k);
            for (auto& cl : psi) CHECK(ech.insert(cl.vec));
          }
          for (const auto& cl : atom_classes(P, ell, b)) CHECK(P.apply_d1(ell, b, cl.vec).empty());
          for (const auto& cl : atom_classes(P, ell, b + 1)) {
            bool nz = !P.apply_d1(ell, b + 1, cl.vec).empty();
            CHECK(nz == low_deg_nonzero_predicate(pp, cl.max));
          }
        }
        for (int k = 0; k <= P.max_k(); ++k) {
          auto rep = diamond_quasi_iso_check(P, k);
          CHECK(rep.closed);
          CHECK(rep.same_cohomology);
        }
      });
}

TEST_CASE("twists agree with the atom up to a step sign, n <= 3") {
  int count = 0;
  for (int dK = 1; dK <= 2; ++dK)
    for_pages(3, dK, [&](Page& P) {
      PagePair pp(P);
      for (int ell = P.ell_min(); ell <= P.ell_max(); ++ell)
        for (int k = 0; k <= P.max_k(); ++k)
          for (const auto& cl : atom_classes(P, ell, k)) {
            auto r = r_seq(pp, cl.max);
            for (int s0 = 1; s0 < int(r.size()); ++s0) {
              if (!saturated(pp, cl.max, s0)) continue;
              for (int d0 = r[s0 - 1] + 1; d0 <= r[s0]; ++d0) {
                auto tc = twisted_class(P, ell, k, cl.max, s0, d0);
                CHECK(tc.criterion_mismatch == 0);
                if (d0 == r[s0 - 1] + 1) CHECK(tc.vec == cl.vec);
                // each gluing step flips the class
                int sign = (d0 - r[s0 - 1] - 1) % 2 ? 1 : -1;
                CHECK(P.image(ell, k).contains(axpy(tc.vec, sign, cl.vec)));
                ++count;
              }
            }
          }
    });
  CHECK(count > 0);
}
