#include <random>

#include "doctest.h"
#include "steinext/linalg.hpp"

using namespace steinext;

namespace {

SparseMatrix random_matrix(std::mt19937& rng, int rows, int cols, int density) {
  SparseMatrix M(rows, cols);
  std::uniform_int_distribution<int> val(-3, 3), pct(0, 99);
  for (int j = 0; j < cols; ++j) {
    std::vector<std::pair<int, Q>> raw;
    for (int i = 0; i < rows; ++i)
      if (pct(rng) < density) raw.emplace_back(i, Q(val(rng)));
    M.col[j] = normalize(raw);
  }
  return M;
}

}  // namespace

TEST_CASE("rank, kernel and image agree with dense elimination") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    int r = 1 + trial % 9, c = 1 + (trial * 7) % 11;
    auto M = random_matrix(rng, r, c, 20 + trial % 50);
    auto rki = rank_kernel_image(M);
    CHECK(rki.rank == dense_rank(M.dense()));
    CHECK(rki.kernel.dim() == c - rki.rank);
    for (const auto& k : rki.kernel.basis) CHECK(M.apply(k).empty());
    CHECK(span_rank(rki.kernel.basis, c) == rki.kernel.dim());
    CHECK(rki.image.dim() == rki.rank);
    Echelon img(r);
    for (const auto& v : rki.image.basis) img.insert(v);
    for (const auto& col : M.col) CHECK(img.contains(col));
  }
}

TEST_CASE("membership witness") {
  Subspace W{3, {unit_vec(1)}};
  auto w0 = membership({}, W);
  REQUIRE(w0);
  CHECK(w0->empty());
  CHECK_FALSE(membership(unit_vec(0), Subspace{3, {unit_vec(1)}}));
  Subspace W2{3, {unit_vec(0), unit_vec(1)}};
  auto w = membership(SparseVec{{0, 1}, {1, 1}}, W2);
  REQUIRE(w);
  CHECK(*w == SparseVec{{0, 1}, {1, 1}});
}

TEST_CASE("quotient coordinates") {
  Subspace W{3, {SparseVec{{0, 1}, {1, 1}}}};
  std::vector<SparseVec> B{unit_vec(1), unit_vec(2)};
  CHECK(quotient_coordinates(SparseVec{{0, 2}, {1, 2}}, W, B).empty());
  CHECK(quotient_coordinates(unit_vec(1), W, B) == SparseVec{{0, 1}});
  CHECK(quotient_coordinates(unit_vec(0), W, B) == SparseVec{{0, -1}});
  CHECK_THROWS_AS(quotient_coordinates(unit_vec(0), Subspace{3, {}}, {unit_vec(1)}), NotInSpan);
}

TEST_CASE("intersection and annihilator") {
  Subspace A{4, {unit_vec(0), unit_vec(1)}};
  Subspace B{4, {SparseVec{{1, 1}, {2, 1}}, unit_vec(0)}};
  auto C = intersect(A, B);
  CHECK(C.dim() == 1);
  auto ann = annihilator(A);
  CHECK(ann.dim() == 2);
  for (const auto& f : ann.basis)
    for (const auto& a : A.basis) CHECK(dot(f, a) == 0);
}
