#pragma once
#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace steinext {

using Q = mpq_class;

// Sorted by index, no explicit zeros.
using SparseVec = std::vector<std::pair<int, Q>>;

struct NotInSpan : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SparseVec unit_vec(int i, const Q& c = 1);
// y + a x
SparseVec axpy(const SparseVec& y, const Q& a, const SparseVec& x);
SparseVec scaled(const SparseVec& x, const Q& a);
Q coeff(const SparseVec& x, int i);
bool is_zero(const SparseVec& x);
// Builds a sorted vector from unsorted (index, value) pairs, summing duplicates.
SparseVec normalize(std::vector<std::pair<int, Q>> raw);

struct SparseMatrix {
  int rows = 0, cols = 0;
  std::vector<SparseVec> col;  // column-major

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c), col(c) {}
  SparseVec apply(const SparseVec& x) const;
  SparseMatrix compose(const SparseMatrix& rhs) const;  // this * rhs
  bool is_zero() const;
  std::vector<std::vector<Q>> dense() const;
};

struct Subspace {
  int ambient = 0;
  std::vector<SparseVec> basis;
  int dim() const { return int(basis.size()); }
};

// Row-echelon store with smallest-index pivots normalised to 1. Optional labels
// record each stored row as a combination of the labelled inserted vectors.
class Echelon {
 public:
  explicit Echelon(int ambient = 0) : ambient_(ambient), pivot_row_(ambient, -1) {}

  struct Reduced {
    SparseVec residual;
    SparseVec combo;  // over labels: v = residual + Σ combo[l] * inserted[l] + (unlabelled part)
  };

  Reduced reduce(const SparseVec& v) const;
  // Returns true if v was independent of the current span.
  bool insert(const SparseVec& v, int label = -1);
  bool contains(const SparseVec& v) const { return reduce(v).residual.empty(); }
  int rank() const { return int(rows_.size()); }
  int ambient() const { return ambient_; }
  const std::vector<SparseVec>& rows() const { return rows_; }

 private:
  int ambient_;
  std::vector<int> pivot_row_;
  std::vector<SparseVec> rows_;
  std::vector<SparseVec> combos_;
};

struct RankKernelImage {
  int rank = 0;
  Subspace kernel;  // in the source
  Subspace image;   // in the target, echelon rows
};

RankKernelImage rank_kernel_image(const SparseMatrix& M, bool want_kernel = true);

// Witness coefficients c with v = Σ c_i W.basis[i], or nothing.
std::optional<SparseVec> membership(const SparseVec& v, const Subspace& W);

// Coordinates of v modulo W in the family B (B independent modulo W).
// Throws NotInSpan if v ∉ W + span B.
SparseVec quotient_coordinates(const SparseVec& v, const Subspace& W, const std::vector<SparseVec>& B);

// Plain dense Gaussian elimination; used as an oracle in tests.
int dense_rank(std::vector<std::vector<Q>> rows);

// Subspace helpers.
int span_rank(const std::vector<SparseVec>& vs, int ambient);
Subspace span_of(const std::vector<SparseVec>& vs, int ambient);
Subspace intersect(const Subspace& A, const Subspace& B);
bool subspace_contains(const Subspace& big, const Subspace& small);
// Annihilator of W inside the dual (coordinates w.r.t. the standard basis).
Subspace annihilator(const Subspace& W);
Q dot(const SparseVec& a, const SparseVec& b);

}  // namespace steinext
