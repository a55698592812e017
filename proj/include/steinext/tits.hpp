#pragma once
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "steinext/levi.hpp"
#include "steinext/linalg.hpp"

namespace steinext {

// Basis element x_Θ of E_1: the column I together with a monomial of H(L̄_I).
struct Tuple {
  Mask I = 0;
  Mono mono = 0;
  bool operator==(const Tuple&) const = default;
  auto operator<=>(const Tuple&) const = default;
};

struct TupleHash {
  size_t operator()(const Tuple& t) const { return std::hash<uint64_t>()(t.mono * 0x9E3779B97F4A7C15ull ^ t.I); }
};

// Page E_1^{-ℓ,k} of the Tits-complex spectral sequence for I_0 ⊆ I_1.
// Column ℓ collects I_0 ⊆ I ⊆ I_1 with #I = ℓ; d_1 lowers ℓ by one.
class Page {
 public:
  Page(const Context& ctx, Mask I0, Mask I1);

  const Context& ctx() const { return *ctx_; }
  Mask I0() const { return I0_; }
  Mask I1() const { return I1_; }
  int ell_min() const { return popcount(I0_); }
  int ell_max() const { return popcount(I1_); }
  int max_k() const { return max_k_; }
  bool valid(int ell, int k) const { return ell >= ell_min() && ell <= ell_max() && k >= 0 && k <= max_k_; }
  std::vector<Mask> columns(int ell) const;

  const std::vector<Tuple>& basis(int ell, int k) const;
  int index(int ell, int k, const Tuple& t) const;  // -1 if absent
  int e1_dim(int ell, int k) const { return valid(ell, k) ? int(basis(ell, k).size()) : 0; }

  // d_1 : E_1^{-ℓ,k} -> E_1^{-ℓ+1,k}; zero-row matrix when ℓ = ell_min.
  const SparseMatrix& d1(int ell, int k) const;
  SparseVec apply_d1(int ell, int k, const SparseVec& x) const;
  // d_1 of a single basis tuple, as a vector in (ℓ-1, k).
  SparseVec d1_tuple(int ell, int k, const Tuple& t) const;

  // Echelon of im(d_1^{-ℓ-1,k}) inside E_1^{-ℓ,k}.
  const Echelon& image(int ell, int k) const;
  int d1_rank(int ell, int k) const;
  const Subspace& kernel(int ell, int k) const;

  int e2_dim(int ell, int k) const;
  // Kernel vectors independent modulo the image.
  std::vector<SparseVec> e2_reps(int ell, int k) const;
  bool is_cocycle(int ell, int k, const SparseVec& x) const { return apply_d1(ell, k, x).empty(); }

  // E_2 dimension restricted to basis elements whose character set satisfies pred.
  int e2_dim_filtered(int ell, int k, const std::function<bool(Mono)>& pred) const;

  // Multiplicity 1 sanity: d_1 ∘ d_1 = 0 at (ℓ,k).
  bool d1_squared_zero(int ell, int k) const;

 private:
  using Key = std::pair<int, int>;
  const Context* ctx_;
  Mask I0_, I1_;
  int max_k_ = 0;
  mutable std::map<Key, std::vector<Tuple>> basis_;
  mutable std::map<Key, std::unordered_map<Tuple, int, TupleHash>> index_;
  mutable std::map<Key, SparseMatrix> d1_;
  mutable std::map<Key, std::unique_ptr<Echelon>> image_;
  mutable std::map<Key, RankKernelImage> rki_;
};

// Cached page objects per (n, d_K, I_0, I_1); not thread safe.
Page& page(int n, int dK, Mask I0, Mask I1);
void clear_page_cache();

// Euler characteristic of row k on E_1 and on E_2.
std::pair<long, long> euler_row(const Page& P, int k);

// E_2 split by the val-part of the character set; key is the val mask.
std::map<Mono, int> e2_split_by_val(const Page& P, int ell, int k);

struct DegenerationReport {
  bool ok = true;
  // for each val-part v∞ (as positions) and total degree t: (total cohomology, Σ E_2)
  std::map<Mask, std::map<int, std::pair<int, int>>> table;
};

// Compares the cohomology of the weight-zero double complex of Lie algebra
// cochains over the columns with the E_2 totals, separately for each v∞.
DegenerationReport degeneration_check(int n, int dK, Mask I0, Mask I1);

}  // namespace steinext
