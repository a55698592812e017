#pragma once
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "steinext/linalg.hpp"
#include "steinext/rootset.hpp"

namespace steinext {

using Mono = uint64_t;  // exterior monomial over the generators of a Layout

inline int popcount64(uint64_t x) { return __builtin_popcountll(x); }

// Center characters: for each position i in Δ_n one val and d_K log_ι's.
// kind 0 = val, kind 1 + ι = log_ι.
struct CenterChar {
  int pos = 1;
  int kind = 0;
  bool is_val() const { return kind == 0; }
  int iota() const { return kind - 1; }
};

// A generator (m, ι) of H(pgl_{n_d}) in one embedding; m odd, 3 <= m <= 2n_d - 1.
struct PrimitivePair {
  int m = 3, iota = 0;
  bool operator==(const PrimitivePair&) const = default;
};

// Pairs are packed into a 32-bit set by index ((m-3)/2) * d_K + ι.
using PairSet = uint32_t;

struct Gen {
  bool is_char = true;
  int pos = 0, kind = 0;            // center character
  int block = -1, m = 0, iota = 0;  // block generator
  int deg = 1;
};

// Generator layout of H(L̄_I): center chars first (ids for every position,
// chars at positions of I are never used), then blocks from left to right,
// inside a block ι ascending and m descending.
struct Layout {
  int n = 2, dK = 1;
  Mask I = 0;
  std::vector<int> sizes, offsets;
  int nchar = 0, ngens = 0;
  std::vector<Gen> gens;
  std::vector<int> block_first;  // first generator id of each block
  Mono allowed_chars = 0, block_gens = 0;

  int r() const { return int(sizes.size()); }
  int char_id(int pos, int kind) const { return (pos - 1) * (dK + 1) + kind; }
  // -1 if (m, ι) is not a generator of block d
  int gen_id(int d, int m, int iota) const;
  int degree(Mono x) const;
  Mono char_part(Mono x) const { return x & ((nchar >= 64) ? ~Mono(0) : ((Mono(1) << nchar) - 1)); }
  PairSet block_pairs(Mono x, int d) const;
  Mono encode(Mono chars, const std::vector<PairSet>& blocks) const;  // throws if a pair does not fit
  bool fits(const std::vector<PairSet>& blocks) const;
  std::vector<PairSet> decode_blocks(Mono x) const;
};

int pair_index(int m, int iota, int dK);
PrimitivePair pair_of_index(int p, int dK);
std::vector<PrimitivePair> pairs_in(PairSet s, int dK);  // canonical order: ι asc, m desc
int max_m(PairSet s, int dK);                            // 0 if empty
int pairs_weight(PairSet s, int dK);                     // Σ m

// Shared per (n, d_K) data: layouts of every I and monomials by degree.
class Context {
 public:
  Context(int n, int dK);
  int n() const { return n_; }
  int dK() const { return dK_; }
  int nchar() const { return (n_ - 1) * (dK_ + 1); }
  const Layout& layout(Mask I) const;
  // All allowed monomials of H(L̄_I) of degree k.
  const std::vector<Mono>& monomials(Mask I, int k) const;
  int max_degree(Mask I) const;
  // Chars as a single bit pattern in layout ids.
  Mono char_bit(int pos, int kind) const { return Mono(1) << ((pos - 1) * (dK_ + 1) + kind); }
  Mask char_positions(Mono chars) const;  // positions carrying a character
  Mono val_part(Mono chars) const;

 private:
  struct Slot {
    Layout layout;
    mutable std::once_flag once;
    mutable std::vector<std::vector<Mono>> by_degree;
  };
  int n_, dK_;
  std::vector<std::unique_ptr<Slot>> slots_;
};

const Context& context(int n, int dK);  // process-wide cache

// Sign of reordering a*b into increasing generator order; 0 if they overlap.
int wedge_sign(Mono a, Mono b);

// Res_{I -> J} for J ⊆ I applied to one monomial. Result as (monomial, sign) list.
std::vector<std::pair<Mono, int>> restrict_mono(const Context& ctx, Mask I, Mask J, Mono x);

// Σ_{n_d, k}: subsets of the primitive pairs for one block with total weight k.
std::vector<PairSet> sigma_index(int nd, int k, int dK);

// Shuffle sign of rewriting Λ (canonical order) as (Λ', Λ ∖ Λ').
int shuffle_sign(PairSet lambda, PairSet sub, int dK);

struct LeviClass {
  Mono chars = 0;
  std::vector<PairSet> blocks;
  Mono mono = 0;
};

std::vector<LeviClass> levi_basis(const Context& ctx, Mask I, int k);
std::vector<int> levi_dims(const Context& ctx, Mask I);

// ---- Chevalley–Eilenberg oracle ----

// A finite-dimensional Lie algebra by structure constants, with a weight
// (integer vector) per basis element for an ad-semisimple torus.
struct LieAlgebra {
  int dim = 0;
  // bracket[k] = list of (i, j, c) with i < j and [x_i, x_j] = Σ_k c x_k
  std::vector<std::vector<std::tuple<int, int, Q>>> bracket;
  std::vector<std::vector<int>> weight;
  std::string name;
};

// (⊕_d sl_{n_d})^{d_K} ⊕ abelian of rank (r_I - 1)(d_K + 1).
LieAlgebra levi_lie_algebra(int n, int dK, Mask I);
LieAlgebra sl_algebra(int m);
LieAlgebra abelian_algebra(int rank);
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

// dim H^q of the CE complex; weight_zero restricts to the weight-zero subcomplex.
std::vector<int> ce_cohomology(const LieAlgebra& g, bool weight_zero = true);

}  // namespace steinext
