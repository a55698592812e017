#pragma once
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "steinext/tits.hpp"

namespace steinext {

struct TheoremViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Decoded tuple Θ = (v, I, Λ_1, ..., Λ_r); blocks are 0-based here.
struct TupleData {
  Mask I = 0;
  Mono chars = 0;
  std::vector<PairSet> blocks;
};

TupleData decode(const Context& ctx, const Tuple& t);
Tuple encode(const Context& ctx, const TupleData& d);  // throws if blocks do not fit
int tuple_degree(const Context& ctx, const Tuple& t);

// I_v: roots carrying no character.
Mask I_v(const Context& ctx, Mono chars);
// ε(Θ) = (-1)^{Σ_{i∈I} i}
int epsilon(Mask I);
// Σ_d max{m : (m,ι) ∈ Λ_d}
int e_theta(const Context& ctx, const Tuple& t);

// Gluing at a boundary i ∉ I and splitting at i ∈ I. Absent when undefined.
std::optional<Tuple> p_plus(const Context& ctx, const Tuple& t, int i);
std::optional<Tuple> p_minus(const Context& ctx, const Tuple& t, int i);

// Everything below is relative to a pair I_0 ⊆ I_1.
struct PagePair {
  const Context* ctx;
  Mask I0, I1;
  PagePair(const Context& c, Mask i0, Mask i1) : ctx(&c), I0(i0), I1(i1) {}
  explicit PagePair(const Page& P) : ctx(&P.ctx()), I0(P.I0()), I1(P.I1()) {}
};

// r-sequence r^0 < ... < r^{r_{I_v ∩ I_1}} of Θ.
std::vector<int> r_seq(const PagePair& pp, const Tuple& t);

struct Improvement {
  int level = 0;  // 0-based block index d
  int i = 0, ip = 0;
  Tuple result;
};

// Improvements of Θ at level d (0-based block index).
std::vector<Improvement> improvements(const PagePair& pp, const Tuple& t, int d);
std::vector<Improvement> all_improvements(const PagePair& pp, const Tuple& t);

// I^{d,-}, I^{d,+} for a block meeting I_0 (relative to the last I_0-interval inside I^d).
struct BlockSplit {
  bool meets_I0 = false;
  Mask minus = 0, plus = 0;
};
BlockSplit block_split(const PagePair& pp, Mask I, int d);
Mask block_roots(int n, Mask I, int d);  // I^d

bool maximal_bullets(const PagePair& pp, const Tuple& t);  // bullets 2-4
bool is_maximally_atomic(const PagePair& pp, const Tuple& t);
bool is_standard(const PagePair& pp, const Tuple& t);

struct AtomClass {
  int ell = 0, k = 0;
  Tuple max;
  std::vector<Tuple> members;  // sorted
  SparseVec vec;               // x_Ω in the page basis at (ℓ, k)
};

// Classes of (I_0,I_1)-atomic tuples at (ℓ, k), sorted by maximal tuple.
const std::vector<AtomClass>& atom_classes(const Page& P, int ell, int k);

int bottom_row(const Page& P, int ell);  // ℓ + #I_1 - 2#I_0

// Ψ at one of the two bottom rows.
std::vector<AtomClass> enumerate_psi(const Page& P, int ell, int k);

struct DiamondReport {
  bool closed = true;          // d_1 maps atom spans into atom spans
  bool same_cohomology = true;
  std::vector<int> full_dims, sub_dims;  // indexed by ℓ - ell_min
};
DiamondReport diamond_quasi_iso_check(const Page& P, int k);

// Closed-form test for d_1(x_Ω) ≠ 0 in the bottom+1 row.
bool low_deg_nonzero_predicate(const PagePair& pp, const Tuple& max);

// ---- twists ----

bool saturated(const PagePair& pp, const Tuple& t, int s0);  // s0 is 1-based
Tuple twist(const PagePair& pp, const Tuple& t, int s0, int d0);  // d0 is 1-based
struct TwistedClass {
  Tuple top;
  std::vector<Tuple> members;
  SparseVec vec;
  int criterion_checked = 0, criterion_mismatch = 0;
};
TwistedClass twisted_class(const Page& P, int ell, int k, const Tuple& max, int s0, int d0);

}  // namespace steinext
