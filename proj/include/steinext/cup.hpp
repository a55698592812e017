#pragma once
#include <optional>
#include <string>
#include <vector>

#include "steinext/ext.hpp"

namespace steinext {

// Chain I4 ⊆ I2 ⊆ I0 ⊆ I1 with graded positions (ℓ0, ℓ1) and Ext degrees
// (k0, k1) in the complex grading.  The three pages involved are
//   A = (I2 ∪ (I1∖I0), I1) at (ℓ0, kA),  B = (I4 ∪ (I1∖I2), I1) at (ℓ1, kB),
//   C = (I4 ∪ (I1∖I0), I1) at (ℓ2, kA + kB),  ℓ2 = ℓ0 + ℓ1 - #I1.
struct CupContext {
  int n = 2, dK = 1;
  Mask I0 = 0, I1 = 0, I2 = 0, I4 = 0;
  int ell0 = 0, ell1 = 0, k0 = 0, k1 = 0;

  int ell2() const { return ell0 + ell1 - popcount(I1); }
  int rowA() const { return k0 + ell0 - popcount(I1); }
  int rowB() const { return k1 + ell1 - popcount(I1); }
  int rowC() const { return rowA() + rowB(); }
  Page& A() const;
  Page& B() const;
  Page& C() const;
  // Throws InvalidArgument unless the chain is nested, the columns exist and
  // (k0, k1) is one of the three bottom-degree pairs.
  void validate() const;
  // The context through 𝐄_{I0,I2'}, I2' = I4 ∪ (I0∖I2), with the factors exchanged.
  CupContext swapped() const;
};

// All valid contexts for one chain: three degree pairs times the columns.
std::vector<CupContext> cup_contexts(int n, int dK, Mask I0, Mask I1, Mask I2, Mask I4);

// Product on E_1: x at A(ℓ0, kA), y at B(ℓ1, kB), result at C(ℓ2, kC).  For
// I ∈ S0, I' ∈ S1 the component at I ∩ I' is
//   (-1)^{kA·#(I1∖I') + inv(I1∖I, I1∖I')} Res(x_I) ∧ Res(y_{I'}).
SparseVec cup_e1(const CupContext& c, const SparseVec& x, const SparseVec& y);

struct GradedElement {
  SparseVec rep;    // cocycle in the page basis of C
  SparseVec coords; // coordinates in the Ψ basis of C at (ℓ2, kC)
};

// Coordinates of a cocycle of P at (ℓ, k) modulo im d_1 in the Ψ basis.
// Throws TheoremViolation if the reduction leaves a residual.
SparseVec psi_coordinates(const Page& P, int ell, int k, const SparseVec& x);

// Cup of two cocycles, reduced into Ψ coordinates.
GradedElement cup_graded(const CupContext& c, const SparseVec& x, const SparseVec& y);

struct CupAtom {
  int sign = 1;
  int omega2 = -1;  // index into enumerate_psi(C, ℓ2, kC)
  Tuple max;
};

// x_{Ω0} ∪ x_{Ω1} = ε x_{Ω2}; indices into enumerate_psi of A and B.
CupAtom cup_atoms(const CupContext& c, int omega0, int omega1);

// Separation: max(I0∖I2) < min(I2∖I4) (vacuous if either side is empty).
bool separated(Mask I0, Mask I2, Mask I4);

// Combinatorial route under separation: twist Θ0 onto its last block, glue
// with Θ1 and look up the untwisted class.  The sign is read off one product
// of tuples together with the twist signs.
CupAtom cup_atoms_separated(const CupContext& c, int omega0, int omega1);

// Summary of all products in one context.
struct CupTable {
  CupContext ctx;
  int nA = 0, nB = 0, nC = 0;
  std::vector<CupAtom> products;  // row-major over (Ω0, Ω1)
  bool injective = true;
  std::optional<int> sign;        // set if ε is the same for every pair
  // ε times the sign of reordering chars(Θ0) ∧ chars(Θ1); set if constant.
  std::optional<int> normalized_sign;
  bool bijective() const { return injective && nA * nB == nC; }
};
CupTable cup_table(const CupContext& c);

// Everything checked for one chain I4 ⊆ I2 ⊆ I0 ⊆ I1 over all its contexts.
struct ChainReport {
  int contexts = 0, products = 0;
  bool injective = true;
  bool normalized_sign_constant = true;
  bool raw_sign_constant = true;
  bool bijective = true;  // every (2a, 2b) context is a bijection on Ψ
  bool do_not_connect = false;
  bool swap_law = true;
  int separated_checked = 0;
  bool separated_agree = true;
  std::string first_failure;
  bool ok() const {
    return injective && normalized_sign_constant && swap_law && separated_agree && bijective == do_not_connect;
  }
};
ChainReport cup_chain_report(int n, int dK, Mask I0, Mask I1, Mask I2, Mask I4);

// ---- bottom-degree Ext groups ----

// 𝐄_{I0,I2} (I2 ⊆ I0, Δ = Δ_n) lives on the bottom rows of the page
// (Δ∖(I0∖I2), Δ).  Coordinates: the Ψ bases of the graded pieces, ℓ ascending.
struct ELayout {
  int n = 2, dK = 1;
  Mask I0 = 0, I2 = 0;
  int ell_min = 0;
  std::vector<int> offset, size;  // per ℓ - ell_min
  int dim = 0;
  int level_of(int coord) const;  // graded level ℓ of a coordinate
};
const ELayout& e_layout(int n, int dK, Mask I0, Mask I2);
int e_dim(int n, int dK, Mask I0, Mask I2);
// One label per coordinate: graded level and maximal tuple of the Ψ class.
std::vector<std::string> e_manifest(int n, int dK, Mask I0, Mask I2);

struct EClass {
  int n = 2, dK = 1;
  Mask I0 = 0, I2 = 0;
  SparseVec v;
};

// Graded cup 𝐄_{I0,I2} × 𝐄_{I2,I4} → 𝐄_{I0,I4} in the bottom degree.
EClass cup(const EClass& x, const EClass& y);
EClass cup_all(const std::vector<EClass>& xs);

EClass unit_class(int n, int dK, Mask I0);
// #I0∖I2 = 1: the classes with character val_i resp. log_{i,ι}.
EClass val_class(int n, int dK, Mask I0, Mask I2);
EClass log_class(int n, int dK, Mask I0, Mask I2, int iota);
// Iterated cup of val classes removing the roots of I0∖I2 in the given order
// (default: increasing).
EClass smooth_line(int n, int dK, Mask I0, Mask I2, const std::vector<int>& order = {});

// X̄ for I0∖I2 = I_α: val then logs when α is simple, otherwise the d_K
// classes with maximal tuple (∅, Δ∖{i}, Λ_1 = ∅, Λ_2 = {(2#I_α - 1, ι)}).
std::vector<EClass> generators_Xbar(int n, int dK, Mask I0, Mask I2);
inline std::vector<EClass> generators_Xbar(int n, int dK, PositiveRoot a) {
  return generators_Xbar(n, dK, a.interval(), 0);
}
// x_{α,ι} for #I_α ≥ 2, or the log class when α is simple.
EClass x_alpha(int n, int dK, Mask I0, Mask I2, int iota);

struct BasisX {
  std::vector<EClass> vectors;
  std::vector<std::vector<Mask>> partition_of;  // parts of I0∖I2 used
  int rank = 0;
  int expected = 0;  // dim 𝐄_{I0,I2}
};
// Iterated cups over interval partitions of I0∖I2 with factors from X̄
// (parts removed in increasing order).  Throws TheoremViolation on rank loss.
BasisX basis_X(int n, int dK, Mask I0, Mask I2);

// ---- Ê_n = 𝐄_{Δ,∅} ----

// ι(u) = x^∞_{Δ,I0} ∪ u ∪ x^∞_{I2,∅}
EClass iota_embed(const EClass& u);
Subspace ehat_subspace(int n, int dK, Mask I0, Mask I2);

// Span of 𝐄_{I,I'} ∪ 𝐄_{I',∅} over ∅ ≠ I' ⊊ I, inside 𝐄_{I,∅}.
Subspace decomposable_span(int n, int dK, Mask I);

}  // namespace steinext
