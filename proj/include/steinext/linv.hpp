#pragma once
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "steinext/cup.hpp"

namespace steinext {

// 𝓛_{α,ι} for every positive root α and embedding ι.
struct LInvariantParams {
  int n = 2, dK = 1;
  std::map<std::pair<PositiveRoot, int>, Q> L;
  void validate() const;  // throws InvalidArgument unless every (α, ι) is present exactly once
};

// A covector on Ê_n = 𝐄_{Δ,∅} in the Ψ coordinates; W = ker φ.
struct Hyperplane {
  int n = 2, dK = 1;
  std::vector<Q> phi;
  Q eval(const SparseVec& x) const;
};

struct NotAnInvariant : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

// ψ_{I0,I2} = φ ∘ ι_{I0,I2} as a covector on 𝐄_{I0,I2}.
std::vector<Q> restricted_covector(const Hyperplane& h, Mask I0, Mask I2);

// W_{I,∅} ⊆ 𝐄_{I,∅} spanned by cups of y_α ∈ {x^∞_α} ∪ {x_{α,ι} - 𝓛 x^∞_α}
// over interval partitions of I, leaving out the all-x^∞ products.
Subspace w_from_params(const LInvariantParams& p, Mask I);
Hyperplane params_to_hyperplane(const LInvariantParams& p);
// Throws NotAnInvariant if condition (i) fails somewhere.
LInvariantParams hyperplane_to_params(const Hyperplane& h);

struct BSReport {
  bool ok = true;
  int condition = 0;       // 1 or 2 for the first violated condition
  Mask I0 = 0, I2 = 0, I4 = 0;
  std::string message;
};
BSReport is_bs_invariant(const Hyperplane& h);
// The two interval conditions that suffice for the full check.
BSReport simple_condition(const Hyperplane& h);
// 𝐄^<_{I_α,∅} ∩ W_{I_α,∅} = Σ_{α' < α} 𝐄_{I_α,I_α'} ∪ W_{I_α',∅}
bool sum_formula_check(const Hyperplane& h, PositiveRoot alpha);

LInvariantParams random_params(int n, int dK, std::mt19937_64& rng);
// A valid φ moved along a random direction until it fails the check.  For
// n = 2 every hyperplane off the smooth line is valid, so there the
// perturbation puts the smooth line into W.
Hyperplane perturbed_hyperplane(const Hyperplane& h, std::mt19937_64& rng);

bool same_hyperplane(const Hyperplane& a, const Hyperplane& b);

// ---- Galois side, dimensions only ----

// dim Ext^i between the rank one pieces attached to ℓ1, ℓ2.
int galois_ext_dim(int l1, int l2, int i, int dK);

struct UniversalDim {
  long dim = 0;
  std::vector<long> D;              // D[m] for m = 1 .. n (D[0] unused)
  std::vector<std::string> trace;   // one line per recursion step
};
UniversalDim universal_dim(int n, int dK);
// Σ over interval partitions of Δ_n of ∏_parts (d_K + [part is a single root]).
long interval_partition_count(int n, int dK);

}  // namespace steinext
