#pragma once
#include <map>
#include <string>
#include <vector>

#include "steinext/atoms.hpp"

namespace steinext {

// dim Ext^k(i_{I'}, i_I) between principal series: H^k(L̄_I) if I ⊆ I', else 0.
long ps_ext_dim(int n, int dK, Mask I, Mask Ip, int k);

// Degree convention for Ext between Tits complexes.  `complex` is the degree
// of Ext^h(C_{I0,I1}, C_{I2,I3}); `representation` applies only when
// I1 = I3 = Δ and reports Ext between V_{I0} and V_{I2}, h_V = h_C + #I2 - #I0.
enum class ExtGrading { complex, representation };

struct ExtProfile {
  int n = 0, dK = 1;
  Mask I0 = 0, I1 = 0, I2 = 0, I3 = 0;
  ExtGrading grading = ExtGrading::complex;
  bool vanishes = false;  // support condition I2 ⊆ I1 ⊆ I0 ∪ I3 fails
  Mask I0s = 0, I1s = 0;  // reindexed Tits page
  int h_min = 0;          // lowest possibly nonzero degree (in the chosen grading)
  int h_max = 0;
  std::map<int, long> dims;  // nonzero dims only
  // For h = h_min and h_min + 1: dims of the graded pieces, ℓ = #I0s .. #I1s.
  std::map<int, std::vector<int>> graded;
  // Ψ labels of each graded piece, same indexing as `graded`.
  std::map<int, std::vector<std::vector<Tuple>>> psi;
  long dim(int h) const {
    auto it = dims.find(h);
    return it == dims.end() ? 0 : it->second;
  }
};

ExtProfile ext_profile(int n, int dK, Mask I0, Mask I1, Mask I2, Mask I3,
                       ExtGrading grading = ExtGrading::complex);

// Row k of the reindexed page at ℓ that contributes to Ext^h (complex grading).
inline int ext_row(Mask I1, int ell, int h_complex) { return ell + h_complex - popcount(I1); }

struct SteinbergExt {
  int h_min = 0;
  long dim_E = 0, dim_E1 = 0;            // 𝐄_{I0,I2} and 𝐄'_{I0,I2}
  std::vector<int> graded_E, graded_E1;  // ℓ = #I0♯ .. n-1
  int ell_min = 0;
};

// Ext between V_{I0} and V_{I2}: h_{I0,I2}, the two lowest dims and graded pieces.
SteinbergExt steinberg_ext_dims(int n, int dK, Mask I0, Mask I2);
int h_index(Mask I0, Mask I2);  // #I0∖I2 + #I2∖I0

// ---- general shape complexes C_P ----

struct ComplexShape {
  int n = 2;
  std::vector<Mask> parts;   // partition of Δ_n
  std::vector<int> lo, hi;   // window [ℓ⁻, ℓ⁺] per part
  void validate() const;     // throws InvalidArgument
};

// The shape whose complex is C_{I0,I1}.
ComplexShape tits_shape(int n, Mask I0, Mask I1);

// E_2 of Ext(C_P, i_I) is H^k(L̄_I) ⊗ H(C_{P,I}); these return dim H^{-ℓ}(C_{P,I})
// indexed by ℓ = 0 .. n-1.  The first uses the closed form per part, the
// second assembles the complex of admissible I' ⊇ I and takes ranks.
std::vector<long> shape_cohomology(const ComplexShape& P, Mask I);
std::vector<long> shape_cohomology_direct(const ComplexShape& P, Mask I);

// Per-part closed form: window [lo, hi] on a part of size N meeting I in a roots.
// Returns (ℓ, dim) pairs.
std::vector<std::pair<int, long>> part_cohomology(int N, int a, int lo, int hi);

// c(ℓ, ℓ', ℓ'') = (ℓ-ℓ'')! / ((ℓ-ℓ')! (ℓ'-ℓ'')!)
long c_binom(int l, int lp, int lpp);

std::string format_tuple(const Context& ctx, const Tuple& t);

}  // namespace steinext
