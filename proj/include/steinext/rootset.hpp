#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace steinext {

// Subsets of the simple roots Δ_n = {1, ..., n-1}; bit i-1 stands for root i.
using Mask = uint32_t;

constexpr int kMaxN = 16;

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Interval {
  int lo = 0, hi = 0;  // inclusive
  Mask mask() const;
  bool operator==(const Interval&) const = default;
};

inline bool has(Mask m, int i) { return (m >> (i - 1)) & 1u; }
inline Mask bit(int i) { return Mask(1) << (i - 1); }
inline int popcount(Mask m) { return __builtin_popcount(m); }
Mask full_mask(int n);
void check_subset(int n, Mask m);

std::vector<int> elements(Mask m);
Mask mask_of(const std::vector<int>& xs);
std::string format_set(Mask m);
// "" or "-" is the empty set, otherwise comma separated integers.
Mask parse_set(const std::string& s, int n);

// Maximal intervals of I in increasing order.
std::vector<Interval> maximal_intervals(Mask I);
// Block sizes n_1, ..., n_r of the Levi attached to I (sum is n).
std::vector<int> block_sizes(int n, Mask I);
// Starting offsets Σ_{d'<d} n_{d'} of each block (0-based).
std::vector<int> block_offsets(int n, Mask I);
// Index (0-based) of the block containing position p in {1..n}.
int block_of_position(int n, Mask I, int p);
inline int num_blocks(int n, Mask I) { return n - popcount(I); }

// Ordered partitions of I into consecutive sub-intervals, refining the
// maximal intervals. Each entry lists the parts in increasing order.
std::vector<std::vector<Mask>> interval_partitions(Mask I);

// #{i' ∈ I : i' < i}; requires i ∈ I.
int m_count(Mask I, int i);

// No element of a is adjacent to or equal to an element of b.
bool do_not_connect(Mask a, Mask b);

// #(I ∖ I') + #(I' ∖ I).
inline int h_degree(Mask I, Mask Ip) { return popcount(I & ~Ip) + popcount(Ip & ~I); }

// r-sequence (r^0, ..., r^{r_J}) of a subset I ⊆ J, where J = I_v ∩ I_1:
// r^s is the number of blocks of I up to the s-th boundary of J.
std::vector<int> r_sequence(int n, Mask J, Mask I);

struct PositiveRoot {
  int i = 1, j = 2;  // e_i - e_j, 1 <= i < j <= n
  Mask interval() const;  // I_α = {i, ..., j-1}
  bool simple() const { return j == i + 1; }
  bool operator==(const PositiveRoot&) const = default;
  auto operator<=>(const PositiveRoot&) const = default;
};

// All positive roots sorted by interval length then left end.
std::vector<PositiveRoot> positive_roots(int n);
PositiveRoot root_of_interval(Mask interval);

inline int binom(int a, int b) {
  if (b < 0 || a < 0 || b > a) return 0;
  long long r = 1;
  for (int t = 1; t <= b; ++t) r = r * (a - b + t) / t;
  return int(r);
}

}  // namespace steinext
