#include "steinext/rootset.hpp"

#include <algorithm>
#include <sstream>

namespace steinext {

Mask Interval::mask() const {
  Mask m = 0;
  for (int i = lo; i <= hi; ++i) m |= bit(i);
  return m;
}

Mask full_mask(int n) {
  if (n < 1 || n > kMaxN) throw InvalidArgument("n out of range: " + std::to_string(n));
  return n == 1 ? 0 : (Mask(1) << (n - 1)) - 1;
}

void check_subset(int n, Mask m) {
  if (m & ~full_mask(n)) throw InvalidArgument("subset " + format_set(m) + " not contained in Δ_" + std::to_string(n));
}

std::vector<int> elements(Mask m) {
  std::vector<int> out;
  for (int i = 1; m; ++i, m >>= 1)
    if (m & 1u) out.push_back(i);
  return out;
}

Mask mask_of(const std::vector<int>& xs) {
  Mask m = 0;
  for (int x : xs) {
    if (x < 1 || x > 31) throw InvalidArgument("root index out of range: " + std::to_string(x));
    m |= bit(x);
  }
  return m;
}

std::string format_set(Mask m) {
  std::string s;
  for (int x : elements(m)) {
    if (!s.empty()) s += ',';
    s += std::to_string(x);
  }
  return s;
}

Mask parse_set(const std::string& s, int n) {
  if (s.empty() || s == "-") return 0;
  std::vector<int> xs;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw InvalidArgument("bad subset syntax: '" + s + "'");
    size_t used = 0;
    int x = 0;
    try {
      x = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("bad subset syntax: '" + s + "'");
    }
    if (used != tok.size()) throw InvalidArgument("bad subset syntax: '" + s + "'");
    if (x < 1 || x >= n) throw InvalidArgument("root " + tok + " outside Δ_" + std::to_string(n));
    xs.push_back(x);
  }
  return mask_of(xs);
}

std::vector<Interval> maximal_intervals(Mask I) {
  std::vector<Interval> out;
  int i = 1;
  while (I >> (i - 1)) {
    if (has(I, i)) {
      int j = i;
      while (has(I, j + 1)) ++j;
      out.push_back({i, j});
      i = j + 1;
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<int> block_sizes(int n, Mask I) {
  check_subset(n, I);
  std::vector<int> sizes;
  int cur = 1;
  for (int i = 1; i < n; ++i) {
    if (has(I, i)) {
      ++cur;
    } else {
      sizes.push_back(cur);
      cur = 1;
    }
  }
  sizes.push_back(cur);
  return sizes;
}

std::vector<int> block_offsets(int n, Mask I) {
  auto sz = block_sizes(n, I);
  std::vector<int> off(sz.size());
  int acc = 0;
  for (size_t d = 0; d < sz.size(); ++d) {
    off[d] = acc;
    acc += sz[d];
  }
  return off;
}

int block_of_position(int n, Mask I, int p) {
  if (p < 1 || p > n) throw InvalidArgument("position out of range");
  int d = 0;
  for (int i = 1; i < p; ++i)
    if (!has(I, i)) ++d;
  return d;
}

std::vector<std::vector<Mask>> interval_partitions(Mask I) {
  std::vector<std::vector<Mask>> out{{}};
  for (const auto& J : maximal_intervals(I)) {
    // cut points between consecutive elements of J
    int len = J.hi - J.lo + 1;
    std::vector<std::vector<Mask>> next;
    for (const auto& prefix : out) {
      for (Mask cuts = 0; cuts < (Mask(1) << (len - 1)); ++cuts) {
        auto parts = prefix;
        int start = J.lo;
        for (int t = 0; t < len - 1; ++t) {
          if ((cuts >> t) & 1u) {
            parts.push_back(Interval{start, J.lo + t}.mask());
            start = J.lo + t + 1;
          }
        }
        parts.push_back(Interval{start, J.hi}.mask());
        next.push_back(std::move(parts));
      }
    }
    out = std::move(next);
  }
  return out;
}

int m_count(Mask I, int i) {
  if (i < 1 || !has(I, i)) throw InvalidArgument("m_count: " + std::to_string(i) + " not in I");
  return popcount(I & (bit(i) - 1));
}

bool do_not_connect(Mask a, Mask b) {
  Mask grown = a | (a << 1) | (a >> 1);
  return (grown & b) == 0;
}

std::vector<int> r_sequence(int n, Mask J, Mask I) {
  check_subset(n, J);
  check_subset(n, I);
  if (I & ~J) throw InvalidArgument("r_sequence: I must be contained in I_v ∩ I_1");
  std::vector<int> r{0};
  int blocks = 0;
  for (int i = 1; i < n; ++i) {
    if (!has(I, i)) ++blocks;
    if (!has(J, i)) r.push_back(blocks);
  }
  r.push_back(blocks + 1);
  return r;
}

Mask PositiveRoot::interval() const { return Interval{i, j - 1}.mask(); }

std::vector<PositiveRoot> positive_roots(int n) {
  std::vector<PositiveRoot> out;
  for (int len = 1; len < n; ++len)
    for (int i = 1; i + len <= n; ++i) out.push_back({i, i + len});
  return out;
}

PositiveRoot root_of_interval(Mask interval) {
  auto iv = maximal_intervals(interval);
  if (iv.size() != 1) throw InvalidArgument("not an interval: {" + format_set(interval) + "}");
  return {iv[0].lo, iv[0].hi + 1};
}

}  // namespace steinext
