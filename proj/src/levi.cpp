#include "steinext/levi.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace steinext {

int pair_index(int m, int iota, int dK) { return ((m - 3) / 2) * dK + iota; }

PrimitivePair pair_of_index(int p, int dK) { return {3 + 2 * (p / dK), p % dK}; }

std::vector<PrimitivePair> pairs_in(PairSet s, int dK) {
  std::vector<PrimitivePair> out;
  for (int p = 0; p < 32; ++p)
    if ((s >> p) & 1u) out.push_back(pair_of_index(p, dK));
  std::sort(out.begin(), out.end(), [](const PrimitivePair& a, const PrimitivePair& b) {
    return a.iota != b.iota ? a.iota < b.iota : a.m > b.m;
  });
  return out;
}

int max_m(PairSet s, int dK) {
  int best = 0;
  for (const auto& pr : pairs_in(s, dK)) best = std::max(best, pr.m);
  return best;
}

int pairs_weight(PairSet s, int dK) {
  int w = 0;
  for (const auto& pr : pairs_in(s, dK)) w += pr.m;
  return w;
}

int Layout::gen_id(int d, int m, int iota) const {
  if (d < 0 || d >= r()) return -1;
  int nd = sizes[d];
  if (m < 3 || m % 2 == 0 || m > 2 * nd - 1 || iota < 0 || iota >= dK) return -1;
  return block_first[d] + iota * (nd - 1) + (2 * nd - 1 - m) / 2;
}

int Layout::degree(Mono x) const {
  int k = 0;
  while (x) {
    int b = __builtin_ctzll(x);
    k += gens[b].deg;
    x &= x - 1;
  }
  return k;
}

PairSet Layout::block_pairs(Mono x, int d) const {
  PairSet s = 0;
  int first = block_first[d];
  int last = first + dK * (sizes[d] - 1);
  for (int g = first; g < last; ++g)
    if ((x >> g) & 1u) s |= PairSet(1) << pair_index(gens[g].m, gens[g].iota, dK);
  return s;
}

std::vector<PairSet> Layout::decode_blocks(Mono x) const {
  std::vector<PairSet> out(r());
  for (int d = 0; d < r(); ++d) out[d] = block_pairs(x, d);
  return out;
}

bool Layout::fits(const std::vector<PairSet>& blocks) const {
  if (int(blocks.size()) != r()) return false;
  for (int d = 0; d < r(); ++d)
    if (max_m(blocks[d], dK) > 2 * sizes[d] - 1) return false;
  return true;
}

Mono Layout::encode(Mono chars, const std::vector<PairSet>& blocks) const {
  if (chars & ~allowed_chars) throw InvalidArgument("character at a position inside I");
  if (int(blocks.size()) != r()) throw InvalidArgument("block count mismatch");
  Mono x = chars;
  for (int d = 0; d < r(); ++d) {
    for (const auto& pr : pairs_in(blocks[d], dK)) {
      int g = gen_id(d, pr.m, pr.iota);
      if (g < 0) throw InvalidArgument("pair (" + std::to_string(pr.m) + "," + std::to_string(pr.iota) + ") does not fit block");
      x |= Mono(1) << g;
    }
  }
  return x;
}

Context::Context(int n, int dK) : n_(n), dK_(dK) {
  if (n < 1 || n > kMaxN) throw InvalidArgument("n out of range");
  if (dK < 1 || dK > 8) throw InvalidArgument("d_K out of range");
  Mask full = full_mask(n);
  slots_.resize(size_t(full) + 1);
  for (Mask I = 0; I <= full; ++I) {
    auto slot = std::make_unique<Slot>();
    Layout& L = slot->layout;
    L.n = n;
    L.dK = dK;
    L.I = I;
    L.sizes = block_sizes(n, I);
    L.offsets = block_offsets(n, I);
    L.nchar = (n - 1) * (dK + 1);
    for (int id = 0; id < L.nchar; ++id) {
      Gen g;
      g.is_char = true;
      g.pos = id / (dK + 1) + 1;
      g.kind = id % (dK + 1);
      g.deg = 1;
      L.gens.push_back(g);
      if (!has(I, g.pos)) L.allowed_chars |= Mono(1) << id;
    }
    for (int d = 0; d < L.r(); ++d) {
      L.block_first.push_back(int(L.gens.size()));
      for (int iota = 0; iota < dK; ++iota) {
        for (int m = 2 * L.sizes[d] - 1; m >= 3; m -= 2) {
          Gen g;
          g.is_char = false;
          g.block = d;
          g.m = m;
          g.iota = iota;
          g.deg = m;
          L.gens.push_back(g);
        }
      }
    }
    L.ngens = int(L.gens.size());
    if (L.ngens > 64) throw InvalidArgument("too many generators for (n, d_K)");
    for (int g = L.nchar; g < L.ngens; ++g) L.block_gens |= Mono(1) << g;
    slots_[I] = std::move(slot);
  }
}

const Layout& Context::layout(Mask I) const {
  check_subset(n_, I);
  return slots_[I]->layout;
}

const std::vector<Mono>& Context::monomials(Mask I, int k) const {
  const Slot& s = *slots_.at(I);
  std::call_once(s.once, [&] {
    const Layout& L = s.layout;
    std::vector<int> ids;
    for (int g = 0; g < L.ngens; ++g)
      if (((L.allowed_chars | L.block_gens) >> g) & 1u) ids.push_back(g);
    if (ids.size() > 24) throw InvalidArgument("monomial enumeration too large for (n, d_K)");
    int maxdeg = 0;
    for (int g : ids) maxdeg += L.gens[g].deg;
    s.by_degree.assign(maxdeg + 1, {});
    size_t total = size_t(1) << ids.size();
    for (size_t sub = 0; sub < total; ++sub) {
      Mono x = 0;
      int deg = 0;
      for (size_t t = 0; t < ids.size(); ++t)
        if ((sub >> t) & 1u) {
          x |= Mono(1) << ids[t];
          deg += L.gens[ids[t]].deg;
        }
      s.by_degree[deg].push_back(x);
    }
    for (auto& v : s.by_degree) std::sort(v.begin(), v.end());
  });
  static const std::vector<Mono> empty;
  if (k < 0 || k >= int(s.by_degree.size())) return empty;
  return s.by_degree[k];
}

int Context::max_degree(Mask I) const {
  monomials(I, 0);
  return int(slots_.at(I)->by_degree.size()) - 1;
}

Mask Context::char_positions(Mono chars) const {
  Mask m = 0;
  for (int id = 0; id < nchar(); ++id)
    if ((chars >> id) & 1u) m |= bit(id / (dK_ + 1) + 1);
  return m;
}

Mono Context::val_part(Mono chars) const {
  Mono v = 0;
  for (int pos = 1; pos < n_; ++pos) v |= chars & char_bit(pos, 0);
  return v;
}

const Context& context(int n, int dK) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Context>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, dK}];
  if (!slot) slot = std::make_unique<Context>(n, dK);
  return *slot;
}

int wedge_sign(Mono a, Mono b) {
  if (a & b) return 0;
  int inv = 0;
  Mono bb = b;
  while (bb) {
    int y = __builtin_ctzll(bb);
    inv += popcount64(y == 63 ? 0 : a >> (y + 1));
    bb &= bb - 1;
  }
  return (inv & 1) ? -1 : 1;
}

std::vector<std::pair<Mono, int>> restrict_mono(const Context& ctx, Mask I, Mask J, Mono x) {
  if (J & ~I) throw InvalidArgument("restriction target must be a subset");
  const Layout& LI = ctx.layout(I);
  const Layout& LJ = ctx.layout(J);
  std::vector<std::pair<Mono, int>> terms{{LI.char_part(x), 1}};
  Mono rest = x & LI.block_gens;
  while (rest && !terms.empty()) {
    int g = __builtin_ctzll(rest);
    rest &= rest - 1;
    const Gen& gen = LI.gens[g];
    int lo = LI.offsets[gen.block], hi = lo + LI.sizes[gen.block];
    std::vector<int> image;
    for (int d = 0; d < LJ.r(); ++d) {
      if (LJ.offsets[d] < lo || LJ.offsets[d] >= hi) continue;
      int id = LJ.gen_id(d, gen.m, gen.iota);
      if (id >= 0) image.push_back(id);
    }
    std::vector<std::pair<Mono, int>> next;
    for (const auto& [M, s] : terms) {
      for (int b : image) {
        if ((M >> b) & 1u) continue;
        int sign = (popcount64(b == 63 ? 0 : M >> (b + 1)) & 1) ? -s : s;
        next.emplace_back(M | (Mono(1) << b), sign);
      }
    }
    terms = std::move(next);
  }
  return terms;
}

std::vector<PairSet> sigma_index(int nd, int k, int dK) {
  std::vector<int> idx;
  for (int m = 3; m <= 2 * nd - 1; m += 2)
    for (int iota = 0; iota < dK; ++iota) idx.push_back(pair_index(m, iota, dK));
  std::vector<PairSet> out;
  for (size_t sub = 0; sub < (size_t(1) << idx.size()); ++sub) {
    PairSet s = 0;
    for (size_t t = 0; t < idx.size(); ++t)
      if ((sub >> t) & 1u) s |= PairSet(1) << idx[t];
    if (pairs_weight(s, dK) == k) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int shuffle_sign(PairSet lambda, PairSet sub, int dK) {
  if (sub & ~lambda) throw InvalidArgument("shuffle_sign: Λ' must be a subset of Λ");
  auto order = pairs_in(lambda, dK);
  int inv = 0;
  for (size_t a = 0; a < order.size(); ++a) {
    bool a_in = (sub >> pair_index(order[a].m, order[a].iota, dK)) & 1u;
    if (a_in) continue;
    for (size_t b = a + 1; b < order.size(); ++b)
      if ((sub >> pair_index(order[b].m, order[b].iota, dK)) & 1u) ++inv;
  }
  return (inv & 1) ? -1 : 1;
}

std::vector<LeviClass> levi_basis(const Context& ctx, Mask I, int k) {
  const Layout& L = ctx.layout(I);
  std::vector<LeviClass> out;
  for (Mono x : ctx.monomials(I, k)) out.push_back({L.char_part(x), L.decode_blocks(x), x});
  return out;
}

std::vector<int> levi_dims(const Context& ctx, Mask I) {
  std::vector<int> out;
  for (int k = 0; k <= ctx.max_degree(I); ++k) out.push_back(int(ctx.monomials(I, k).size()));
  return out;
}

// ---- Chevalley–Eilenberg ----

namespace {

using IntMat = std::vector<std::vector<long>>;

}  // namespace

LieAlgebra sl_algebra(int m) {
  LieAlgebra g;
  g.name = "sl" + std::to_string(m);
  // basis: E_ab (a != b), then H_t = E_tt - E_{t+1,t+1}
  std::vector<IntMat> mats;
  std::vector<std::vector<int>> weights;
  std::map<std::pair<int, int>, int> eidx;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      IntMat M(m, std::vector<long>(m, 0));
      M[a][b] = 1;
      eidx[{a, b}] = int(mats.size());
      mats.push_back(M);
      std::vector<int> w(m, 0);
      w[a] += 1;
      w[b] -= 1;
      weights.push_back(w);
    }
  int hfirst = int(mats.size());
  for (int t = 0; t + 1 < m; ++t) {
    IntMat M(m, std::vector<long>(m, 0));
    M[t][t] = 1;
    M[t + 1][t + 1] = -1;
    mats.push_back(M);
    weights.push_back(std::vector<int>(m, 0));
  }
  g.dim = int(mats.size());
  g.bracket.assign(g.dim, {});
  g.weight = weights;
  for (int i = 0; i < g.dim; ++i)
    for (int j = i + 1; j < g.dim; ++j) {
      IntMat C(m, std::vector<long>(m, 0));
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          for (int c = 0; c < m; ++c) C[a][b] += mats[i][a][c] * mats[j][c][b] - mats[j][a][c] * mats[i][c][b];
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          if (a != b && C[a][b] != 0) g.bracket[eidx[{a, b}]].emplace_back(i, j, Q(C[a][b]));
      long acc = 0;
      for (int t = 0; t + 1 < m; ++t) {
        acc += C[t][t];
        if (acc != 0) g.bracket[hfirst + t].emplace_back(i, j, Q(acc));
      }
    }
  return g;
}

LieAlgebra abelian_algebra(int rank) {
  LieAlgebra g;
  g.name = "ab" + std::to_string(rank);
  g.dim = rank;
  g.bracket.assign(rank, {});
  g.weight.assign(rank, {});
  return g;
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  LieAlgebra g;
  g.name = a.name + "+" + b.name;
  g.dim = a.dim + b.dim;
  g.bracket = a.bracket;
  for (const auto& lst : b.bracket) {
    std::vector<std::tuple<int, int, Q>> shifted;
    for (const auto& [i, j, c] : lst) shifted.emplace_back(i + a.dim, j + a.dim, c);
    g.bracket.push_back(std::move(shifted));
  }
  size_t wa = a.weight.empty() ? 0 : a.weight[0].size();
  size_t wb = b.weight.empty() ? 0 : b.weight[0].size();
  for (const auto& w : a.weight) {
    auto x = w;
    x.resize(wa + wb, 0);
    g.weight.push_back(x);
  }
  for (const auto& w : b.weight) {
    std::vector<int> x(wa, 0);
    x.insert(x.end(), w.begin(), w.end());
    g.weight.push_back(x);
  }
  return g;
}

LieAlgebra levi_lie_algebra(int n, int dK, Mask I) {
  LieAlgebra g = abelian_algebra(0);
  for (int c = 0; c < dK; ++c)
    for (int nd : block_sizes(n, I))
      if (nd >= 2) g = direct_sum(g, sl_algebra(nd));
  g = direct_sum(g, abelian_algebra((num_blocks(n, I) - 1) * (dK + 1)));
  return g;
}

std::vector<int> ce_cohomology(const LieAlgebra& g, bool weight_zero) {
  if (g.dim > 26) throw InvalidArgument("CE oracle: algebra too large");
  size_t wdim = g.weight.empty() ? 0 : g.weight[0].size();
  std::vector<std::vector<uint32_t>> by_deg(g.dim + 1);
  for (uint32_t sub = 0; sub < (uint32_t(1) << g.dim); ++sub) {
    if (weight_zero && wdim) {
      std::vector<int> w(wdim, 0);
      for (int i = 0; i < g.dim; ++i)
        if ((sub >> i) & 1u)
          for (size_t t = 0; t < wdim; ++t) w[t] += g.weight[i][t];
      if (std::any_of(w.begin(), w.end(), [](int x) { return x != 0; })) continue;
    }
    by_deg[popcount(sub)].push_back(sub);
  }
  std::vector<std::map<uint32_t, int>> index(g.dim + 1);
  for (int q = 0; q <= g.dim; ++q)
    for (size_t t = 0; t < by_deg[q].size(); ++t) index[q][by_deg[q][t]] = int(t);
  std::vector<int> rank(g.dim + 1, 0);
  for (int q = 0; q < g.dim; ++q) {
    SparseMatrix D(int(by_deg[q + 1].size()), int(by_deg[q].size()));
    for (size_t col = 0; col < by_deg[q].size(); ++col) {
      uint32_t mono = by_deg[q][col];
      std::vector<std::pair<int, Q>> raw;
      int r = 0;
      for (int k = 0; k < g.dim; ++k) {
        if (!((mono >> k) & 1u)) continue;
        uint32_t prefix = mono & ((uint32_t(1) << k) - 1);
        uint32_t suffix = mono & ~((uint32_t(2) << k) - 1);
        for (const auto& [i, j, c] : g.bracket[k]) {
          uint32_t ij = (uint32_t(1) << i) | (uint32_t(1) << j);
          int s1 = wedge_sign(prefix, ij);
          if (!s1) continue;
          int s2 = wedge_sign(prefix | ij, suffix);
          if (!s2) continue;
          int sign = s1 * s2 * ((r & 1) ? -1 : 1);
          auto it = index[q + 1].find(prefix | ij | suffix);
          if (it == index[q + 1].end()) throw std::logic_error("CE: weight not preserved");
          raw.emplace_back(it->second, -c * sign);
        }
        ++r;
      }
      D.col[col] = normalize(std::move(raw));
    }
    rank[q] = rank_kernel_image(D, false).rank;
  }
  std::vector<int> dims(g.dim + 1);
  for (int q = 0; q <= g.dim; ++q) dims[q] = int(by_deg[q].size()) - rank[q] - (q ? rank[q - 1] : 0);
  while (dims.size() > 1 && dims.back() == 0) dims.pop_back();
  return dims;
}

}  // namespace steinext
