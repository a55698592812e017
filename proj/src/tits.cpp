#include "steinext/tits.hpp"

#include <algorithm>
#include <stdexcept>

namespace steinext {

Page::Page(const Context& ctx, Mask I0, Mask I1) : ctx_(&ctx), I0_(I0), I1_(I1) {
  check_subset(ctx.n(), I0);
  check_subset(ctx.n(), I1);
  if (I0 & ~I1) throw InvalidArgument("page requires I0 ⊆ I1");
  for (Mask I = I1;; I = (I - 1) & I1) {
    if ((I & I0) == I0) max_k_ = std::max(max_k_, ctx.max_degree(I));
    if (I == 0) break;
  }
}

std::vector<Mask> Page::columns(int ell) const {
  std::vector<Mask> out;
  Mask free = I1_ & ~I0_;
  for (Mask sub = free;; sub = (sub - 1) & free) {
    if (popcount(sub | I0_) == ell) out.push_back(sub | I0_);
    if (sub == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<Tuple>& Page::basis(int ell, int k) const {
  Key key{ell, k};
  auto it = basis_.find(key);
  if (it != basis_.end()) return it->second;
  std::vector<Tuple> b;
  if (valid(ell, k))
    for (Mask I : columns(ell))
      for (Mono x : ctx_->monomials(I, k)) b.push_back({I, x});
  auto& idx = index_[key];
  for (size_t t = 0; t < b.size(); ++t) idx[b[t]] = int(t);
  return basis_[key] = std::move(b);
}

int Page::index(int ell, int k, const Tuple& t) const {
  basis(ell, k);
  const auto& idx = index_.at({ell, k});
  auto it = idx.find(t);
  return it == idx.end() ? -1 : it->second;
}

SparseVec Page::d1_tuple(int ell, int k, const Tuple& t) const {
  if (ell <= ell_min()) return {};
  std::vector<std::pair<int, Q>> raw;
  for (int i : elements(t.I & ~I0_)) {
    int sgn = (m_count(t.I, i) & 1) ? -1 : 1;
    Mask J = t.I & ~bit(i);
    for (const auto& [y, s] : restrict_mono(*ctx_, t.I, J, t.mono)) {
      int row = index(ell - 1, k, {J, y});
      if (row < 0) throw std::logic_error("d1: restricted monomial missing from target basis");
      raw.emplace_back(row, Q(sgn * s));
    }
  }
  return normalize(std::move(raw));
}

const SparseMatrix& Page::d1(int ell, int k) const {
  Key key{ell, k};
  auto it = d1_.find(key);
  if (it != d1_.end()) return it->second;
  const auto& src = basis(ell, k);
  int rows = ell > ell_min() ? e1_dim(ell - 1, k) : 0;
  SparseMatrix M(rows, int(src.size()));
  if (ell > ell_min())
    for (size_t j = 0; j < src.size(); ++j) M.col[j] = d1_tuple(ell, k, src[j]);
  return d1_[key] = std::move(M);
}

SparseVec Page::apply_d1(int ell, int k, const SparseVec& x) const { return d1(ell, k).apply(x); }

const RankKernelImage& Page_rki(const Page& P, std::map<std::pair<int, int>, RankKernelImage>& cache, int ell, int k) {
  auto it = cache.find({ell, k});
  if (it != cache.end()) return it->second;
  return cache[{ell, k}] = rank_kernel_image(P.d1(ell, k), true);
}

int Page::d1_rank(int ell, int k) const {
  if (!valid(ell, k) || ell <= ell_min()) return 0;
  return Page_rki(*this, rki_, ell, k).rank;
}

const Subspace& Page::kernel(int ell, int k) const { return Page_rki(*this, rki_, ell, k).kernel; }

const Echelon& Page::image(int ell, int k) const {
  Key key{ell, k};
  auto it = image_.find(key);
  if (it != image_.end()) return *it->second;
  auto ech = std::make_unique<Echelon>(e1_dim(ell, k));
  if (valid(ell + 1, k))
    for (const auto& c : d1(ell + 1, k).col) ech->insert(c);
  return *(image_[key] = std::move(ech));
}

int Page::e2_dim(int ell, int k) const {
  if (!valid(ell, k)) return 0;
  return e1_dim(ell, k) - d1_rank(ell, k) - d1_rank(ell + 1, k);
}

std::vector<SparseVec> Page::e2_reps(int ell, int k) const {
  std::vector<SparseVec> out;
  if (!valid(ell, k)) return out;
  Echelon ech = image(ell, k);
  for (const auto& v : kernel(ell, k).basis)
    if (ech.insert(v)) out.push_back(v);
  return out;
}

int Page::e2_dim_filtered(int ell, int k, const std::function<bool(Mono)>& pred) const {
  if (!valid(ell, k)) return 0;
  auto rank_on = [&](int l) {
    if (!valid(l, k) || l <= ell_min()) return 0;
    const auto& src = basis(l, k);
    const auto& M = d1(l, k);
    Echelon ech(M.rows);
    for (size_t j = 0; j < src.size(); ++j)
      if (pred(ctx_->layout(src[j].I).char_part(src[j].mono))) ech.insert(M.col[j]);
    return ech.rank();
  };
  int count = 0;
  for (const auto& t : basis(ell, k))
    if (pred(ctx_->layout(t.I).char_part(t.mono))) ++count;
  return count - rank_on(ell) - rank_on(ell + 1);
}

bool Page::d1_squared_zero(int ell, int k) const {
  if (ell - 1 <= ell_min()) return true;
  return d1(ell - 1, k).compose(d1(ell, k)).is_zero();
}

Page& page(int n, int dK, Mask I0, Mask I1) {
  static std::map<std::tuple<int, int, Mask, Mask>, std::unique_ptr<Page>> cache;
  auto& slot = cache[{n, dK, I0, I1}];
  if (!slot) slot = std::make_unique<Page>(context(n, dK), I0, I1);
  return *slot;
}

void clear_page_cache() {
  // pages are small; the cache lives for the process. Kept for API symmetry.
}

std::pair<long, long> euler_row(const Page& P, int k) {
  long e1 = 0, e2 = 0;
  for (int ell = P.ell_min(); ell <= P.ell_max(); ++ell) {
    long s = (ell & 1) ? -1 : 1;
    e1 += s * P.e1_dim(ell, k);
    e2 += s * P.e2_dim(ell, k);
  }
  return {e1, e2};
}

std::map<Mono, int> e2_split_by_val(const Page& P, int ell, int k) {
  std::map<Mono, int> out;
  const Context& ctx = P.ctx();
  std::vector<Mono> vals;
  for (const auto& t : P.basis(ell, k)) vals.push_back(ctx.val_part(ctx.layout(t.I).char_part(t.mono)));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  for (Mono v : vals) {
    int d = P.e2_dim_filtered(ell, k, [&](Mono chars) { return ctx.val_part(chars) == v; });
    if (d) out[v] = d;
  }
  return out;
}

// ---- degeneration ----

namespace {

struct Gl {
  int n, dK, dim;
  // global basis: per copy c, E_ab (a != b) then H_a (a < n)
  std::vector<int> copy, a, b;  // b = -1 for H_a
  std::vector<std::vector<std::tuple<int, int, int>>> bracket;  // per target k: (i, j, c), i < j
};

Gl make_gl(int n, int dK) {
  Gl g{n, dK, 0, {}, {}, {}, {}};
  for (int c = 0; c < dK; ++c) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b) {
          g.copy.push_back(c);
          g.a.push_back(a);
          g.b.push_back(b);
        }
    for (int a = 0; a + 1 < n; ++a) {
      g.copy.push_back(c);
      g.a.push_back(a);
      g.b.push_back(-1);
    }
  }
  g.dim = int(g.copy.size());
  g.bracket.assign(g.dim, {});
  std::map<std::tuple<int, int, int>, int> idx;
  for (int t = 0; t < g.dim; ++t) idx[{g.copy[t], g.a[t], g.b[t]}] = t;
  auto mat = [&](int t) {
    std::vector<std::vector<int>> M(n, std::vector<int>(n, 0));
    if (g.b[t] < 0)
      M[g.a[t]][g.a[t]] = 1;
    else
      M[g.a[t]][g.b[t]] = 1;
    return M;
  };
  for (int i = 0; i < g.dim; ++i)
    for (int j = i + 1; j < g.dim; ++j) {
      if (g.copy[i] != g.copy[j]) continue;
      auto A = mat(i), B = mat(j);
      std::vector<std::vector<int>> C(n, std::vector<int>(n, 0));
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z) C[x][y] += A[x][z] * B[z][y] - B[x][z] * A[z][y];
      int c = g.copy[i];
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (x != y && C[x][y]) g.bracket[idx[{c, x, y}]].emplace_back(i, j, C[x][y]);
      for (int x = 0; x + 1 < n; ++x) {
        int coef = C[x][x] - C[n - 1][n - 1];
        if (coef) g.bracket[idx[{c, x, -1}]].emplace_back(i, j, coef);
      }
    }
  return g;
}

uint32_t sub_basis(const Gl& g, Mask I) {
  uint32_t s = 0;
  for (int t = 0; t < g.dim; ++t) {
    if (g.b[t] < 0 || block_of_position(g.n, I, g.a[t] + 1) == block_of_position(g.n, I, g.b[t] + 1)) s |= uint32_t(1) << t;
  }
  return s;
}

bool weight_zero(const Gl& g, uint32_t mono) {
  std::vector<int> w(g.dK * g.n, 0);
  for (int t = 0; t < g.dim; ++t) {
    if (!((mono >> t) & 1u) || g.b[t] < 0) continue;
    w[g.copy[t] * g.n + g.a[t]] += 1;
    w[g.copy[t] * g.n + g.b[t]] -= 1;
  }
  return std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
}

}  // namespace

DegenerationReport degeneration_check(int n, int dK, Mask I0, Mask I1) {
  const Context& ctx = context(n, dK);
  check_subset(n, I0);
  check_subset(n, I1);
  if (I0 & ~I1) throw InvalidArgument("degeneration_check requires I0 ⊆ I1");
  Gl g = make_gl(n, dK);
  if (g.dim > 26) throw InvalidArgument("degeneration_check: Lie algebra too large");
  uint32_t top = sub_basis(g, I1);
  std::vector<uint32_t> wz;
  for (uint32_t sub = top;; sub = (sub - 1) & top) {
    if (weight_zero(g, sub)) wz.push_back(sub);
    if (sub == 0) break;
  }
  std::sort(wz.begin(), wz.end());
  const Page& P = page(n, dK, I0, I1);

  DegenerationReport rep;
  Mask full = full_mask(n);
  // v∞ ranges over val sets at positions outside I0.
  Mask vfree = full & ~I0;
  for (Mask vpos = vfree;; vpos = (vpos - 1) & vfree) {
    Mask Imax = I1 & ~vpos;
    // cells (I, mono) with I0 ⊆ I ⊆ Imax, mono ⊆ l̄_I weight zero; total degree t = q - ℓ
    std::vector<Mask> cols;
    for (Mask sub = Imax & ~I0;; sub = (sub - 1) & (Imax & ~I0)) {
      cols.push_back(sub | I0);
      if (sub == 0) break;
    }
    std::map<int, std::vector<std::pair<Mask, uint32_t>>> cells;
    std::map<std::pair<Mask, uint32_t>, int> where;
    for (Mask I : cols) {
      uint32_t S = sub_basis(g, I);
      for (uint32_t m : wz)
        if ((m & ~S) == 0) {
          int t = popcount(m) - popcount(I);
          where[{I, m}] = int(cells[t].size());
          cells[t].push_back({I, m});
        }
    }
    std::map<int, int> rank;
    for (auto& [t, src] : cells) {
      auto it = cells.find(t + 1);
      if (it == cells.end()) continue;
      SparseMatrix M(int(it->second.size()), int(src.size()));
      for (size_t col = 0; col < src.size(); ++col) {
        auto [I, m] = src[col];
        std::vector<std::pair<int, Q>> raw;
        int ell = popcount(I);
        // δ: restriction to I ∖ {i}
        for (int i : elements(I & ~I0)) {
          Mask J = I & ~bit(i);
          if ((m & ~sub_basis(g, J)) != 0) continue;
          int sgn = (m_count(I, i) & 1) ? -1 : 1;
          raw.emplace_back(where.at({J, m}), Q(sgn));
        }
        // (-1)^ℓ times the CE differential inside l̄_I
        uint32_t S = sub_basis(g, I);
        int r = 0;
        for (int k = 0; k < g.dim; ++k) {
          if (!((m >> k) & 1u)) continue;
          uint32_t prefix = m & ((uint32_t(1) << k) - 1);
          uint32_t suffix = m & ~((uint32_t(2) << k) - 1);
          for (const auto& [i, j, c] : g.bracket[k]) {
            if (!((S >> i) & 1u) || !((S >> j) & 1u)) continue;
            uint32_t ij = (uint32_t(1) << i) | (uint32_t(1) << j);
            int s1 = wedge_sign(prefix, ij);
            if (!s1) continue;
            int s2 = wedge_sign(prefix | ij, suffix);
            if (!s2) continue;
            int sign = s1 * s2 * ((r & 1) ? -1 : 1) * ((ell & 1) ? -1 : 1);
            raw.emplace_back(where.at({I, prefix | ij | suffix}), Q(-c * sign));
          }
          ++r;
        }
        M.col[col] = normalize(std::move(raw));
      }
      rank[t] = rank_kernel_image(M, false).rank;
    }
    int nv = popcount(vpos);
    Mono vchars = 0;
    for (int p : elements(vpos)) vchars |= ctx.char_bit(p, 0);
    for (auto& [t, src] : cells) {
      int h = int(src.size()) - rank[t] - (rank.count(t - 1) ? rank[t - 1] : 0);
      int e2 = 0;
      for (int ell = P.ell_min(); ell <= P.ell_max(); ++ell) {
        int k = t + ell + nv;
        if (!P.valid(ell, k)) continue;
        e2 += P.e2_dim_filtered(ell, k, [&](Mono chars) { return ctx.val_part(chars) == vchars; });
      }
      rep.table[vpos][t] = {h, e2};
      if (h != e2) rep.ok = false;
    }
    // E_2 contributions in degrees with no cells at all
    for (int ell = P.ell_min(); ell <= P.ell_max(); ++ell)
      for (int k = 0; k <= P.max_k(); ++k) {
        int t = k - ell - nv;
        if (cells.count(t)) continue;
        int e2 = P.e2_dim_filtered(ell, k, [&](Mono chars) { return ctx.val_part(chars) == vchars; });
        if (e2) {
          rep.table[vpos][t].second += e2;
          rep.ok = false;
        }
      }
    if (vpos == 0) break;
  }
  return rep;
}

}  // namespace steinext
