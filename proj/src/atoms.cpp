#include "steinext/atoms.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace steinext {

TupleData decode(const Context& ctx, const Tuple& t) {
  const Layout& L = ctx.layout(t.I);
  return {t.I, L.char_part(t.mono), L.decode_blocks(t.mono)};
}

Tuple encode(const Context& ctx, const TupleData& d) { return {d.I, ctx.layout(d.I).encode(d.chars, d.blocks)}; }

int tuple_degree(const Context& ctx, const Tuple& t) { return ctx.layout(t.I).degree(t.mono); }

Mask I_v(const Context& ctx, Mono chars) { return full_mask(ctx.n()) & ~ctx.char_positions(chars); }

int epsilon(Mask I) {
  int s = 0;
  for (int i : elements(I)) s += i;
  return (s & 1) ? -1 : 1;
}

int e_theta(const Context& ctx, const Tuple& t) {
  int e = 0;
  for (PairSet s : decode(ctx, t).blocks) e += max_m(s, ctx.dK());
  return e;
}

std::optional<Tuple> p_plus(const Context& ctx, const Tuple& t, int i) {
  int n = ctx.n();
  if (i < 1 || i >= n || has(t.I, i)) return std::nullopt;
  TupleData d = decode(ctx, t);
  if (has(ctx.char_positions(d.chars), i)) return std::nullopt;
  int b = block_of_position(n, t.I, i);
  if (d.blocks[b] & d.blocks[b + 1]) return std::nullopt;
  d.blocks[b] |= d.blocks[b + 1];
  d.blocks.erase(d.blocks.begin() + b + 1);
  d.I |= bit(i);
  return encode(ctx, d);
}

std::optional<Tuple> p_minus(const Context& ctx, const Tuple& t, int i) {
  int n = ctx.n();
  if (i < 1 || i >= n || !has(t.I, i)) return std::nullopt;
  TupleData d = decode(ctx, t);
  const Layout& L = ctx.layout(t.I);
  int b = block_of_position(n, t.I, i);
  int left = i - L.offsets[b];
  if (max_m(d.blocks[b], ctx.dK()) > 2 * left - 1) return std::nullopt;
  d.blocks.insert(d.blocks.begin() + b + 1, PairSet(0));
  d.I &= ~bit(i);
  return encode(ctx, d);
}

std::vector<int> r_seq(const PagePair& pp, const Tuple& t) {
  Mono chars = pp.ctx->layout(t.I).char_part(t.mono);
  return r_sequence(pp.ctx->n(), I_v(*pp.ctx, chars) & pp.I1, t.I);
}

Mask block_roots(int n, Mask I, int d) {
  auto off = block_offsets(n, I);
  auto sz = block_sizes(n, I);
  Mask m = 0;
  for (int i = off[d] + 1; i < off[d] + sz[d]; ++i) m |= bit(i);
  return m;
}

std::vector<Improvement> improvements(const PagePair& pp, const Tuple& t, int d) {
  const Context& ctx = *pp.ctx;
  const Layout& L = ctx.layout(t.I);
  std::vector<Improvement> out;
  if (d < 0 || d >= L.r()) return out;
  int ip = L.offsets[d] + L.sizes[d];
  Mono chars = L.char_part(t.mono);
  Mask allowed = I_v(ctx, chars) & pp.I1 & ~t.I;
  if (ip >= ctx.n() || !has(allowed, ip)) return out;
  for (int i = L.offsets[d] + 1; i < ip; ++i) {
    if (has(pp.I0, i)) continue;
    auto a = p_minus(ctx, t, i);
    if (!a) continue;
    auto b = p_plus(ctx, *a, ip);
    if (b) out.push_back({d, i, ip, *b});
  }
  return out;
}

std::vector<Improvement> all_improvements(const PagePair& pp, const Tuple& t) {
  std::vector<Improvement> out;
  int r = num_blocks(pp.ctx->n(), t.I);
  for (int d = 0; d < r; ++d) {
    auto v = improvements(pp, t, d);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

BlockSplit block_split(const PagePair& pp, Mask I, int d) {
  BlockSplit s;
  Mask R = block_roots(pp.ctx->n(), I, d);
  if (!(R & pp.I0)) return s;
  s.meets_I0 = true;
  Interval last{0, -1};
  for (const auto& J : maximal_intervals(pp.I0))
    if ((J.mask() & ~R) == 0) last = J;
  for (int i : elements(R)) {
    if (i < last.lo) s.minus |= bit(i);
    if (i > last.hi) s.plus |= bit(i);
  }
  return s;
}

namespace {

bool has_pair_with_m(PairSet s, int m, int dK) {
  for (const auto& pr : pairs_in(s, dK))
    if (pr.m == m) return true;
  return false;
}

bool single_pair_with_m(PairSet s, int m, int dK) {
  auto v = pairs_in(s, dK);
  return v.size() == 1 && v[0].m == m;
}

}  // namespace

bool maximal_bullets(const PagePair& pp, const Tuple& t) {
  const Context& ctx = *pp.ctx;
  int dK = ctx.dK();
  TupleData td = decode(ctx, t);
  const Layout& L = ctx.layout(t.I);
  auto r = r_seq(pp, t);
  int R = int(r.size()) - 1;
  std::set<int> starts;  // 0-based indices allowed to be empty
  for (int s = 1; s <= R; ++s) starts.insert(r[s - 1]);
  // An empty block must open its segment and carry no roots outside I_0.
  for (int d = 0; d < L.r(); ++d)
    if (td.blocks[d] == 0 && (!starts.count(d) || (block_roots(ctx.n(), t.I, d) & ~pp.I0))) return false;
  for (int s = 1; s <= R; ++s) {
    int D = r[s] - 1;
    PairSet lam = td.blocks[D];
    if (!lam) continue;
    int nD = L.sizes[D];
    bool top = has_pair_with_m(lam, 2 * nD - 1, dK);
    BlockSplit sp = block_split(pp, t.I, D);
    if (sp.meets_I0) {
      if (top) continue;
      if (sp.plus) return false;
      if (max_m(lam, dK) < 2 * popcount(sp.minus) + 1) return false;
    } else if (!top) {
      return false;
    }
  }
  return true;
}

bool is_maximally_atomic(const PagePair& pp, const Tuple& t) {
  return all_improvements(pp, t).empty() && maximal_bullets(pp, t);
}

bool is_standard(const PagePair& pp, const Tuple& t) {
  const Context& ctx = *pp.ctx;
  TupleData td = decode(ctx, t);
  const Layout& L = ctx.layout(t.I);
  Mask allowed = I_v(ctx, td.chars) & pp.I1 & ~t.I;
  for (int d = 1; d < L.r(); ++d) {
    if (!has(allowed, L.offsets[d])) continue;
    if (td.blocks[d]) continue;
    bool later = true;
    for (int e = d + 1; e < L.r(); ++e)
      if (!td.blocks[e]) later = false;
    if (!later) continue;
    if (block_roots(ctx.n(), t.I, d) & ~pp.I0) continue;
    bool improvable = false;
    for (int e = d; e < L.r() && !improvable; ++e)
      if (!improvements(pp, t, e).empty()) improvable = true;
    if (!improvable) return true;
  }
  return false;
}

int bottom_row(const Page& P, int ell) { return ell + popcount(P.I1()) - 2 * popcount(P.I0()); }

const std::vector<AtomClass>& atom_classes(const Page& P, int ell, int k) {
  static std::map<std::tuple<const Page*, int, int>, std::vector<AtomClass>> cache;
  auto key = std::make_tuple(&P, ell, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<AtomClass> out;
  const Context& ctx = P.ctx();
  PagePair pp(P);
  const auto& basis = P.basis(ell, k);
  std::map<std::pair<Mono, std::vector<PairSet>>, std::vector<int>> groups;
  for (size_t j = 0; j < basis.size(); ++j) {
    TupleData d = decode(ctx, basis[j]);
    groups[{d.chars, d.blocks}].push_back(int(j));
  }
  for (const auto& [key2, nodes] : groups) {
    std::map<int, std::vector<int>> below;  // target -> sources (inverse improvements)
    std::vector<int> maxima;
    for (int j : nodes) {
      auto imps = all_improvements(pp, basis[j]);
      for (const auto& im : imps) {
        int tgt = P.index(ell, k, im.result);
        if (tgt < 0) throw std::logic_error("improvement left the page basis");
        below[tgt].push_back(j);
      }
      if (imps.empty() && maximal_bullets(pp, basis[j])) maxima.push_back(j);
    }
    std::map<int, int> owner;
    for (int m : maxima) {
      AtomClass c;
      c.ell = ell;
      c.k = k;
      c.max = basis[m];
      std::set<int> seen{m};
      std::deque<int> q{m};
      while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int y : below[x])
          if (seen.insert(y).second) q.push_back(y);
      }
      std::vector<std::pair<int, Q>> raw;
      for (int x : seen) {
        if (owner.count(x))
          throw TheoremViolation("atom classes overlap at column " + format_set(basis[x].I));
        owner[x] = m;
        c.members.push_back(basis[x]);
        raw.emplace_back(x, Q(epsilon(basis[x].I)));
      }
      std::sort(c.members.begin(), c.members.end());
      c.vec = normalize(std::move(raw));
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [](const AtomClass& a, const AtomClass& b) { return a.max < b.max; });
  return cache[key] = std::move(out);
}

std::vector<AtomClass> enumerate_psi(const Page& P, int ell, int k) {
  int b = bottom_row(P, ell);
  if (k != b && k != b + 1)
    throw InvalidArgument("enumerate_psi: row " + std::to_string(k) + " is not one of the two bottom rows");
  if (!P.valid(ell, k)) return {};
  const auto& all = atom_classes(P, ell, k);
  if (k == b) return all;
  std::vector<AtomClass> out;
  for (const auto& c : all)
    if (P.apply_d1(ell, k, c.vec).empty()) out.push_back(c);
  return out;
}

DiamondReport diamond_quasi_iso_check(const Page& P, int k) {
  DiamondReport rep;
  int lo = P.ell_min(), hi = P.ell_max();
  std::vector<int> rank_sub(hi - lo + 2, 0);  // rank of d_1 leaving column ℓ (index ℓ - lo)
  for (int ell = lo; ell <= hi; ++ell) {
    if (ell == lo) continue;
    const auto& src = atom_classes(P, ell, k);
    const auto& tgt = atom_classes(P, ell - 1, k);
    Echelon ech(P.e1_dim(ell - 1, k));
    for (size_t t = 0; t < tgt.size(); ++t) ech.insert(tgt[t].vec, int(t));
    Echelon img(int(tgt.size()));
    for (const auto& c : src) {
      auto red = ech.reduce(P.apply_d1(ell, k, c.vec));
      if (!red.residual.empty()) rep.closed = false;
      img.insert(red.combo);
    }
    rank_sub[ell - lo] = img.rank();
  }
  for (int ell = lo; ell <= hi; ++ell) {
    int nsub = int(atom_classes(P, ell, k).size());
    int next = ell + 1 <= hi ? rank_sub[ell + 1 - lo] : 0;
    rep.sub_dims.push_back(nsub - rank_sub[ell - lo] - next);
    rep.full_dims.push_back(P.e2_dim(ell, k));
  }
  rep.same_cohomology = rep.closed && rep.sub_dims == rep.full_dims;
  return rep;
}

bool low_deg_nonzero_predicate(const PagePair& pp, const Tuple& max) {
  const Context& ctx = *pp.ctx;
  TupleData td = decode(ctx, max);
  if ((I_v(ctx, td.chars) | pp.I1) != full_mask(ctx.n())) return false;
  auto r = r_seq(pp, max);
  int R = int(r.size()) - 1;
  int found = -1, count = 0;
  for (int s = 1; s <= R; ++s)
    if (td.blocks[r[s - 1]]) {
      ++count;
      found = s;
    }
  if (count != 1) return false;
  for (int d = r[found - 1]; d < r[found]; ++d)
    if (block_roots(ctx.n(), max.I, d) & pp.I0) return true;
  return false;
}

// ---- twists ----

bool saturated(const PagePair& pp, const Tuple& t, int s0) {
  const Context& ctx = *pp.ctx;
  int dK = ctx.dK();
  auto r = r_seq(pp, t);
  if (s0 < 1 || s0 >= int(r.size())) return false;
  TupleData td = decode(ctx, t);
  const Layout& L = ctx.layout(t.I);
  int a = r[s0 - 1];  // 0-based first block of the segment
  int b = r[s0] - 1;  // 0-based last block
  if (block_roots(ctx.n(), t.I, a) & ~pp.I0) return false;
  if (td.blocks[a]) return false;
  for (int d = a + 1; d <= b; ++d) {
    BlockSplit sp = block_split(pp, t.I, d);
    if (!sp.meets_I0) {
      if (!single_pair_with_m(td.blocks[d], 2 * L.sizes[d] - 1, dK)) return false;
    } else {
      if (sp.plus || !sp.minus) return false;
      if (!single_pair_with_m(td.blocks[d], 2 * popcount(sp.minus) + 1, dK)) return false;
    }
  }
  return true;
}

Tuple twist(const PagePair& pp, const Tuple& t, int s0, int d0) {
  const Context& ctx = *pp.ctx;
  if (!saturated(pp, t, s0)) throw InvalidArgument("twist: saturation condition fails");
  auto r = r_seq(pp, t);
  int a = r[s0 - 1] + 1, b = r[s0];  // 1-based block range
  if (d0 < a || d0 > b) throw InvalidArgument("twist: d0 outside the segment");
  const Layout& L = ctx.layout(t.I);
  auto i_d = [&](int d) { return L.offsets[d - 1] + L.sizes[d - 1]; };
  auto ip_d = [&](int d) {
    int best = 0;
    for (int i : elements(t.I & ~pp.I0))
      if (i < i_d(d)) best = std::max(best, i);
    return best;
  };
  Tuple cur = t;
  for (int d = a; d < d0; ++d) {
    auto x = p_plus(ctx, cur, i_d(d));
    if (!x) throw TheoremViolation("twist: gluing step undefined");
    auto y = p_minus(ctx, *x, ip_d(d + 1));
    if (!y) throw TheoremViolation("twist: splitting step undefined");
    cur = *y;
  }
  TupleData orig = decode(ctx, t), tw = decode(ctx, cur);
  for (int d = a; d <= b; ++d) {
    PairSet expect = d < d0 ? orig.blocks[d] : (d == d0 ? 0 : orig.blocks[d - 1]);
    if (tw.blocks[d - 1] != expect) throw TheoremViolation("twist: block labels not shifted as expected");
  }
  return cur;
}

TwistedClass twisted_class(const Page& P, int ell, int k, const Tuple& max, int s0, int d0) {
  const Context& ctx = P.ctx();
  PagePair pp(P);
  TwistedClass tc;
  tc.top = twist(pp, max, s0, d0);
  TupleData top = decode(ctx, tc.top);
  const Layout& Lt = ctx.layout(tc.top.I);
  int bound_b = Lt.offsets[d0 - 1] + Lt.sizes[d0 - 1];
  int bound_c = Lt.offsets[d0 - 1];
  const auto& basis = P.basis(ell, k);
  std::vector<int> nodes;
  for (size_t j = 0; j < basis.size(); ++j) {
    TupleData d = decode(ctx, basis[j]);
    if (d.chars == top.chars && d.blocks == top.blocks) nodes.push_back(int(j));
  }
  std::map<int, std::vector<int>> preds;  // y -> x with a twisted improvement x -> y
  for (int x : nodes) {
    auto r = r_seq(pp, basis[x]);
    int lo = r[s0 - 1], hi = r[s0];
    for (const auto& im : all_improvements(pp, basis[x])) {
      int y = P.index(ell, k, im.result);
      int lev = im.level + 1;
      if (lev <= lo || lev >= hi + 1) {
        preds[y].push_back(x);
        continue;
      }
      if (lev >= d0 && im.i >= bound_b) preds[y].push_back(x);
      if (lev <= d0 - 1 && im.ip <= bound_c) preds[x].push_back(y);
    }
  }
  int topi = P.index(ell, k, tc.top);
  if (topi < 0) throw std::logic_error("twisted tuple not in the page basis");
  std::set<int> seen{topi};
  std::deque<int> q{topi};
  while (!q.empty()) {
    int y = q.front();
    q.pop_front();
    for (int x : preds[y])
      if (seen.insert(x).second) q.push_back(x);
  }
  std::vector<std::pair<int, Q>> raw;
  for (int x : seen) {
    tc.members.push_back(basis[x]);
    raw.emplace_back(x, Q(epsilon(basis[x].I)));
  }
  std::sort(tc.members.begin(), tc.members.end());
  tc.vec = normalize(std::move(raw));

  // membership criterion on tuples agreeing with Θ outside the segment
  auto rmax = r_seq(pp, max);
  const Layout& Lm = ctx.layout(max.I);
  int lo = rmax[s0 - 1], hi = rmax[s0];
  auto prefix = [](const Layout& L, int d) { return d == 0 ? 0 : L.offsets[d - 1] + L.sizes[d - 1]; };
  for (int x : nodes) {
    if (r_seq(pp, basis[x]) != rmax) continue;
    const Layout& Lx = ctx.layout(basis[x].I);
    bool same = true;
    for (int d = 1; d <= Lx.r(); ++d) {
      if (d > lo && d <= hi) continue;
      if (Lx.offsets[d - 1] != Lm.offsets[d - 1] || Lx.sizes[d - 1] != Lm.sizes[d - 1]) same = false;
    }
    if (!same) continue;
    bool pred = true;
    if (d0 >= lo + 2 && Lx.sizes[lo] > Lt.sizes[lo]) pred = false;
    if (d0 <= hi - 1 && Lx.sizes[hi - 1] > Lt.sizes[hi - 1]) pred = false;
    if (prefix(Lx, d0 - 1) > prefix(Lt, d0 - 1)) pred = false;
    if (prefix(Lx, d0) < prefix(Lt, d0)) pred = false;
    ++tc.criterion_checked;
    if (pred != bool(seen.count(x))) ++tc.criterion_mismatch;
  }
  return tc;
}

}  // namespace steinext
