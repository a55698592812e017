#include "steinext/ext.hpp"

#include <algorithm>
#include <sstream>

namespace steinext {

long ps_ext_dim(int n, int dK, Mask I, Mask Ip, int k) {
  check_subset(n, I);
  check_subset(n, Ip);
  if (I & ~Ip) return 0;
  auto dims = levi_dims(context(n, dK), I);
  return (k >= 0 && k < int(dims.size())) ? dims[k] : 0;
}

int h_index(Mask I0, Mask I2) { return popcount(I0 & ~I2) + popcount(I2 & ~I0); }

ExtProfile ext_profile(int n, int dK, Mask I0, Mask I1, Mask I2, Mask I3, ExtGrading grading) {
  for (Mask m : {I0, I1, I2, I3}) check_subset(n, m);
  if (I0 & ~I1) throw InvalidArgument("ext_profile: need I0 ⊆ I1");
  if (I2 & ~I3) throw InvalidArgument("ext_profile: need I2 ⊆ I3");
  Mask F = full_mask(n);
  if (grading == ExtGrading::representation && (I1 != F || I3 != F))
    throw InvalidArgument("ext_profile: representation grading needs I1 = I3 = Δ");
  ExtProfile prof;
  prof.n = n;
  prof.dK = dK;
  prof.I0 = I0;
  prof.I1 = I1;
  prof.I2 = I2;
  prof.I3 = I3;
  prof.grading = grading;
  prof.I0s = I2 | (I1 & ~I0);
  prof.I1s = I1 & I3;
  int shift = grading == ExtGrading::representation ? popcount(I2) - popcount(I0) : 0;
  int h_low = popcount(prof.I1s) - 2 * popcount(prof.I0s) + popcount(I1);
  prof.h_min = h_low + shift;
  if ((I2 & ~I1) || (I1 & ~(I0 | I3))) {
    prof.vanishes = true;
    prof.h_max = prof.h_min - 1;
    return prof;
  }
  const Page& P = page(n, dK, prof.I0s, prof.I1s);
  for (int ell = P.ell_min(); ell <= P.ell_max(); ++ell)
    for (int k = 0; k <= P.max_k(); ++k) {
      int d = P.e2_dim(ell, k);
      if (!d) continue;
      int h = k - ell + popcount(I1) + shift;
      if (h < prof.h_min) throw TheoremViolation("ext_profile: nonzero Ext below the bottom degree");
      prof.dims[h] += d;
    }
  prof.h_max = prof.dims.empty() ? prof.h_min - 1 : prof.dims.rbegin()->first;
  for (int h : {prof.h_min, prof.h_min + 1}) {
    auto& g = prof.graded[h];
    auto& labels = prof.psi[h];
    for (int ell = P.ell_min(); ell <= P.ell_max(); ++ell) {
      int k = ext_row(I1, ell, h - shift);
      std::vector<Tuple> lab;
      if (P.valid(ell, k))
        for (const auto& cl : enumerate_psi(P, ell, k)) lab.push_back(cl.max);
      int d = P.valid(ell, k) ? P.e2_dim(ell, k) : 0;
      if (int(lab.size()) != d) throw TheoremViolation("ext_profile: Ψ count differs from E2 dimension");
      g.push_back(d);
      labels.push_back(std::move(lab));
    }
  }
  return prof;
}

SteinbergExt steinberg_ext_dims(int n, int dK, Mask I0, Mask I2) {
  Mask F = full_mask(n);
  ExtProfile p = ext_profile(n, dK, I0, F, I2, F, ExtGrading::representation);
  SteinbergExt s;
  s.h_min = p.h_min;
  if (s.h_min != h_index(I0, I2)) throw TheoremViolation("steinberg_ext_dims: bottom degree differs from h_{I0,I2}");
  s.dim_E = p.dim(p.h_min);
  s.dim_E1 = p.dim(p.h_min + 1);
  s.graded_E = p.graded[p.h_min];
  s.graded_E1 = p.graded[p.h_min + 1];
  s.ell_min = popcount(p.I0s);
  return s;
}

// ---- shapes ----

void ComplexShape::validate() const {
  if (parts.size() != lo.size() || parts.size() != hi.size())
    throw InvalidArgument("shape: parts and windows differ in length");
  Mask seen = 0;
  for (size_t r = 0; r < parts.size(); ++r) {
    check_subset(n, parts[r]);
    if (seen & parts[r]) throw InvalidArgument("shape: parts overlap");
    seen |= parts[r];
    if (lo[r] < 0 || lo[r] > hi[r] || hi[r] > popcount(parts[r]))
      throw InvalidArgument("shape: window outside [0, #part]");
  }
  if (seen != full_mask(n)) throw InvalidArgument("shape: parts do not cover Δ_n");
}

ComplexShape tits_shape(int n, Mask I0, Mask I1) {
  ComplexShape P;
  P.n = n;
  Mask rest = full_mask(n) & ~I1;
  P.parts = {I0, I1 & ~I0, rest};
  P.lo = {popcount(I0), 0, 0};
  P.hi = {popcount(I0), popcount(I1 & ~I0), 0};
  return P;
}

long c_binom(int l, int lp, int lpp) {
  if (!(lpp <= lp && lp <= l)) return 0;
  return binom(l - lpp, lp - lpp);
}

std::vector<std::pair<int, long>> part_cohomology(int N, int a, int lo, int hi) {
  int lmin = std::max(lo, a);
  if (lmin > hi) return {};
  // subsets of the N - a free roots with sizes in [lmin - a, hi - a]
  int M = N - a, p = lmin - a, q = hi - a;
  if (p == q) return {{hi, long(binom(M, q))}};
  std::vector<std::pair<int, long>> out;
  long bottom = p == 0 ? 0 : binom(M - 1, p - 1);
  long top = q == M ? 0 : binom(M - 1, q);
  if (bottom) out.emplace_back(lmin, bottom);
  if (top) out.emplace_back(hi, top);
  return out;
}

std::vector<long> shape_cohomology(const ComplexShape& P, Mask I) {
  P.validate();
  std::vector<long> acc(P.n, 0);
  acc[0] = 1;
  for (size_t r = 0; r < P.parts.size(); ++r) {
    auto pc = part_cohomology(popcount(P.parts[r]), popcount(I & P.parts[r]), P.lo[r], P.hi[r]);
    std::vector<long> next(P.n, 0);
    for (int l = 0; l < P.n; ++l)
      if (acc[l])
        for (auto [lr, d] : pc)
          if (l + lr < P.n) next[l + lr] += acc[l] * d;
    acc = std::move(next);
  }
  return acc;
}

std::vector<long> shape_cohomology_direct(const ComplexShape& P, Mask I) {
  P.validate();
  int n = P.n;
  Mask F = full_mask(n);
  std::vector<std::vector<Mask>> cols(n);
  for (Mask J = 0; J <= F; ++J) {
    if (I & ~J) continue;
    bool ok = true;
    for (size_t r = 0; r < P.parts.size() && ok; ++r) {
      int c = popcount(J & P.parts[r]);
      ok = c >= P.lo[r] && c <= P.hi[r];
    }
    if (ok) cols[popcount(J)].push_back(J);
  }
  // d: column ℓ -> column ℓ-1, J ↦ Σ_{i ∈ J∖I} (-1)^{m(J,i)} (J ∖ {i})
  std::vector<int> rank(n + 1, 0);
  for (int l = 1; l < n; ++l) {
    if (cols[l].empty() || cols[l - 1].empty()) continue;
    std::map<Mask, int> idx;
    for (size_t j = 0; j < cols[l - 1].size(); ++j) idx[cols[l - 1][j]] = int(j);
    std::vector<std::vector<Q>> rows;
    for (Mask J : cols[l]) {
      std::vector<Q> row(cols[l - 1].size(), Q(0));
      for (int i : elements(J & ~I)) {
        auto it = idx.find(J & ~bit(i));
        if (it == idx.end()) continue;
        int m = popcount(J & (bit(i) - 1));
        row[it->second] += (m % 2) ? -1 : 1;
      }
      rows.push_back(std::move(row));
    }
    rank[l] = dense_rank(std::move(rows));
  }
  std::vector<long> out(n, 0);
  for (int l = 0; l < n; ++l) out[l] = long(cols[l].size()) - rank[l] - rank[l + 1];
  return out;
}

std::string format_tuple(const Context& ctx, const Tuple& t) {
  TupleData d = decode(ctx, t);
  const Layout& L = ctx.layout(t.I);
  std::ostringstream os;
  os << "(v={";
  bool first = true;
  for (int g = 0; g < L.nchar; ++g) {
    if (!((d.chars >> g) & 1)) continue;
    const Gen& G = L.gens[g];
    if (!first) os << ",";
    first = false;
    if (G.kind == 0)
      os << "val" << G.pos;
    else
      os << "log" << G.pos << "_" << G.kind - 1;
  }
  os << "}, I={" << format_set(t.I) << "}, ";
  for (const PairSet s : d.blocks) {
    os << "[";
    bool f2 = true;
    for (auto pr : pairs_in(s, ctx.dK())) {
      if (!f2) os << ",";
      f2 = false;
      os << "(" << pr.m << "," << pr.iota << ")";
    }
    os << "]";
  }
  os << ")";
  return os.str();
}

}  // namespace steinext
