#include "steinext/cup.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace steinext {

namespace {

int parity_sign(long e) { return (e & 1) ? -1 : 1; }

// #{(a, b) : a ∈ A, b ∈ B, a > b}
int inversions(Mask A, Mask B) {
  int c = 0;
  for (int b : elements(B)) c += popcount(A & ~((bit(b) << 1) - 1));
  return c;
}

const std::vector<AtomClass>& psi_cached(const Page& P, int ell, int k) {
  static std::map<std::tuple<const Page*, int, int>, std::vector<AtomClass>> cache;
  auto key = std::make_tuple(&P, ell, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<AtomClass> v;
  if (P.valid(ell, k)) {
    int b = bottom_row(P, ell);
    if (k == b || k == b + 1) v = enumerate_psi(P, ell, k);
  }
  return cache[key] = std::move(v);
}

// Image rows unlabelled, then the Ψ vectors labelled by their index.
const Echelon& psi_reducer(const Page& P, int ell, int k) {
  static std::map<std::tuple<const Page*, int, int>, std::unique_ptr<Echelon>> cache;
  auto key = std::make_tuple(&P, ell, k);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto ech = std::make_unique<Echelon>(P.e1_dim(ell, k));
  if (P.valid(ell, k)) {
    for (const auto& r : P.image(ell, k).rows()) ech->insert(r);
    const auto& psi = psi_cached(P, ell, k);
    for (size_t i = 0; i < psi.size(); ++i)
      if (!ech->insert(psi[i].vec, int(i)))
        throw TheoremViolation("Ψ vectors dependent modulo im d_1 at column " + std::to_string(ell));
  }
  return *(cache[key] = std::move(ech));
}

}  // namespace

Page& CupContext::A() const { return page(n, dK, I2 | (I1 & ~I0), I1); }
Page& CupContext::B() const { return page(n, dK, I4 | (I1 & ~I2), I1); }
Page& CupContext::C() const { return page(n, dK, I4 | (I1 & ~I0), I1); }

void CupContext::validate() const {
  for (Mask m : {I0, I1, I2, I4}) check_subset(n, m);
  if ((I4 & ~I2) || (I2 & ~I0) || (I0 & ~I1)) throw InvalidArgument("cup: need I4 ⊆ I2 ⊆ I0 ⊆ I1");
  int a = popcount(I0) - popcount(I2), b = popcount(I2) - popcount(I4);
  bool ok = (k0 == 2 * a && k1 == 2 * b) || (k0 == 2 * a + 1 && k1 == 2 * b) || (k0 == 2 * a && k1 == 2 * b + 1);
  if (!ok) throw InvalidArgument("cup: (k0, k1) is not a bottom-degree pair");
  Page &PA = A(), &PB = B();
  if (ell0 < PA.ell_min() || ell0 > PA.ell_max()) throw InvalidArgument("cup: ℓ0 outside the columns of the first page");
  if (ell1 < PB.ell_min() || ell1 > PB.ell_max()) throw InvalidArgument("cup: ℓ1 outside the columns of the second page");
}

CupContext CupContext::swapped() const {
  CupContext s = *this;
  s.I2 = I4 | (I0 & ~I2);
  std::swap(s.ell0, s.ell1);
  std::swap(s.k0, s.k1);
  return s;
}

std::vector<CupContext> cup_contexts(int n, int dK, Mask I0, Mask I1, Mask I2, Mask I4) {
  std::vector<CupContext> out;
  CupContext c{n, dK, I0, I1, I2, I4, 0, 0, 0, 0};
  int a = popcount(I0) - popcount(I2), b = popcount(I2) - popcount(I4);
  Page &PA = c.A(), &PB = c.B();
  for (auto [k0, k1] : {std::pair{2 * a, 2 * b}, {2 * a + 1, 2 * b}, {2 * a, 2 * b + 1}})
    for (int l0 = PA.ell_min(); l0 <= PA.ell_max(); ++l0)
      for (int l1 = PB.ell_min(); l1 <= PB.ell_max(); ++l1) {
        c.ell0 = l0;
        c.ell1 = l1;
        c.k0 = k0;
        c.k1 = k1;
        if (PA.valid(l0, c.rowA()) && PB.valid(l1, c.rowB())) out.push_back(c);
      }
  return out;
}

SparseVec cup_e1(const CupContext& c, const SparseVec& x, const SparseVec& y) {
  const Page &PA = c.A(), &PB = c.B(), &PC = c.C();
  const Context& ctx = PA.ctx();
  int l2 = c.ell2(), kC = c.rowC();
  const auto& bA = PA.basis(c.ell0, c.rowA());
  const auto& bB = PB.basis(c.ell1, c.rowB());
  std::vector<std::pair<int, Q>> raw;
  for (const auto& [i, a] : x) {
    const Tuple& s = bA[i];
    for (const auto& [j, b] : y) {
      const Tuple& t = bB[j];
      Mask J = s.I & t.I;
      int sign = parity_sign(long(c.rowA()) * popcount(c.I1 & ~t.I) + inversions(c.I1 & ~s.I, c.I1 & ~t.I));
      auto rs = restrict_mono(ctx, s.I, J, s.mono);
      auto rt = restrict_mono(ctx, t.I, J, t.mono);
      for (const auto& [u, su] : rs)
        for (const auto& [w, sw] : rt) {
          int sg = wedge_sign(u, w);
          if (!sg) continue;
          int row = PC.index(l2, kC, {J, u | w});
          if (row < 0) throw std::logic_error("cup: product monomial missing from the target basis");
          raw.emplace_back(row, a * b * (sign * su * sw * sg));
        }
    }
  }
  return normalize(std::move(raw));
}

SparseVec psi_coordinates(const Page& P, int ell, int k, const SparseVec& x) {
  if (!P.valid(ell, k)) {
    if (x.empty()) return {};
    throw InvalidArgument("psi_coordinates: bidegree outside the page");
  }
  auto red = psi_reducer(P, ell, k).reduce(x);
  if (!red.residual.empty()) throw TheoremViolation("cup: product not in the span of Ψ modulo im d_1");
  return red.combo;
}

GradedElement cup_graded(const CupContext& c, const SparseVec& x, const SparseVec& y) {
  c.validate();
  if (!c.A().is_cocycle(c.ell0, c.rowA(), x)) throw InvalidArgument("cup_graded: first argument is not a cocycle");
  if (!c.B().is_cocycle(c.ell1, c.rowB(), y)) throw InvalidArgument("cup_graded: second argument is not a cocycle");
  GradedElement g;
  g.rep = cup_e1(c, x, y);
  const Page& PC = c.C();
  if (!PC.is_cocycle(c.ell2(), c.rowC(), g.rep)) throw TheoremViolation("cup_graded: product is not a cocycle");
  g.coords = psi_coordinates(PC, c.ell2(), c.rowC(), g.rep);
  return g;
}

CupAtom cup_atoms(const CupContext& c, int omega0, int omega1) {
  const auto& pa = psi_cached(c.A(), c.ell0, c.rowA());
  const auto& pb = psi_cached(c.B(), c.ell1, c.rowB());
  if (omega0 < 0 || omega0 >= int(pa.size()) || omega1 < 0 || omega1 >= int(pb.size()))
    throw InvalidArgument("cup_atoms: class index out of range");
  auto g = cup_graded(c, pa[omega0].vec, pb[omega1].vec);
  if (g.coords.size() != 1 || abs(g.coords[0].second) != 1)
    throw TheoremViolation("cup_atoms: product is not a single signed atom (" + std::to_string(g.coords.size()) +
                           " terms)");
  CupAtom r;
  r.sign = sgn(g.coords[0].second);
  r.omega2 = g.coords[0].first;
  r.max = psi_cached(c.C(), c.ell2(), c.rowC())[r.omega2].max;
  return r;
}

bool separated(Mask I0, Mask I2, Mask I4) {
  Mask a = I0 & ~I2, b = I2 & ~I4;
  if (!a || !b) return true;
  return 31 - __builtin_clz(a) < __builtin_ctz(b);
}

CupAtom cup_atoms_separated(const CupContext& c, int omega0, int omega1) {
  c.validate();
  if (!separated(c.I0, c.I2, c.I4))
    throw InvalidArgument("cup_atoms_separated: need max(I0∖I2) < min(I2∖I4); use cup_atoms");
  const Page &PA = c.A(), &PB = c.B(), &PC = c.C();
  const Context& ctx = PA.ctx();
  const auto& pa = psi_cached(PA, c.ell0, c.rowA());
  const auto& pb = psi_cached(PB, c.ell1, c.rowB());
  const auto& pc = psi_cached(PC, c.ell2(), c.rowC());
  if (omega0 < 0 || omega0 >= int(pa.size()) || omega1 < 0 || omega1 >= int(pb.size()))
    throw InvalidArgument("cup_atoms_separated: class index out of range");
  PagePair ppA(PA), ppC(PC);
  const Tuple& t0 = pa[omega0].max;
  const Tuple& t1 = pb[omega1].max;

  // Cut at position q' = min(I2∖I4) (n if empty): to its left I ∩ I' agrees
  // with I, to its right with I'.  d0 is the block of I holding q', the last
  // block of its segment; twisting moves that segment's empty block onto d0.
  int n = ctx.n();
  Mask rhs = c.I2 & ~c.I4;
  int cut = rhs ? __builtin_ctz(rhs) + 1 : n;
  auto r0 = r_seq(ppA, t0);
  int d0 = block_of_position(n, t0.I, cut) + 1, s0 = 0;
  for (int s = 1; s < int(r0.size()); ++s)
    if (d0 > r0[s - 1] && d0 <= r0[s]) s0 = s;
  if (d0 != r0[s0]) throw TheoremViolation("cup_atoms_separated: cut block does not end its segment");
  // No twist is needed when d0 already opens its segment, or when the second
  // factor lives on the single column I1 (I2 = I4).
  bool keep = d0 == r0[s0 - 1] + 1 || !rhs;
  Tuple tw = keep ? t0 : twist(ppA, t0, s0, d0);
  int sigma0 = keep ? 1 : parity_sign(d0 - r0[s0 - 1] - 1);
  int d1 = block_of_position(n, t1.I, cut) + 1;

  TupleData a = decode(ctx, tw), b = decode(ctx, t1);
  for (int d = d0; d < int(a.blocks.size()); ++d)
    if (a.blocks[d]) throw TheoremViolation("cup_atoms_separated: labels of Θ0 right of the cut");
  for (int d = 0; d < d1 - 1; ++d)
    if (b.blocks[d]) throw TheoremViolation("cup_atoms_separated: labels of Θ1 left of the cut");
  if (a.blocks[d0 - 1] & b.blocks[d1 - 1]) throw TheoremViolation("cup_atoms_separated: labels collide at the cut");
  if (a.chars & b.chars) throw TheoremViolation("cup_atoms_separated: character sets overlap");
  TupleData glued;
  glued.I = tw.I & t1.I;
  glued.chars = a.chars | b.chars;
  glued.blocks.assign(a.blocks.begin(), a.blocks.begin() + d0);
  glued.blocks.back() |= b.blocks[d1 - 1];
  glued.blocks.insert(glued.blocks.end(), b.blocks.begin() + d1, b.blocks.end());
  if (int(glued.blocks.size()) != num_blocks(n, glued.I))
    throw TheoremViolation("cup_atoms_separated: glued blocks do not match I ∩ I'");
  Tuple t2 = encode(ctx, glued);

  // Ω2 is the class whose twist at the same d0 is the glued tuple.
  CupAtom r;
  int sigma2 = 0;
  for (size_t j = 0; j < pc.size() && r.omega2 < 0; ++j)
    if (pc[j].max == t2) {
      r.omega2 = int(j);
      r.max = t2;
      sigma2 = 1;
    }
  for (size_t j = 0; j < pc.size() && r.omega2 < 0; ++j) {
    auto rs = r_seq(ppC, pc[j].max);
    for (int s = 1; s < int(rs.size()); ++s) {
      if (d0 <= rs[s - 1] || d0 > rs[s]) continue;
      bool plain = d0 == rs[s - 1] + 1;
      if (!plain && !saturated(ppC, pc[j].max, s)) continue;
      if ((plain ? pc[j].max : twist(ppC, pc[j].max, s, d0)) == t2) {
        r.omega2 = int(j);
        r.max = pc[j].max;
        sigma2 = parity_sign(d0 - rs[s - 1] - 1);
        break;
      }
    }
  }
  if (r.omega2 < 0) throw TheoremViolation("cup_atoms_separated: glued tuple is not a twisted atom");

  int i0 = PA.index(c.ell0, c.rowA(), tw), i1 = PB.index(c.ell1, c.rowB(), t1);
  int i2 = PC.index(c.ell2(), c.rowC(), t2);
  Q coef = coeff(cup_e1(c, unit_vec(i0), unit_vec(i1)), i2);
  if (abs(coef) != 1) throw TheoremViolation("cup_atoms_separated: tuple product coefficient is not ±1");
  int eps_sharp = sgn(coef) * epsilon(tw.I) * epsilon(t1.I) * epsilon(t2.I);
  r.sign = sigma0 * sigma2 * eps_sharp;
  return r;
}

CupTable cup_table(const CupContext& c) {
  c.validate();
  CupTable t;
  t.ctx = c;
  t.nA = int(psi_cached(c.A(), c.ell0, c.rowA()).size());
  t.nB = int(psi_cached(c.B(), c.ell1, c.rowB()).size());
  t.nC = int(psi_cached(c.C(), c.ell2(), c.rowC()).size());
  const auto& pa = psi_cached(c.A(), c.ell0, c.rowA());
  const auto& pb = psi_cached(c.B(), c.ell1, c.rowB());
  const Context& ctx = context(c.n, c.dK);
  std::set<int> hit;
  std::set<int> raw, norm;
  for (int i = 0; i < t.nA; ++i)
    for (int j = 0; j < t.nB; ++j) {
      auto r = cup_atoms(c, i, j);
      if (!hit.insert(r.omega2).second) t.injective = false;
      Mono ca = ctx.layout(pa[i].max.I).char_part(pa[i].max.mono);
      Mono cb = ctx.layout(pb[j].max.I).char_part(pb[j].max.mono);
      raw.insert(r.sign);
      norm.insert(r.sign * wedge_sign(ca, cb));
      t.products.push_back(r);
    }
  if (raw.size() == 1) t.sign = *raw.begin();
  if (norm.size() == 1) t.normalized_sign = *norm.begin();
  return t;
}

ChainReport cup_chain_report(int n, int dK, Mask I0, Mask I1, Mask I2, Mask I4) {
  ChainReport rep;
  rep.do_not_connect = do_not_connect(I0 & ~I2, I2 & ~I4);
  bool sep = separated(I0, I2, I4);
  auto fail = [&](bool& flag, const std::string& what, const CupContext& c) {
    if (flag && rep.first_failure.empty())
      rep.first_failure = what + " at (ℓ0,ℓ1,k0,k1) = (" + std::to_string(c.ell0) + "," + std::to_string(c.ell1) + "," +
                          std::to_string(c.k0) + "," + std::to_string(c.k1) + ")";
    flag = false;
  };
  int a = popcount(I0) - popcount(I2), b = popcount(I2) - popcount(I4);
  for (const auto& c : cup_contexts(n, dK, I0, I1, I2, I4)) {
    ++rep.contexts;
    CupTable t = cup_table(c);
    rep.products += int(t.products.size());
    if (!t.injective) fail(rep.injective, "not injective", c);
    if (t.nA > 0 && t.nB > 0 && !t.normalized_sign) fail(rep.normalized_sign_constant, "sign varies", c);
    if (t.nA > 0 && t.nB > 0 && !t.sign) rep.raw_sign_constant = false;
    if (c.k0 == 2 * a && c.k1 == 2 * b && !t.bijective()) rep.bijective = false;
    CupTable s = cup_table(c.swapped());
    int law = (c.k0 * c.k1) % 2 ? -1 : 1;
    for (int i = 0; i < t.nA; ++i)
      for (int j = 0; j < t.nB; ++j) {
        const auto &x = t.products[i * t.nB + j], &y = s.products[j * t.nA + i];
        if (x.omega2 != y.omega2 || x.sign != law * y.sign) fail(rep.swap_law, "swap law", c);
        if (!sep) continue;
        ++rep.separated_checked;
        try {
          auto z = cup_atoms_separated(c, i, j);
          if (z.omega2 != x.omega2 || z.sign != x.sign) fail(rep.separated_agree, "separated route differs", c);
        } catch (const TheoremViolation& e) {
          fail(rep.separated_agree, std::string("separated route: ") + e.what(), c);
        }
      }
  }
  if (rep.bijective != rep.do_not_connect && rep.first_failure.empty())
    rep.first_failure = rep.bijective ? "bijective although the differences connect"
                                      : "not bijective although the differences do not connect";
  return rep;
}

// ---- bottom-degree Ext groups ----

int ELayout::level_of(int coord) const {
  for (size_t i = 0; i < offset.size(); ++i)
    if (coord < offset[i] + size[i]) return ell_min + int(i);
  throw InvalidArgument("ELayout: coordinate out of range");
}

const ELayout& e_layout(int n, int dK, Mask I0, Mask I2) {
  static std::map<std::tuple<int, int, Mask, Mask>, ELayout> cache;
  auto key = std::make_tuple(n, dK, I0, I2);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  check_subset(n, I0);
  if (I2 & ~I0) throw InvalidArgument("𝐄: need I2 ⊆ I0");
  Mask F = full_mask(n);
  const Page& P = page(n, dK, F & ~(I0 & ~I2), F);
  ELayout L;
  L.n = n;
  L.dK = dK;
  L.I0 = I0;
  L.I2 = I2;
  L.ell_min = P.ell_min();
  for (int ell = P.ell_min(); ell <= P.ell_max(); ++ell) {
    int sz = int(psi_cached(P, ell, bottom_row(P, ell)).size());
    L.offset.push_back(L.dim);
    L.size.push_back(sz);
    L.dim += sz;
  }
  return cache[key] = std::move(L);
}

int e_dim(int n, int dK, Mask I0, Mask I2) { return e_layout(n, dK, I0, I2).dim; }

std::vector<std::string> e_manifest(int n, int dK, Mask I0, Mask I2) {
  const ELayout& L = e_layout(n, dK, I0, I2);
  Mask F = full_mask(n);
  const Page& P = page(n, dK, F & ~(I0 & ~I2), F);
  std::vector<std::string> out;
  for (int ell = P.ell_min(); ell <= P.ell_max(); ++ell)
    for (const auto& cl : psi_cached(P, ell, bottom_row(P, ell)))
      out.push_back("l=" + std::to_string(ell) + " " + format_tuple(P.ctx(), cl.max));
  if (int(out.size()) != L.dim) throw TheoremViolation("e_manifest: size differs from the layout");
  return out;
}

namespace {

const Page& e_page(int n, int dK, Mask I0, Mask I2) {
  Mask F = full_mask(n);
  return page(n, dK, F & ~(I0 & ~I2), F);
}

// Coordinate of the class with the given maximal tuple at level ℓ, or -1.
int coord_of_max(const ELayout& L, int ell, const Tuple& max) {
  const Page& P = e_page(L.n, L.dK, L.I0, L.I2);
  const auto& psi = psi_cached(P, ell, bottom_row(P, ell));
  for (size_t j = 0; j < psi.size(); ++j)
    if (psi[j].max == max) return L.offset[ell - L.ell_min] + int(j);
  return -1;
}

const CupAtom& cup_atoms_cached(const CupContext& c, int i, int j) {
  static std::map<std::tuple<int, int, Mask, Mask, Mask, Mask, int, int, int, int>, std::map<std::pair<int, int>, CupAtom>>
      cache;
  auto& m = cache[std::make_tuple(c.n, c.dK, c.I0, c.I1, c.I2, c.I4, c.ell0, c.ell1, c.k0, c.k1)];
  auto it = m.find({i, j});
  if (it != m.end()) return it->second;
  return m[{i, j}] = cup_atoms(c, i, j);
}

}  // namespace

EClass cup(const EClass& x, const EClass& y) {
  if (x.n != y.n || x.dK != y.dK || x.I2 != y.I0) throw InvalidArgument("cup: classes are not composable");
  int n = x.n, dK = x.dK;
  const ELayout &Lx = e_layout(n, dK, x.I0, x.I2), &Ly = e_layout(n, dK, y.I0, y.I2);
  const ELayout& Lz = e_layout(n, dK, x.I0, y.I2);
  CupContext c{n, dK, x.I0, full_mask(n), x.I2, y.I2, 0, 0, 0, 0};
  c.k0 = 2 * (popcount(x.I0) - popcount(x.I2));
  c.k1 = 2 * (popcount(y.I0) - popcount(y.I2));
  std::vector<std::pair<int, Q>> raw;
  for (const auto& [i, a] : x.v) {
    c.ell0 = Lx.level_of(i);
    int oi = i - Lx.offset[c.ell0 - Lx.ell_min];
    for (const auto& [j, b] : y.v) {
      c.ell1 = Ly.level_of(j);
      int oj = j - Ly.offset[c.ell1 - Ly.ell_min];
      const CupAtom& r = cup_atoms_cached(c, oi, oj);
      raw.emplace_back(Lz.offset[c.ell2() - Lz.ell_min] + r.omega2, a * b * r.sign);
    }
  }
  return {n, dK, x.I0, y.I2, normalize(std::move(raw))};
}

EClass cup_all(const std::vector<EClass>& xs) {
  if (xs.empty()) throw InvalidArgument("cup_all: empty product");
  EClass acc = xs.front();
  for (size_t i = 1; i < xs.size(); ++i) acc = cup(acc, xs[i]);
  return acc;
}

EClass unit_class(int n, int dK, Mask I0) {
  // The page (Δ, Δ) has one column; its Ψ atom is ε(Δ) times the constant.
  const ELayout& L = e_layout(n, dK, I0, I0);
  if (L.dim != 1) throw TheoremViolation("unit_class: 𝐄_{I,I} is not a line");
  return {n, dK, I0, I0, {{0, Q(epsilon(full_mask(n)))}}};
}

namespace {

EClass char_class(int n, int dK, Mask I0, Mask I2, int kind) {
  Mask d = I0 & ~I2;
  if (popcount(d) != 1) throw InvalidArgument("#I0∖I2 must be 1");
  int i = __builtin_ctz(d) + 1;
  const Context& ctx = context(n, dK);
  const ELayout& L = e_layout(n, dK, I0, I2);
  Tuple t{full_mask(n) & ~d, ctx.char_bit(i, kind)};
  int j = coord_of_max(L, n - 2, t);
  if (j < 0) throw TheoremViolation("character class missing from Ψ");
  return {n, dK, I0, I2, {{j, Q(1)}}};
}

}  // namespace

EClass val_class(int n, int dK, Mask I0, Mask I2) { return char_class(n, dK, I0, I2, 0); }
EClass log_class(int n, int dK, Mask I0, Mask I2, int iota) {
  if (iota < 0 || iota >= dK) throw InvalidArgument("log_class: ι out of range");
  return char_class(n, dK, I0, I2, 1 + iota);
}

EClass smooth_line(int n, int dK, Mask I0, Mask I2, const std::vector<int>& order) {
  if (I2 & ~I0) throw InvalidArgument("smooth_line: need I2 ⊆ I0");
  std::vector<int> ord = order.empty() ? elements(I0 & ~I2) : order;
  std::vector<int> sorted = ord;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != elements(I0 & ~I2)) throw InvalidArgument("smooth_line: order is not a permutation of I0∖I2");
  if (ord.empty()) return unit_class(n, dK, I0);
  std::vector<EClass> f;
  Mask cur = I0;
  for (int i : ord) {
    f.push_back(val_class(n, dK, cur, cur & ~bit(i)));
    cur &= ~bit(i);
  }
  return cup_all(f);
}

EClass x_alpha(int n, int dK, Mask I0, Mask I2, int iota) {
  Mask d = I0 & ~I2;
  if (I2 & ~I0) throw InvalidArgument("x_alpha: need I2 ⊆ I0");
  if (maximal_intervals(d).size() != 1) throw InvalidArgument("x_alpha: I0∖I2 must be a nonempty interval");
  if (popcount(d) == 1) return log_class(n, dK, I0, I2, iota);
  if (iota < 0 || iota >= dK) throw InvalidArgument("x_alpha: ι out of range");
  const Context& ctx = context(n, dK);
  const ELayout& L = e_layout(n, dK, I0, I2);
  Mask F = full_mask(n);
  int m = 2 * popcount(d) - 1;
  for (int i : elements(d)) {
    Mask I = F & ~bit(i);
    const Layout& Lay = ctx.layout(I);
    if (Lay.gen_id(1, m, iota) < 0) continue;
    Tuple t{I, Lay.encode(0, {PairSet(0), PairSet(1u << pair_index(m, iota, dK))})};
    int j = coord_of_max(L, n - 2, t);
    if (j >= 0) return {n, dK, I0, I2, {{j, Q(1)}}};
  }
  throw TheoremViolation("x_alpha: no Ψ class with the generator shape");
}

std::vector<EClass> generators_Xbar(int n, int dK, Mask I0, Mask I2) {
  std::vector<EClass> out;
  if (popcount(I0 & ~I2) == 1) out.push_back(val_class(n, dK, I0, I2));
  for (int iota = 0; iota < dK; ++iota) out.push_back(x_alpha(n, dK, I0, I2, iota));
  return out;
}

BasisX basis_X(int n, int dK, Mask I0, Mask I2) {
  if (I2 & ~I0) throw InvalidArgument("basis_X: need I2 ⊆ I0");
  BasisX B;
  B.expected = e_dim(n, dK, I0, I2);
  if (I0 == I2) {
    B.vectors.push_back(unit_class(n, dK, I0));
    B.partition_of.push_back({});
  }
  for (const auto& parts : interval_partitions(I0 & ~I2)) {
    if (parts.empty()) continue;
    std::vector<std::vector<EClass>> choices;
    Mask cur = I0;
    for (Mask J : parts) {
      choices.push_back(generators_Xbar(n, dK, cur, cur & ~J));
      cur &= ~J;
    }
    std::vector<size_t> pick(parts.size(), 0);
    while (true) {
      std::vector<EClass> f;
      for (size_t p = 0; p < parts.size(); ++p) f.push_back(choices[p][pick[p]]);
      B.vectors.push_back(cup_all(f));
      B.partition_of.push_back(parts);
      size_t p = 0;
      while (p < pick.size() && ++pick[p] == choices[p].size()) pick[p++] = 0;
      if (p == pick.size()) break;
    }
  }
  std::vector<SparseVec> vs;
  for (const auto& v : B.vectors) vs.push_back(v.v);
  B.rank = span_rank(vs, B.expected);
  if (B.rank != B.expected || int(B.vectors.size()) != B.expected)
    throw TheoremViolation("basis_X: cup products do not form a basis of 𝐄_{" + format_set(I0) + "," +
                           format_set(I2) + "}");
  return B;
}

EClass iota_embed(const EClass& u) {
  Mask F = full_mask(u.n);
  return cup_all({smooth_line(u.n, u.dK, F, u.I0), u, smooth_line(u.n, u.dK, u.I2, 0)});
}

Subspace ehat_subspace(int n, int dK, Mask I0, Mask I2) {
  int d = e_dim(n, dK, I0, I2);
  std::vector<SparseVec> vs;
  for (int j = 0; j < d; ++j) vs.push_back(iota_embed({n, dK, I0, I2, unit_vec(j)}).v);
  Subspace S = span_of(vs, e_dim(n, dK, full_mask(n), 0));
  if (S.dim() != d) throw TheoremViolation("ehat_subspace: ι is not injective");
  return S;
}

Subspace decomposable_span(int n, int dK, Mask I) {
  std::vector<SparseVec> vs;
  for (Mask Ip = (I - 1) & I; Ip; Ip = (Ip - 1) & I) {
    int da = e_dim(n, dK, I, Ip), db = e_dim(n, dK, Ip, 0);
    for (int a = 0; a < da; ++a)
      for (int b = 0; b < db; ++b)
        vs.push_back(cup({n, dK, I, Ip, unit_vec(a)}, {n, dK, Ip, 0, unit_vec(b)}).v);
  }
  return span_of(vs, e_dim(n, dK, I, 0));
}

}  // namespace steinext
