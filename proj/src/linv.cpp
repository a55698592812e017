#include "steinext/linv.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace steinext {

namespace {

std::string pair_name(Mask I0, Mask I2) { return "(I0={" + format_set(I0) + "}, I2={" + format_set(I2) + "})"; }

// ι images of the coordinate vectors of 𝐄_{I0,I2}; independent of φ.
const std::vector<SparseVec>& iota_images(int n, int dK, Mask I0, Mask I2) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, Mask, Mask>, std::vector<SparseVec>> cache;
  auto key = std::make_tuple(n, dK, I0, I2);
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::vector<SparseVec> out;
  int d = e_dim(n, dK, I0, I2);
  for (int j = 0; j < d; ++j) out.push_back(iota_embed({n, dK, I0, I2, unit_vec(j)}).v);
  std::lock_guard<std::mutex> lk(mu);
  return cache.try_emplace(key, std::move(out)).first->second;
}

// cup(e_a, e_b) for e_a ∈ 𝐄_{I0,I2}, e_b ∈ 𝐄_{I2,I4}, row-major.
const std::vector<SparseVec>& cup_table_e(int n, int dK, Mask I0, Mask I2, Mask I4) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, Mask, Mask, Mask>, std::vector<SparseVec>> cache;
  auto key = std::make_tuple(n, dK, I0, I2, I4);
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  int da = e_dim(n, dK, I0, I2), db = e_dim(n, dK, I2, I4);
  std::vector<SparseVec> out;
  out.reserve(size_t(da) * db);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) out.push_back(cup({n, dK, I0, I2, unit_vec(a)}, {n, dK, I2, I4, unit_vec(b)}).v);
  std::lock_guard<std::mutex> lk(mu);
  return cache.try_emplace(key, std::move(out)).first->second;
}

Q pair_with(const std::vector<Q>& psi, const SparseVec& x) {
  Q s = 0;
  for (const auto& [i, c] : x) s += psi[i] * c;
  return s;
}

bool all_zero(const std::vector<Q>& v) {
  for (const auto& c : v)
    if (c != 0) return false;
  return true;
}

// Kernel of a covector on a space of dimension psi.size().
std::vector<SparseVec> kernel_of(const std::vector<Q>& psi) {
  int d = int(psi.size()), piv = -1;
  for (int i = 0; i < d; ++i)
    if (psi[i] != 0) {
      piv = i;
      break;
    }
  std::vector<SparseVec> out;
  for (int j = 0; j < d; ++j) {
    if (j == piv) continue;
    if (piv < 0 || psi[j] == 0) {
      out.push_back(unit_vec(j));
      continue;
    }
    out.push_back(normalize({{j, Q(1)}, {piv, -psi[j] / psi[piv]}}));
  }
  return out;
}

template <class F>
void for_pairs(int n, F f) {
  Mask F_ = full_mask(n);
  for (Mask I0 = 0; I0 <= F_; ++I0)
    for (Mask I2 = I0;; I2 = (I2 - 1) & I0) {
      f(I0, I2);
      if (I2 == 0) break;
    }
}

bool is_interval(Mask I) { return I == 0 || maximal_intervals(I).size() == 1; }

Q random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  Q q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

void check_hyperplane(const Hyperplane& h) {
  if (int(h.phi.size()) != e_dim(h.n, h.dK, full_mask(h.n), 0))
    throw InvalidArgument("hyperplane: covector length differs from dim Ê_n");
  if (all_zero(h.phi)) throw InvalidArgument("hyperplane: φ = 0");
}

}  // namespace

void LInvariantParams::validate() const {
  if (n < 2 || dK < 1) throw InvalidArgument("params: need n >= 2, d_K >= 1");
  for (const auto& [key, v] : L) {
    const auto& [a, iota] = key;
    if (a.i < 1 || a.j > n || a.i >= a.j || iota < 0 || iota >= dK)
      throw InvalidArgument("params: (α, ι) out of range");
  }
  if (L.size() != size_t(n * (n - 1) / 2 * dK)) throw InvalidArgument("params: need one value per (α, ι)");
}

Q Hyperplane::eval(const SparseVec& x) const { return pair_with(phi, x); }

std::vector<Q> restricted_covector(const Hyperplane& h, Mask I0, Mask I2) {
  const auto& imgs = iota_images(h.n, h.dK, I0, I2);
  std::vector<Q> psi;
  psi.reserve(imgs.size());
  for (const auto& v : imgs) psi.push_back(h.eval(v));
  return psi;
}

Subspace w_from_params(const LInvariantParams& p, Mask I) {
  p.validate();
  int n = p.n, dK = p.dK;
  int dim = e_dim(n, dK, I, 0);
  std::vector<SparseVec> vs;
  for (const auto& parts : interval_partitions(I)) {
    // factor options per part; option 0 is x^∞
    std::vector<std::vector<EClass>> opts;
    Mask C = I;
    for (Mask J : parts) {
      Mask next = C & ~J;
      PositiveRoot a = root_of_interval(J);
      EClass xinf = smooth_line(n, dK, C, next);
      std::vector<EClass> o{xinf};
      for (int iota = 0; iota < dK; ++iota) {
        EClass y = x_alpha(n, dK, C, next, iota);
        y.v = axpy(y.v, -p.L.at({a, iota}), xinf.v);
        o.push_back(y);
      }
      opts.push_back(std::move(o));
      C = next;
    }
    std::vector<size_t> pick(opts.size(), 0);
    while (true) {
      // advance odometer first so the all-x^∞ choice is skipped
      size_t t = 0;
      while (t < pick.size() && ++pick[t] == opts[t].size()) pick[t++] = 0;
      if (t == pick.size()) break;
      std::vector<EClass> fs;
      for (size_t f = 0; f < opts.size(); ++f) fs.push_back(opts[f][pick[f]]);
      vs.push_back(cup_all(fs).v);
    }
  }
  Subspace W = span_of(vs, dim);
  if (W.dim() != dim - 1) throw TheoremViolation("w_from_params: W_{I,∅} is not a hyperplane");
  return W;
}

Hyperplane params_to_hyperplane(const LInvariantParams& p) {
  Subspace W = w_from_params(p, full_mask(p.n));
  Subspace ann = annihilator(W);
  if (ann.dim() != 1) throw TheoremViolation("params_to_hyperplane: annihilator is not a line");
  Hyperplane h{p.n, p.dK, std::vector<Q>(W.ambient, Q(0))};
  // scale so the first nonzero entry is 1
  Q lead = ann.basis[0].front().second;
  for (const auto& [i, c] : ann.basis[0]) h.phi[i] = c / lead;
  return h;
}

LInvariantParams hyperplane_to_params(const Hyperplane& h) {
  check_hyperplane(h);
  for_pairs(h.n, [&](Mask I0, Mask I2) {
    if (all_zero(restricted_covector(h, I0, I2)))
      throw NotAnInvariant("not an invariant: condition (i) fails at " + pair_name(I0, I2));
  });
  LInvariantParams p{h.n, h.dK, {}};
  // In the graded model x_{α,ι} and x^∞_α already sit in complementary
  // coordinates, so the reduction modulo earlier W_{α'} does not change ψ.
  for (const auto& a : positive_roots(h.n)) {
    Mask I = a.interval();
    auto psi = restricted_covector(h, I, 0);
    Q den = pair_with(psi, smooth_line(h.n, h.dK, I, 0).v);
    for (int iota = 0; iota < h.dK; ++iota)
      p.L[{a, iota}] = pair_with(psi, x_alpha(h.n, h.dK, I, 0, iota).v) / den;
  }
  return p;
}

BSReport is_bs_invariant(const Hyperplane& h) {
  check_hyperplane(h);
  int n = h.n;
  BSReport r;
  std::map<std::pair<Mask, Mask>, std::vector<Q>> psi;
  for_pairs(n, [&](Mask I0, Mask I2) {
    auto v = restricted_covector(h, I0, I2);
    if (r.ok && all_zero(v)) {
      r = {false, 1, I0, I2, 0, "condition (i): W contains Ê at " + pair_name(I0, I2)};
    }
    psi[{I0, I2}] = std::move(v);
  });
  if (!r.ok) return r;
  for_pairs(n, [&](Mask I0, Mask I2) {
    if (!r.ok) return;
    for (Mask I4 = I2;; I4 = (I4 - 1) & I2) {
      const auto& p02 = psi[{I0, I2}];
      const auto& p24 = psi[{I2, I4}];
      const auto& p04 = psi[{I0, I4}];
      const auto& tab = cup_table_e(n, h.dK, I0, I2, I4);
      int da = int(p02.size()), db = int(p24.size());
      int as = 0, bs = 0;
      while (p02[as] == 0) ++as;
      while (p24[bs] == 0) ++bs;
      Q c = pair_with(p04, tab[size_t(as) * db + bs]) / (p02[as] * p24[bs]);
      std::string where = "(I0={" + format_set(I0) + "}, I2={" + format_set(I2) + "}, I4={" + format_set(I4) + "})";
      if (c == 0) {
        r = {false, 2, I0, I2, I4, "condition (ii): cup of quotient lines vanishes at " + where};
        return;
      }
      for (int a = 0; a < da && r.ok; ++a)
        for (int b = 0; b < db; ++b)
          if (pair_with(p04, tab[size_t(a) * db + b]) != c * p02[a] * p24[b]) {
            r = {false, 2, I0, I2, I4, "condition (ii): cup does not factor through the quotient lines at " + where};
            break;
          }
      if (!r.ok || I4 == 0) return;
    }
  });
  return r;
}

BSReport simple_condition(const Hyperplane& h) {
  check_hyperplane(h);
  int n = h.n;
  Mask F = full_mask(n);
  BSReport r;
  for (Mask I0 = 0; I0 <= F; ++I0) {
    if (!is_interval(I0)) continue;
    if (all_zero(restricted_covector(h, I0, 0)))
      return {false, 1, I0, 0, 0, "interval condition: 𝐄/W vanishes at I0={" + format_set(I0) + "}"};
  }
  for (Mask I0 = 0; I0 <= F; ++I0) {
    if (!is_interval(I0)) continue;
    auto p00 = restricted_covector(h, I0, 0);
    for (Mask I2 = I0;; I2 = (I2 - 1) & I0) {
      if (is_interval(I2) && is_interval(I0 & ~I2)) {
        auto W2 = kernel_of(restricted_covector(h, I2, 0));
        int da = e_dim(n, h.dK, I0, I2);
        for (int a = 0; a < da; ++a)
          for (const auto& w : W2)
            if (pair_with(p00, cup({n, h.dK, I0, I2, unit_vec(a)}, {n, h.dK, I2, 0, w}).v) != 0)
              return {false, 2, I0, I2, 0, "interval condition: 𝐄 ∪ W not in W at " + pair_name(I0, I2)};
      }
      if (I2 == 0) break;
    }
  }
  return r;
}

bool sum_formula_check(const Hyperplane& h, PositiveRoot alpha) {
  check_hyperplane(h);
  int n = h.n, dK = h.dK;
  Mask I = alpha.interval();
  if (popcount(I) < 2) throw InvalidArgument("sum_formula_check: need #I_α >= 2");
  int dim = e_dim(n, dK, I, 0);
  Subspace WI = span_of(kernel_of(restricted_covector(h, I, 0)), dim);
  Subspace lhs = intersect(decomposable_span(n, dK, I), WI);
  std::vector<SparseVec> vs;
  for (const auto& b : positive_roots(n)) {
    Mask Ip = b.interval();
    if (Ip == I || (Ip & ~I)) continue;
    auto Wp = kernel_of(restricted_covector(h, Ip, 0));
    int da = e_dim(n, dK, I, Ip);
    for (int a = 0; a < da; ++a)
      for (const auto& w : Wp) vs.push_back(cup({n, dK, I, Ip, unit_vec(a)}, {n, dK, Ip, 0, w}).v);
  }
  Subspace rhs = span_of(vs, dim);
  return rhs.dim() == lhs.dim() && subspace_contains(lhs, rhs);
}

LInvariantParams random_params(int n, int dK, std::mt19937_64& rng) {
  LInvariantParams p{n, dK, {}};
  for (const auto& a : positive_roots(n))
    for (int iota = 0; iota < dK; ++iota) p.L[{a, iota}] = random_rational(rng);
  return p;
}

Hyperplane perturbed_hyperplane(const Hyperplane& h, std::mt19937_64& rng) {
  check_hyperplane(h);
  Hyperplane g = h;
  if (h.n == 2) {
    // push the smooth line into W
    auto x = smooth_line(2, h.dK, full_mask(2), 0).v;
    for (int tries = 0; tries < 100; ++tries) {
      std::vector<Q> d(h.phi.size());
      for (auto& c : d) c = random_rational(rng);
      Q dx = pair_with(d, x);
      if (dx == 0) continue;
      Q t = h.eval(x) / dx;
      for (size_t i = 0; i < d.size(); ++i) g.phi[i] = h.phi[i] - t * d[i];
      if (!all_zero(g.phi)) return g;
    }
    throw TheoremViolation("perturbed_hyperplane: no admissible direction found");
  }
  for (int tries = 0; tries < 100; ++tries) {
    for (size_t i = 0; i < g.phi.size(); ++i) g.phi[i] = h.phi[i] + random_rational(rng);
    if (!all_zero(g.phi) && !is_bs_invariant(g).ok) return g;
  }
  throw TheoremViolation("perturbed_hyperplane: every perturbation stayed valid");
}

bool same_hyperplane(const Hyperplane& a, const Hyperplane& b) {
  if (a.n != b.n || a.dK != b.dK || a.phi.size() != b.phi.size()) return false;
  Q ra = 0, rb = 0;
  for (size_t i = 0; i < a.phi.size(); ++i)
    if (a.phi[i] != 0 || b.phi[i] != 0) {
      ra = a.phi[i];
      rb = b.phi[i];
      break;
    }
  if (ra == 0 || rb == 0) return false;
  for (size_t i = 0; i < a.phi.size(); ++i)
    if (a.phi[i] * rb != b.phi[i] * ra) return false;
  return true;
}

// ---- Galois side ----

int galois_ext_dim(int l1, int l2, int i, int dK) {
  if (dK < 1) throw InvalidArgument("galois_ext_dim: need d_K >= 1");
  switch (i) {
    case 0: return l1 == l2 ? 1 : 0;
    case 1: return (l1 == l2 || l1 == l2 - 1) ? dK + 1 : dK;
    case 2: return l1 == l2 - 1 ? 1 : 0;
    default: throw InvalidArgument("galois_ext_dim: degree must be 0, 1 or 2");
  }
}

UniversalDim universal_dim(int n, int dK) {
  if (n < 1) throw InvalidArgument("universal_dim: need n >= 1");
  UniversalDim u;
  u.D.assign(n + 1, 0);
  u.D[1] = 1;
  u.trace.push_back("D(1) = 1");
  // Graded piece ℓ of V_{m-1} is ε^{m-ℓ-1} with multiplicity D(m-ℓ).
  for (int m = 2; m <= n; ++m) {
    std::ostringstream os;
    os << "D(" << m << ") =";
    long s = 0;
    for (int l = 1; l <= m - 1; ++l) {
      if (l >= 2 && galois_ext_dim(m - l - 1, m - 1, 2, dK) != 0)
        throw TheoremViolation("universal_dim: Ext^2 of a lower piece does not vanish");
      int e = galois_ext_dim(m - l - 1, m - 1, 1, dK);
      s += e * u.D[m - l];
      os << (l == 1 ? " " : " + ") << e << "*D(" << m - l << ")";
    }
    u.D[m] = s;
    os << " = " << s;
    u.trace.push_back(os.str());
  }
  u.dim = u.D[n];
  return u;
}

long interval_partition_count(int n, int dK) {
  long total = 0;
  for (const auto& parts : interval_partitions(full_mask(n))) {
    long prod = 1;
    for (Mask J : parts) prod *= dK + (popcount(J) == 1 ? 1 : 0);
    total += prod;
  }
  return total;
}

}  // namespace steinext
