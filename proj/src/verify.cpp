#include "steinext/verify.hpp"

#include <chrono>
#include <sstream>

#include "steinext/linv.hpp"

namespace steinext {

namespace {

struct Tally {
  long checks = 0, failures = 0;
  std::string first;
  void check(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    if (!failures) first = what();
    ++failures;
  }
};

template <class F>
void for_pages(int n, F f) {
  Mask F_ = full_mask(n);
  for (Mask I1 = 0; I1 <= F_; ++I1)
    for (Mask I0 = I1;; I0 = (I0 - 1) & I1) {
      f(I0, I1);
      if (I0 == 0) break;
    }
}

std::string where(int n, int dK, Mask I0, Mask I1) {
  std::ostringstream os;
  os << "n=" << n << " dK=" << dK << " I0={" << format_set(I0) << "} I1={" << format_set(I1) << "}";
  return os.str();
}

int max_block(int n, Mask I) {
  int m = 0;
  for (int s : block_sizes(n, I)) m = std::max(m, s);
  return m;
}

void levi_vs_ce(Tally& t, const VerifyOptions&) {
  auto one = [&](int n, int dK, Mask I) {
    auto dims = levi_dims(context(n, dK), I);
    while (dims.size() > 1 && dims.back() == 0) dims.pop_back();
    auto ce = ce_cohomology(levi_lie_algebra(n, dK, I));
    t.check(dims == ce, [&] { return "levi dims differ from CE at n=" + std::to_string(n) + " I={" + format_set(I) + "}"; });
  };
  for (int n = 2; n <= 3; ++n)
    for (int dK = 1; dK <= 2; ++dK)
      for (Mask I = 0; I <= full_mask(n); ++I) one(n, dK, I);
  for (Mask I = 0; I <= full_mask(4); ++I)
    if (max_block(4, I) <= 3) one(4, 1, I);
}

void differential(Tally& t, const VerifyOptions&) {
  for (int n = 2; n <= 4; ++n)
    for (int dK = 1; dK <= 2; ++dK)
      for_pages(n, [&](Mask I0, Mask I1) {
        Page& P = page(n, dK, I0, I1);
        for (int k = 0; k <= P.max_k(); ++k) {
          for (int ell = P.ell_min(); ell <= P.ell_max(); ++ell)
            t.check(P.d1_squared_zero(ell, k), [&] { return "d1^2 != 0 at " + where(n, dK, I0, I1); });
          auto [a, b] = euler_row(P, k);
          t.check(a == b, [&] { return "Euler mismatch at " + where(n, dK, I0, I1) + " k=" + std::to_string(k); });
        }
      });
}

void atoms_vs_e2(Tally& t, const VerifyOptions& opt) {
  auto run = [&](int n, int dK) {
    for_pages(n, [&](Mask I0, Mask I1) {
      Page& P = page(n, dK, I0, I1);
      for (int ell = P.ell_min(); ell <= P.ell_max(); ++ell) {
        int b = bottom_row(P, ell);
        for (int k : {b, b + 1}) {
          if (!P.valid(ell, k)) continue;
          auto psi = enumerate_psi(P, ell, k);
          t.check(int(psi.size()) == P.e2_dim(ell, k), [&] { return "#Ψ != dim E2 at " + where(n, dK, I0, I1); });
          Echelon ech = P.image(ell, k);
          bool indep = true;
          for (const auto& cl : psi) indep = ech.insert(cl.vec) && indep;
          t.check(indep, [&] { return "Ψ dependent mod im d1 at " + where(n, dK, I0, I1); });
        }
      }
    });
  };
  for (int n = 2; n <= 4; ++n)
    for (int dK = 1; dK <= 2; ++dK) run(n, dK);
  if (opt.extended) run(5, 1);
}

void diamond(Tally& t, const VerifyOptions&) {
  for (int n = 2; n <= 4; ++n)
    for (int dK = 1; dK <= 2; ++dK)
      for_pages(n, [&](Mask I0, Mask I1) {
        Page& P = page(n, dK, I0, I1);
        for (int k = 0; k <= P.max_k(); ++k) {
          auto r = diamond_quasi_iso_check(P, k);
          t.check(r.closed && r.same_cohomology,
                  [&] { return "diamond subcomplex differs at " + where(n, dK, I0, I1) + " k=" + std::to_string(k); });
        }
      });
}

void degeneration(Tally& t, const VerifyOptions& opt) {
  for (int n = 2; n <= 3; ++n)
    for (int dK = 1; dK <= 2; ++dK)
      for_pages(n, [&](Mask I0, Mask I1) {
        t.check(degeneration_check(n, dK, I0, I1).ok, [&] { return "E2 does not degenerate at " + where(n, dK, I0, I1); });
      });
  if (opt.extended)
    for_pages(4, [&](Mask I0, Mask I1) {
      if (max_block(4, I1) > 3) return;
      t.check(degeneration_check(4, 1, I0, I1).ok, [&] { return "E2 does not degenerate at " + where(4, 1, I0, I1); });
    });
}

void golden(Tally& t, const VerifyOptions&) {
  long e1[] = {0, 0, 2, 5, 13};
  for (int n = 2; n <= 4; ++n) {
    long d = e_dim(n, 1, full_mask(n), 0);
    t.check(d == e1[n], [&] { return "dim E_{Δ," + std::to_string(n) + "} = " + std::to_string(d); });
    t.check(universal_dim(n, 1).dim == d, [&] { return "universal_dim differs at n=" + std::to_string(n); });
  }
  auto s = steinberg_ext_dims(3, 1, full_mask(3), 0);
  t.check(s.graded_E == std::vector<int>{4, 1, 0}, [] { return "graded dims at n=3 are not (4,1,0)"; });
  Mask D2 = full_mask(2);
  auto p = ext_profile(2, 1, D2, D2, 0, D2, ExtGrading::representation);
  t.check(p.dim(1) == 2, [] { return "dim Ext^1(triv, St_2) != 2"; });
  for (int n = 1; n <= 8; ++n)
    for (int dK = 1; dK <= 3; ++dK)
      t.check(universal_dim(n, dK).dim == interval_partition_count(n, dK),
              [&] { return "universal_dim vs interval partitions at n=" + std::to_string(n); });
}

void cups(Tally& t, const VerifyOptions&) {
  for (int n = 2; n <= 4; ++n)
    for (int dK = 1; dK <= 2; ++dK)
      for_pages(n, [&](Mask I0, Mask I1) {
        for (Mask I2 = I0;; I2 = (I2 - 1) & I0) {
          for (Mask I4 = I2;; I4 = (I4 - 1) & I2) {
            std::string w = where(n, dK, I0, I1) + " I2={" + format_set(I2) + "} I4={" + format_set(I4) + "}";
            try {
              auto r = cup_chain_report(n, dK, I0, I1, I2, I4);
              t.check(r.injective, [&] { return "not injective: " + w; });
              t.check(r.normalized_sign_constant, [&] { return "sign not constant: " + w; });
              t.check(r.bijective == r.do_not_connect, [&] { return "bijectivity differs from do_not_connect: " + w; });
              t.check(r.swap_law, [&] { return "swap law fails: " + w; });
              t.check(r.separated_agree, [&] { return "separated constructor disagrees: " + w; });
            } catch (const std::exception& e) {
              t.check(false, [&] { return std::string(e.what()) + ": " + w; });
            }
            if (I4 == 0) break;
          }
          if (I2 == 0) break;
        }
      });
}

void generators(Tally& t, const VerifyOptions&) {
  for (int n = 2; n <= 5; ++n)
    for (int dK = 1; dK <= 2; ++dK)
      for (Mask I = 1; I <= full_mask(n); ++I) {
        int codim = e_dim(n, dK, I, 0) - decomposable_span(n, dK, I).dim();
        bool interval = maximal_intervals(I).size() == 1;
        int expect = !interval ? 0 : popcount(I) == 1 ? dK + 1 : dK;
        t.check(codim == expect, [&] { return "codim " + std::to_string(codim) + " at n=" + std::to_string(n) + " I={" + format_set(I) + "}"; });
      }
  for (int n = 2; n <= 4; ++n)
    for (int dK = 1; dK <= 2; ++dK)
      for_pages(n, [&](Mask I2, Mask I0) {
        try {
          auto B = basis_X(n, dK, I0, I2);
          t.check(B.rank == B.expected, [&] { return "basis_X rank loss"; });
        } catch (const std::exception& e) {
          t.check(false, [&] { return std::string(e.what()); });
        }
      });
}

void moduli(Tally& t, const VerifyOptions& opt) {
  for (int n = 2; n <= 4; ++n)
    for (int dK = 1; dK <= 2; ++dK) {
      std::mt19937_64 rng(opt.seed + 97 * n + dK);
      std::string nd = "n=" + std::to_string(n) + " dK=" + std::to_string(dK);
      for (int s = 0; s < opt.samples; ++s) {
        auto p = random_params(n, dK, rng);
        Hyperplane h = params_to_hyperplane(p);
        auto r = is_bs_invariant(h);
        t.check(r.ok, [&] { return nd + ": constructed W rejected: " + r.message; });
        t.check(hyperplane_to_params(h).L == p.L, [&] { return nd + ": round trip changed the parameters"; });
        for (const auto& a : positive_roots(n))
          if (!a.simple()) t.check(sum_formula_check(h, a), [&] { return nd + ": sum formula fails"; });
        Hyperplane g = perturbed_hyperplane(h, rng);
        auto rg = is_bs_invariant(g);
        t.check(!rg.ok && (rg.condition == 1 || rg.condition == 2) && !rg.message.empty(),
                [&] { return nd + ": perturbed hyperplane accepted"; });
      }
    }
}

void twists(Tally& t, const VerifyOptions&) {
  long corrected = 0;
  for (int n = 2; n <= 4; ++n)
    for (int dK = 1; dK <= 2; ++dK)
      for_pages(n, [&](Mask I0, Mask I1) {
        Page& P = page(n, dK, I0, I1);
        PagePair pp(P);
        for (int ell = P.ell_min(); ell <= P.ell_max(); ++ell)
          for (int k = 0; k <= P.max_k(); ++k)
            for (const auto& cl : atom_classes(P, ell, k)) {
              auto r = r_seq(pp, cl.max);
              for (int s0 = 1; s0 < int(r.size()); ++s0) {
                if (!saturated(pp, cl.max, s0)) continue;
                for (int d0 = r[s0 - 1] + 1; d0 <= r[s0]; ++d0) {
                  auto tc = twisted_class(P, ell, k, cl.max, s0, d0);
                  const Echelon& im = P.image(ell, k);
                  t.check(im.contains(axpy(tc.vec, -1, cl.vec)), [&] {
                    return "x_twist - x_Ω not in im d1 at " + where(n, dK, I0, I1) + " ℓ=" + std::to_string(ell) +
                           " k=" + std::to_string(k) + " s0=" + std::to_string(s0) + " d0=" + std::to_string(d0);
                  });
                  int sign = (d0 - r[s0 - 1] - 1) % 2 ? 1 : -1;
                  if (im.contains(axpy(tc.vec, sign, cl.vec))) ++corrected;
                }
              }
            }
      });
  t.first += " (with the step sign (-1)^{d0-r-1}: " + std::to_string(corrected) + "/" + std::to_string(t.checks) + " hold)";
}

}  // namespace

std::string criterion_name(int id) {
  static const char* names[] = {"",
                                "CE-oracle equivalence",
                                "differential soundness",
                                "atom/E2 equivalence",
                                "quasi-isomorphism",
                                "degeneration",
                                "golden dimensions",
                                "cup structure",
                                "generator/codimension law",
                                "L-invariant moduli",
                                "twist membership"};
  if (id < 1 || id > kNumCriteria) throw InvalidArgument("no criterion " + std::to_string(id));
  return names[id];
}

CriterionResult run_criterion(int id, const VerifyOptions& opt) {
  static const std::function<void(Tally&, const VerifyOptions&)> runners[] = {
      levi_vs_ce, differential, atoms_vs_e2, diamond, degeneration, golden, cups, generators, moduli, twists};
  CriterionResult res;
  res.id = id;
  res.name = criterion_name(id);
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  try {
    runners[id - 1](t, opt);
  } catch (const std::exception& e) {
    t.check(false, [&] { return std::string("exception: ") + e.what(); });
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.checks = t.checks;
  res.failures = t.failures;
  res.pass = t.failures == 0 && t.checks > 0;
  res.detail = t.failures ? t.first : std::to_string(t.checks) + " checks";
  return res;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, const VerifyOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_done) {
  std::vector<int> todo = ids;
  if (todo.empty())
    for (int i = 1; i <= kNumCriteria; ++i) todo.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : todo) {
    out.push_back(run_criterion(id, opt));
    if (on_done) on_done(out.back());
  }
  return out;
}

}  // namespace steinext
