// steinext: command line front end.  Every subcommand prints one JSON document
// (or a plain table with --format table) to stdout.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "steinext/linv.hpp"
#include "steinext/verify.hpp"

using namespace steinext;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Common {
  int n = 0;
  int dK = 1;
};

std::string set_str(Mask m) { return format_set(m); }

json tuple_list(const Context& ctx, const std::vector<Tuple>& ts) {
  json a = json::array();
  for (const auto& t : ts) a.push_back(format_tuple(ctx, t));
  return a;
}

std::string qstr(const Q& q) { return q.get_str(); }

Q parse_q(const json& j) {
  if (j.is_number_integer()) return Q(j.get<long>());
  if (!j.is_string()) throw InvalidArgument("expected a rational given as \"p/q\"");
  Q q;
  if (q.set_str(j.get<std::string>(), 10) != 0) throw InvalidArgument("malformed rational: " + j.get<std::string>());
  q.canonicalize();
  return q;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- JSON encodings of the L-invariant types ----

json params_to_json(const LInvariantParams& p) {
  json list = json::array();
  for (const auto& [key, v] : p.L)
    list.push_back({{"alpha", {key.first.i, key.first.j}}, {"iota", key.second}, {"L", qstr(v)}});
  return {{"n", p.n}, {"deg", p.dK}, {"params", list}};
}

LInvariantParams params_from_json(const json& j, int n, int dK) {
  LInvariantParams p{n, dK, {}};
  const json* list = &j;
  if (j.is_object()) {
    p.n = j.value("n", n);
    p.dK = j.value("deg", dK);
    list = &j.at("params");
  }
  for (const auto& e : *list) {
    auto a = e.at("alpha");
    PositiveRoot r{a.at(0).get<int>(), a.at(1).get<int>()};
    if (!p.L.emplace(std::make_pair(r, e.at("iota").get<int>()), parse_q(e.at("L"))).second)
      throw InvalidArgument("duplicate (alpha, iota) in params");
  }
  p.validate();
  return p;
}

json hyperplane_to_json(const Hyperplane& h) {
  json phi = json::array();
  for (const auto& c : h.phi) phi.push_back(qstr(c));
  json basis = e_manifest(h.n, h.dK, full_mask(h.n), 0);
  return {{"n", h.n}, {"deg", h.dK}, {"basis", basis}, {"phi", phi}};
}

Hyperplane hyperplane_from_json(const json& j) {
  Hyperplane h;
  h.n = j.at("n").get<int>();
  h.dK = j.at("deg").get<int>();
  for (const auto& c : j.at("phi")) h.phi.push_back(parse_q(c));
  if (j.contains("basis") && j.at("basis") != json(e_manifest(h.n, h.dK, full_mask(h.n), 0)))
    throw InvalidArgument("hyperplane basis manifest does not match this build");
  return h;
}

json report_to_json(const BSReport& r) {
  json j = {{"ok", r.ok}};
  if (!r.ok) {
    j["condition"] = r.condition;
    j["I0"] = set_str(r.I0);
    j["I2"] = set_str(r.I2);
    if (r.condition == 2) j["I4"] = set_str(r.I4);
    j["message"] = r.message;
  }
  return j;
}

// ---- cache ----

// Bump when the output of any subcommand changes.
constexpr const char* kCacheVersion = "2";

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

fs::path cache_dir() {
  if (const char* d = std::getenv("STEINEXT_CACHE_DIR")) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME")) return fs::path(x) / "steinext";
  if (const char* h = std::getenv("HOME")) return fs::path(h) / ".cache" / "steinext";
  return fs::temp_directory_path() / "steinext-cache";
}

struct Cache {
  bool enabled = true;
  std::string key;

  fs::path file() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx.json", static_cast<unsigned long long>(fnv1a(key)));
    return cache_dir() / buf;
  }
  bool load(std::string& out) const {
    if (!enabled) return false;
    std::ifstream in(file());
    if (!in) return false;
    std::string first;
    std::getline(in, first);
    if (first != key) return false;  // hash collision
    std::stringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
  }
  void store(const std::string& out) const {
    if (!enabled) return;
    std::error_code ec;
    fs::create_directories(cache_dir(), ec);
    if (ec) return;
    fs::path tmp = file();
    tmp += ".tmp";
    {
      std::ofstream o(tmp);
      if (!o) return;
      o << key << "\n" << out;
    }
    fs::rename(tmp, file(), ec);
  }
};

// ---- subcommands ----

json cmd_cohomology(const Common& c, Mask I, bool with_ce) {
  const Context& ctx = context(c.n, c.dK);
  auto dims = levi_dims(ctx, I);
  json j = {{"n", c.n}, {"deg", c.dK}, {"I", set_str(I)}, {"block_sizes", block_sizes(c.n, I)}, {"dims", dims}};
  if (with_ce) {
    auto ce = ce_cohomology(levi_lie_algebra(c.n, c.dK, I));
    j["ce_dims"] = ce;
    while (dims.size() > 1 && dims.back() == 0) dims.pop_back();
    j["ce_agrees"] = dims == ce;
  }
  return j;
}

json page_rows(const Page& P, bool e2) {
  json rows = json::array();
  for (int k = 0; k <= P.max_k(); ++k) {
    json row = json::array();
    bool any = false;
    for (int ell = P.ell_min(); ell <= P.ell_max(); ++ell) {
      int d = e2 ? P.e2_dim(ell, k) : P.e1_dim(ell, k);
      any = any || d;
      row.push_back(d);
    }
    if (any) rows.push_back({{"k", k}, {"dims", row}});
  }
  return rows;
}

json cmd_page(const Common& c, Mask I0, Mask I1, bool e2) {
  if (I0 & ~I1) throw InvalidArgument("need I0 ⊆ I1");
  Page& P = page(c.n, c.dK, I0, I1);
  json j = {{"n", c.n}, {"deg", c.dK}, {"I0", set_str(I0)}, {"I1", set_str(I1)},
            {"ell_min", P.ell_min()}, {"ell_max", P.ell_max()}, {"rows", page_rows(P, e2)}};
  if (e2) {
    json psi = json::array();
    for (int ell = P.ell_min(); ell <= P.ell_max(); ++ell) {
      int b = bottom_row(P, ell);
      for (int k : {b, b + 1}) {
        if (!P.valid(ell, k)) continue;
        std::vector<Tuple> ts;
        for (const auto& cl : enumerate_psi(P, ell, k)) ts.push_back(cl.max);
        psi.push_back({{"ell", ell}, {"k", k}, {"atoms", tuple_list(P.ctx(), ts)}});
      }
    }
    j["psi"] = psi;
  }
  return j;
}

json cmd_degeneration(const Common& c, Mask I0, Mask I1) {
  if (I0 & ~I1) throw InvalidArgument("need I0 ⊆ I1");
  auto r = degeneration_check(c.n, c.dK, I0, I1);
  json table = json::array();
  for (const auto& [v, m] : r.table)
    for (const auto& [t, pr] : m)
      table.push_back({{"val", set_str(v)}, {"degree", t}, {"total", pr.first}, {"e2", pr.second}});
  return {{"n", c.n}, {"deg", c.dK}, {"I0", set_str(I0)}, {"I1", set_str(I1)}, {"ok", r.ok}, {"table", table}};
}

json cmd_ext(const Common& c, Mask I0, Mask I1, Mask I2, Mask I3, const std::string& grading) {
  Mask F = full_mask(c.n);
  ExtGrading g = (I1 == F && I3 == F) ? ExtGrading::representation : ExtGrading::complex;
  if (grading == "complex") g = ExtGrading::complex;
  if (grading == "representation") g = ExtGrading::representation;
  auto p = ext_profile(c.n, c.dK, I0, I1, I2, I3, g);
  json dims = json::object();
  for (const auto& [h, d] : p.dims) dims[std::to_string(h)] = d;
  json j = {{"n", c.n},
            {"deg", c.dK},
            {"I0", set_str(I0)},
            {"I1", set_str(I1)},
            {"I2", set_str(I2)},
            {"I3", set_str(I3)},
            {"grading", g == ExtGrading::representation ? "representation" : "complex"},
            {"vanishes", p.vanishes},
            {"h_min", p.h_min},
            {"dims", dims}};
  if (!p.vanishes) {
    const Context& ctx = context(c.n, c.dK);
    json graded = json::object();
    for (const auto& [h, v] : p.graded) {
      json labels = json::array();
      for (const auto& ts : p.psi.at(h)) labels.push_back(tuple_list(ctx, ts));
      graded[std::to_string(h)] = {{"dims", v}, {"psi", labels}};
    }
    j["graded"] = graded;
    j["dim_E"] = p.dim(p.h_min);
  }
  return j;
}

json cmd_cup(const Common& c, Mask I0, Mask I1, Mask I2, Mask I4, bool table) {
  auto r = cup_chain_report(c.n, c.dK, I0, I1, I2, I4);
  json j = {{"n", c.n},
            {"deg", c.dK},
            {"I0", set_str(I0)},
            {"I1", set_str(I1)},
            {"I2", set_str(I2)},
            {"I4", set_str(I4)},
            {"contexts", r.contexts},
            {"products", r.products},
            {"injective", r.injective},
            {"sign_constant", r.normalized_sign_constant},
            {"raw_sign_constant", r.raw_sign_constant},
            {"bijective", r.bijective},
            {"do_not_connect", r.do_not_connect},
            {"swap_law", r.swap_law},
            {"separated_checked", r.separated_checked},
            {"separated_agree", r.separated_agree},
            {"ok", r.ok()}};
  if (!r.first_failure.empty()) j["first_failure"] = r.first_failure;
  if (table) {
    const Context& ctx = context(c.n, c.dK);
    json ts = json::array();
    for (const auto& cc : cup_contexts(c.n, c.dK, I0, I1, I2, I4)) {
      auto t = cup_table(cc);
      json prods = json::array();
      for (int a = 0; a < t.nA; ++a)
        for (int b = 0; b < t.nB; ++b) {
          const auto& p = t.products[size_t(a) * t.nB + b];
          prods.push_back({{"omega0", a}, {"omega1", b}, {"sign", p.sign}, {"omega2", p.omega2}, {"max", format_tuple(ctx, p.max)}});
        }
      json e = {{"ell0", cc.ell0}, {"ell1", cc.ell1}, {"k0", cc.k0}, {"k1", cc.k1}, {"nA", t.nA}, {"nB", t.nB}, {"nC", t.nC}};
      if (t.normalized_sign) e["sign"] = *t.normalized_sign;
      e["products"] = prods;
      ts.push_back(e);
    }
    j["tables"] = ts;
  }
  return j;
}

json cmd_basis(const Common& c, Mask I0, Mask I2) {
  auto B = basis_X(c.n, c.dK, I0, I2);
  json vecs = json::array();
  for (size_t i = 0; i < B.vectors.size(); ++i) {
    json coords = json::object();
    for (const auto& [k, v] : B.vectors[i].v) coords[std::to_string(k)] = qstr(v);
    json parts = json::array();
    for (Mask m : B.partition_of[i]) parts.push_back(set_str(m));
    vecs.push_back({{"partition", parts}, {"coords", coords}});
  }
  return {{"n", c.n},         {"deg", c.dK},          {"I0", set_str(I0)},
          {"I2", set_str(I2)}, {"dim", B.expected},    {"rank", B.rank},
          {"basis", e_manifest(c.n, c.dK, I0, I2)},   {"vectors", vecs}};
}

json cmd_galois(const Common& c) {
  auto u = universal_dim(c.n, c.dK);
  json j = {{"n", c.n}, {"deg", c.dK}, {"dim", u.dim}, {"trace", u.trace},
            {"interval_partition_count", interval_partition_count(c.n, c.dK)}};
  if (c.n >= 2 && c.n <= 5) j["dim_E"] = e_dim(c.n, c.dK, full_mask(c.n), 0);
  return j;
}

std::string render(const json& j, const std::string& format, const std::string& cmd) {
  if (format != "table") return j.dump(2) + "\n";
  std::ostringstream os;
  if ((cmd == "page" || cmd == "e2") && j.contains("rows")) {
    os << "k \\ ell";
    for (int l = j["ell_min"].get<int>(); l <= j["ell_max"].get<int>(); ++l) os << "\t" << l;
    os << "\n";
    for (const auto& r : j["rows"]) {
      os << r["k"].get<int>();
      for (const auto& d : r["dims"]) os << "\t" << d.get<int>();
      os << "\n";
    }
    return os.str();
  }
  if (cmd == "galois") {
    for (const auto& t : j["trace"]) os << t.get<std::string>() << "\n";
    os << "dim = " << j["dim"].get<long>() << "\n";
    return os.str();
  }
  return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ext groups between generalized Steinberg representations of GL_n"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  bool no_cache = false;
  app.add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_flag("--no-cache", no_cache, "do not read or write the result cache");

  Common c;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--n", c.n, "rank n")->required()->check(CLI::Range(1, kMaxN));
    s->add_option("--deg", c.dK, "d_K = number of embeddings")->check(CLI::Range(1, 8));
  };
  std::string i0 = "-", i1 = "all", i2 = "-", i3 = "all", i4 = "-", iset = "-", grading = "auto";
  auto full_or = [&](const std::string& s) { return s == "all" ? full_mask(c.n) : parse_set(s, c.n); };

  auto* coh = app.add_subcommand("cohomology", "cohomology dims of the Levi quotient L_I");
  add_common(coh);
  coh->add_option("--i", iset, "root subset I");
  bool with_ce = false;
  coh->add_flag("--ce", with_ce, "also run the Chevalley-Eilenberg oracle");

  auto* pg = app.add_subcommand("page", "E1 dims of the Tits page (I0, I1)");
  auto* e2 = app.add_subcommand("e2", "E2 dims and atom bases of the Tits page (I0, I1)");
  auto* dg = app.add_subcommand("degeneration", "compare E2 with the total cohomology");
  for (auto* s : {pg, e2, dg}) {
    add_common(s);
    s->add_option("--i0", i0, "I0 (default ∅)");
    s->add_option("--i1", i1, "I1 (default Δ)");
  }

  auto* ext = app.add_subcommand("ext", "Ext profile between generalized Steinbergs");
  add_common(ext);
  ext->add_option("--i0", i0)->required();
  ext->add_option("--i1", i1, "default Δ");
  ext->add_option("--i2", i2)->required();
  ext->add_option("--i3", i3, "default Δ");
  ext->add_option("--grading", grading, "auto, complex or representation")
      ->check(CLI::IsMember({"auto", "complex", "representation"}));

  auto* cp = app.add_subcommand("cup", "cup products for a chain I4 ⊆ I2 ⊆ I0 ⊆ I1");
  add_common(cp);
  cp->add_option("--i0", i0)->required();
  cp->add_option("--i1", i1, "default Δ");
  cp->add_option("--i2", i2)->required();
  cp->add_option("--i4", i4)->required();
  bool cup_table_flag = false;
  cp->add_flag("--table", cup_table_flag, "list every product");

  auto* bs = app.add_subcommand("basis", "cup-product basis of the bottom Ext group E_{I0,I2}");
  add_common(bs);
  bs->add_option("--i0", i0)->required();
  bs->add_option("--i2", i2)->required();

  auto* lv = app.add_subcommand("linv", "L-invariants");
  lv->require_subcommand(1);
  lv->fallthrough();
  auto* to_w = lv->add_subcommand("to-w", "parameters -> hyperplane");
  auto* from_w = lv->add_subcommand("from-w", "hyperplane -> parameters");
  auto* check = lv->add_subcommand("check", "run the invariant conditions on a hyperplane");
  auto* rt = lv->add_subcommand("roundtrip", "random parameters through both directions");
  std::string params_file, hyper_file;
  bool random_flag = false;
  unsigned long seed = 1;
  int samples = 10;
  add_common(to_w);
  to_w->add_option("--params", params_file, "JSON file with the parameters");
  to_w->add_flag("--random", random_flag, "use seeded random parameters");
  to_w->add_option("--seed", seed);
  from_w->add_option("--hyperplane", hyper_file)->required();
  check->add_option("--hyperplane", hyper_file)->required();
  add_common(rt);
  rt->add_option("--samples", samples)->check(CLI::Range(1, 100000));
  rt->add_option("--seed", seed);

  auto* gal = app.add_subcommand("galois", "dimension of the universal extension");
  add_common(gal);

  auto* ver = app.add_subcommand("verify", "run the acceptance suite");
  std::vector<int> criteria;
  VerifyOptions vopt;
  ver->add_option("--criteria", criteria, "criterion ids (default: all)")->delimiter(',');
  ver->add_option("--samples", vopt.samples, "samples per (n, d_K) for the moduli suite");
  ver->add_option("--seed", vopt.seed);
  bool quick = false;
  ver->add_flag("--quick", quick, "skip the extended ranges");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ver->parsed()) {
      vopt.extended = !quick;
      bool all = true;
      json results = json::array();
      run_acceptance(criteria, vopt, [&](const CriterionResult& r) {
        all = all && r.pass;
        if (format == "table") {
          std::printf("%s criterion %d (%s): %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
          std::fflush(stdout);
        }
        results.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"checks", r.checks},
                           {"failures", r.failures}, {"detail", r.detail}});
      });
      if (format != "table") std::cout << json{{"pass", all}, {"criteria", results}}.dump(2) << "\n";
      return all ? 0 : 1;
    }

    // cache key: the command line minus cache flags, plus the contents of input files
    Cache cache;
    cache.enabled = !no_cache;
    cache.key = std::string(kCacheVersion) + "\x1f";
    for (int i = 1; i < argc; ++i)
      if (std::string(argv[i]) != "--no-cache") cache.key += std::string(argv[i]) + "\x1f";
    if (!params_file.empty()) cache.key += slurp(params_file);
    if (!hyper_file.empty()) cache.key += slurp(hyper_file);
    for (char& ch : cache.key)
      if (ch == '\n') ch = ' ';

    std::string out;
    std::string cmd = app.get_subcommands().front()->get_name();
    if (cache.load(out)) {
      std::cout << out;
      return 0;
    }

    json j;
    if (coh->parsed()) j = cmd_cohomology(c, parse_set(iset, c.n), with_ce);
    else if (pg->parsed()) j = cmd_page(c, parse_set(i0, c.n), full_or(i1), false);
    else if (e2->parsed()) j = cmd_page(c, parse_set(i0, c.n), full_or(i1), true);
    else if (dg->parsed()) j = cmd_degeneration(c, parse_set(i0, c.n), full_or(i1));
    else if (ext->parsed()) j = cmd_ext(c, parse_set(i0, c.n), full_or(i1), parse_set(i2, c.n), full_or(i3), grading);
    else if (cp->parsed()) j = cmd_cup(c, parse_set(i0, c.n), full_or(i1), parse_set(i2, c.n), parse_set(i4, c.n), cup_table_flag);
    else if (bs->parsed()) j = cmd_basis(c, parse_set(i0, c.n), parse_set(i2, c.n));
    else if (gal->parsed()) j = cmd_galois(c);
    else if (to_w->parsed()) {
      LInvariantParams p;
      if (random_flag) {
        std::mt19937_64 rng(seed);
        p = random_params(c.n, c.dK, rng);
      } else if (!params_file.empty()) {
        p = params_from_json(read_json_file(params_file), c.n, c.dK);
      } else {
        throw InvalidArgument("linv to-w: give --params FILE or --random");
      }
      j = {{"params", params_to_json(p)}, {"hyperplane", hyperplane_to_json(params_to_hyperplane(p))}};
    } else if (from_w->parsed()) {
      auto jh = read_json_file(hyper_file);
      j = params_to_json(hyperplane_to_params(hyperplane_from_json(jh.contains("hyperplane") ? jh["hyperplane"] : jh)));
    } else if (check->parsed()) {
      auto jh = read_json_file(hyper_file);
      Hyperplane h = hyperplane_from_json(jh.contains("hyperplane") ? jh["hyperplane"] : jh);
      j = {{"bs_invariant", report_to_json(is_bs_invariant(h))}, {"interval_conditions", report_to_json(simple_condition(h))}};
    } else if (rt->parsed()) {
      std::mt19937_64 rng(seed);
      int ok = 0;
      for (int s = 0; s < samples; ++s) {
        auto p = random_params(c.n, c.dK, rng);
        Hyperplane h = params_to_hyperplane(p);
        if (hyperplane_to_params(h).L == p.L && is_bs_invariant(h).ok) ++ok;
      }
      out = std::to_string(ok) + "/" + std::to_string(samples) + " ok\n";
      cache.store(out);
      std::cout << out;
      return ok == samples ? 0 : 1;
    }
    out = render(j, format, cmd);
    cache.store(out);
    std::cout << out;
    return 0;
  } catch (const TheoremViolation& e) {
    std::cerr << json{{"error", "theorem_violation"}, {"message", e.what()}}.dump() << "\n";
    return 3;
  } catch (const InvalidArgument& e) {
    std::cerr << json{{"error", "invalid_argument"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "invalid_argument"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
}
