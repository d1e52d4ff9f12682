#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlax/laxbuild/laxbuild.hpp"
#include "qlax/laxverify/laxverify.hpp"
#include "qlax/painleve/painleve.hpp"
#include "qlax/quadcat/quadcat.hpp"
#include "qlax/reduction/reduction.hpp"

using namespace qlax;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, singular = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string lit(const RationalExpr& e) { return e.is_constant() ? e.constant_value().to_string() : e.to_string(); }

void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    write_atomic(path, text);
}

void emit_json(const std::string& path, const ojson& j) { emit(path, j.dump(2) + "\n"); }

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QLAX_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) n = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw UsageError("QLAX_THREADS must be a positive integer");
    }
  }
  return n;
}

/// Runs the jobs with at most thread_cap() in flight; results keep the input order.
template <typename R>
std::vector<R> run_capped(const std::vector<std::function<R()>>& jobs) {
  std::vector<R> out;
  out.reserve(jobs.size());
  const unsigned cap = thread_cap();
  for (std::size_t start = 0; start < jobs.size(); start += cap) {
    std::vector<std::future<R>> batch;
    for (std::size_t k = start; k < std::min(jobs.size(), start + cap); ++k)
      batch.push_back(std::async(cap == 1 ? std::launch::deferred : std::launch::async, jobs[k]));
    for (auto& f : batch) out.push_back(f.get());
  }
  return out;
}

std::vector<MapId> parse_cases(const std::string& text) {
  if (text == "all") return {MapId::IV, MapId::III, MapId::SIII};
  auto id = parse_map_id(text);
  if (!id) throw UsageError("unknown case: " + text);
  return {*id};
}

// ---------------------------------------------------------------- params file

struct ParamsFile {
  ExactConfig config;
  bool projective = false;
  ojson used;  // values after the derived entries are filled in
};

RationalExpr read_literal(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) throw UsageError("params: missing \"" + key + "\"");
  if (!j.at(key).is_string()) throw UsageError("params: \"" + key + "\" must be a literal string");
  try {
    return RationalExpr(GaussianRational::parse(j.at(key).get<std::string>()));
  } catch (const LiteralParseError& e) {
    throw UsageError("params: \"" + key + "\": " + e.what());
  }
}

ParamsFile load_params(const std::string& path, bool need_projective) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("params: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("params: expected an object");
  for (const char* k : {"a2", "f2"})
    if (j.contains(k)) throw UsageError(std::string("params: \"") + k + "\" is derived and cannot be given");
  for (const auto& [k, v] : j.items())
    if (k != "a0" && k != "a1" && k != "lambda" && k != "q" && k != "f0" && k != "f1" && k != "p")
      throw UsageError("params: unknown key \"" + k + "\"");

  ParamsFile pf;
  RationalExpr a0 = read_literal(j, "a0"), lambda = read_literal(j, "lambda");
  RationalExpr f0 = read_literal(j, "f0"), f1 = read_literal(j, "f1");
  if (j.contains("p")) {
    RationalExpr p = read_literal(j, "p");
    if (a0.is_zero() || p.is_zero()) throw UsageError("params: a0 and p must be nonzero");
    pf.config = projective_config(p, a0, lambda, f0, f1);
    pf.projective = true;
    if (j.contains("q") && !(read_literal(j, "q") == pf.config.q))
      throw UsageError("params: q must equal p^2 in projective mode");
    if (j.contains("a1") && !(read_literal(j, "a1") == pf.config.a1))
      throw UsageError("params: a1 must equal p/a0 in projective mode");
  } else {
    if (need_projective) throw UsageError("params: projective mode requires \"p\"");
    RationalExpr a1 = read_literal(j, "a1"), q = read_literal(j, "q");
    if (a0.is_zero() || a1.is_zero()) throw UsageError("params: a0 and a1 must be nonzero");
    if (f0.is_zero() || f1.is_zero()) throw UsageError("params: f0 and f1 must be nonzero");
    pf.config = ExactConfig::make(f0, f1, a0, a1, lambda, q);
  }
  const auto& c = pf.config;
  pf.used = {{"a0", lit(c.a0)}, {"a1", lit(c.a1)}, {"a2", lit(c.a2)}, {"lambda", lit(c.lambda)},
             {"q", lit(c.q)},   {"f0", lit(c.f0)}, {"f1", lit(c.f1)}, {"f2", lit(c.f2)}};
  if (pf.projective) pf.used["p"] = j.at("p").get<std::string>();
  return pf;
}

// ---------------------------------------------------------------- verify

struct TheoremOpts {
  std::string cases = "all", mode = "symbolic", out;
  int samples = 100;
  std::uint64_t seed = 7;
  bool converse = false, timing = false;
};

int verify_theorem_cmd(const TheoremOpts& o) {
  if (o.mode != "symbolic" && o.mode != "sampled") throw UsageError("mode must be symbolic or sampled");
  if (o.samples < 1) throw UsageError("samples must be positive");
  auto cases = parse_cases(o.cases);
  (void)PainleveSymbols{};
  (void)spectral_symbol();

  std::vector<std::function<ojson()>> jobs;
  for (MapId id : cases)
    jobs.push_back([id, &o] {
      auto t0 = std::chrono::steady_clock::now();
      VerificationReport r = verify_theorem(id, {o.mode == "sampled", o.samples, o.seed});
      r.elapsed_ms = -1;
      if (o.timing)
        r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      ojson j = to_json(r);
      if (o.converse) j["converse"] = to_json(verify_converse(id));
      return j;
    });
  auto reports = run_capped(jobs);

  bool all_ok = true;
  for (const auto& j : reports) {
    all_ok = all_ok && j["verified"].get<bool>();
    if (j.contains("converse")) all_ok = all_ok && j["converse"]["verified"].get<bool>();
  }
  if (reports.size() == 1) {
    emit_json(o.out, reports.front());
  } else {
    ojson j;
    j["verified"] = all_ok;
    j["seed"] = o.seed;
    j["cases"] = reports;
    emit_json(o.out, j);
  }
  return all_ok ? ok : failed;
}

int verify_regularity_cmd(const std::string& params, const std::string& out) {
  ExactConfig c = PainleveSymbols{}.generic();
  ojson used = "symbolic";
  if (!params.empty()) {
    auto pf = load_params(params, false);
    c = pf.config;
    used = pf.used;
  }
  RegularityReport reg = regularity_report(c);
  FactorizationReport fac = factorization_report();
  ojson j;
  j["verified"] = reg.verified() && fac.verified();
  j["parameters"] = used;
  j["regularity"] = to_json(reg);
  j["factorization"] = {{"verified", fac.verified()},
                        {"b_siii_is_third_factor", fac.b_siii_is_third_factor},
                        {"b_iii_is_shifted_product", fac.b_iii_is_shifted_product},
                        {"det_b_iv_is_one", fac.det_b_iv_is_one},
                        {"shared_spectral_matrix", fac.shared_spectral_matrix}};
  emit_json(out, j);
  return j["verified"].get<bool>() ? ok : failed;
}

int verify_consistency_cmd(const std::string& mode, int samples, std::uint64_t seed, const std::string& out) {
  if (mode != "symbolic" && mode != "sampled") throw UsageError("mode must be symbolic or sampled");
  if (samples < 1) throw UsageError("samples must be positive");
  ConsistencyOptions opt{mode == "sampled", samples, seed};
  auto params = ParameterSequences::free();
  // Serial on purpose: symbol creation order fixes the printed term order.
  ojson cubes = ojson::array();
  bool all_ok = true;
  for (auto [a, b, c] : {std::array{1, 2, 3}, std::array{1, 2, 4}, std::array{1, 3, 4}, std::array{2, 3, 4}}) {
    ConsistencyReport r = check_cube_consistency(system_cube(a, b, c, params), opt);
    all_ok = all_ok && r.consistent() && r.tetrahedron[0] && r.tetrahedron[1];
    cubes.push_back(r.to_json());
  }
  NamedEquationReport named = check_named_equations();
  bool affine = true;
  RationalExpr x(sym("alpha")), y(sym("beta"));
  for (const auto& k : {QuadKind::q1(x, y, sym("epsilon")), QuadKind::h3(x, y, sym("delta"), sym("epsilon")),
                        QuadKind::h1(x, y, sym("epsilon")), QuadKind::d4(sym("delta1"), sym("delta2"), sym("delta3"))})
    affine = affine && check_multiaffine(k);
  all_ok = all_ok && named.all() && affine;
  ojson j;
  j["verified"] = all_ok;
  j["mode"] = mode;
  j["samples"] = opt.sampled ? samples : 0;
  j["seed"] = seed;
  j["cubes"] = cubes;
  j["catalog"] = {{"multiaffine", affine},
                  {"schwarzian_kdv", named.schwarzian_kdv},
                  {"modified_kdv", named.modified_kdv},
                  {"potential_kdv", named.potential_kdv},
                  {"volterra", named.volterra}};
  emit_json(out, j);
  return all_ok ? ok : failed;
}

int verify_lax4d_cmd(const std::string& out) {
  Lax4dReport r = verify_lax4d();
  emit_json(out, r.to_json());
  return r.verified() ? ok : failed;
}

int verify_reduction_cmd(int lifts, int bridges, std::uint64_t seed, const std::string& out) {
  if (lifts < 1 || bridges < 1) throw UsageError("instance counts must be positive");
  ReductionReport r = verify_reduction(lifts, bridges, seed);
  ojson j = r.to_json();
  j["seed"] = seed;
  emit_json(out, j);
  return r.verified() ? ok : failed;
}

// ---------------------------------------------------------------- evolve / compare

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_complex(const std::complex<double>& z) { return fmt_double(z.real()) + ":" + fmt_double(z.imag()); }

template <typename S, typename F>
std::string orbit_csv(MapId id, const std::vector<OrbitRecord<S>>& recs, F fmt) {
  std::ostringstream os;
  os << "n,lambda_or_t,f0,f1,f2,singular\n";
  for (const auto& r : recs) {
    const auto& c = r.config;
    os << r.n << ',' << fmt(id == MapId::IV ? c.lambda : c.a0) << ',' << fmt(c.f0) << ',' << fmt(c.f1) << ','
       << fmt(c.f2) << ',' << (r.singular ? 1 : 0) << '\n';
  }
  return os.str();
}

int evolve_painleve_cmd(const std::string& case_text, int steps, const std::string& backend,
                        const std::string& params, const std::string& out, const std::string& report) {
  auto id = parse_map_id(case_text);
  if (!id) throw UsageError("unknown case: " + case_text);
  if (steps < 0) throw UsageError("steps must be non-negative");
  if (backend != "exact" && backend != "float") throw UsageError("backend must be exact or float");
  auto pf = load_params(params, false);

  bool hit = false;
  std::string location;
  ojson j;
  j["case"] = to_string(*id);
  j["backend"] = backend;
  j["steps"] = steps;
  j["parameters"] = pf.used;
  if (backend == "exact") {
    auto recs = orbit(*id, pf.config, steps);
    hit = recs.back().singular;
    location = recs.back().location;
    bool invariants = true;
    for (const auto& r : recs) invariants = invariants && check_invariants(r.config).holds();
    j["invariants_exact"] = invariants;
    emit(out, orbit_csv(*id, recs, lit));
  } else {
    auto recs = orbit(*id, to_float(pf.config), steps);
    hit = recs.back().singular;
    location = recs.back().location;
    auto drift = max_drift(recs);
    j["a_drift"] = drift.a_drift;
    j["f_drift"] = drift.f_drift;
    emit(out, orbit_csv(*id, recs, fmt_complex));
  }
  j["singular"] = hit;
  if (hit) j["base_point"] = location;
  if (!report.empty()) write_atomic(report, j.dump(2) + "\n");
  if (hit) std::cerr << "qlax: base point hit: " << location << "\n";
  return hit ? singular : ok;
}

int evolve_lattice_cmd(const std::string& box_text, const std::string& init_path, const std::string& params_kind,
                       std::uint64_t seed, const std::string& out, const std::string& report) {
  std::array<long, 4> n{};
  {
    char c1, c2, c3;
    std::istringstream is(box_text);
    if (!(is >> n[0] >> c1 >> n[1] >> c2 >> n[2] >> c3 >> n[3]) || c1 != ',' || c2 != ',' || c3 != ',' ||
        !is.eof())
      throw UsageError("box must be n1,n2,n3,n4");
    for (long v : n)
      if (v < 1) throw UsageError("box sizes must be positive");
  }
  Box box = Box::sized(n[0], n[1], n[2], n[3]);
  LatticePatch init(PatchKind::unreduced_u, ParameterSequences::free());
  std::mt19937_64 rng(seed);
  if (!init_path.empty()) {
    std::ifstream in(init_path);
    if (!in) throw UsageError("cannot read " + init_path);
    try {
      init = LatticePatch::from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("init patch: ") + e.what());
    } catch (const LiteralParseError& e) {
      throw UsageError(std::string("init patch: ") + e.what());
    }
  } else {
    ParameterSequences params = ParameterSequences::free();
    if (params_kind == "random") {
      std::array<std::map<long, RationalExpr>, 4> v;
      long top = std::max({n[0], n[1], n[2], n[3]});
      for (long l = 0; l <= top; ++l)
        for (int s = 0; s < 4; ++s) v[s][l] = RationalExpr(random_nonzero_gaussian_rational(rng, 9));
      params = ParameterSequences::explicit_values(v);
    } else if (params_kind == "reduced") {
      params = ReducedParameters::random(rng).sequences();
    } else {
      throw UsageError("params must be random or reduced");
    }
    init = random_initial_patch(box, params, rng);
  }
  LatticePatch patch(PatchKind::unreduced_u, ParameterSequences::free());
  AuditReport audit;
  try {
    std::tie(patch, audit) = evolve_patch(init, box);
  } catch (const InvalidInitialData& e) {
    throw UsageError(e.what());
  }
  ojson j = audit.to_json();
  j["seed"] = seed;
  j["box"] = box_text;
  emit_json(out, patch.to_json());
  if (!report.empty())
    write_atomic(report, j.dump(2) + "\n");
  else if (!out.empty())
    std::cout << j.dump(2) << "\n";
  if (!audit.passed()) return failed;
  return audit.undefined.empty() ? ok : singular;
}

int compare_projective_cmd(const std::string& params, int steps, const std::string& out) {
  if (steps < 2) throw UsageError("steps must be at least 2");
  auto pf = load_params(params, true);
  ProjectiveReport r = projective_reduction_compare(pf.config, steps);
  ojson j;
  j["verified"] = r.verified();
  j["parameters"] = pf.used;
  j["steps"] = r.steps;
  j["params_square"] = r.params_square;
  j["maps_square"] = r.maps_square;
  j["orbit_match"] = r.orbit_match;
  j["g_readoff"] = r.g_readoff;
  if (r.singular) j["base_point"] = *r.singular;
  emit_json(out, j);
  if (r.singular) return singular;
  return r.verified() ? ok : failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of Lax pairs for q-Painleve maps"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "Run a verification campaign");
  verify->require_subcommand(1);
  auto* evolve = app.add_subcommand("evolve", "Iterate a map or fill a lattice patch");
  evolve->require_subcommand(1);
  auto* compare = app.add_subcommand("compare", "Compare reductions");
  compare->require_subcommand(1);

  std::string out, params, report;
  std::uint64_t seed = 7;
  int samples = 100;

  TheoremOpts th;
  auto* theorem = verify->add_subcommand("theorem", "Compatibility of the Lax pair");
  theorem->add_option("--case", th.cases, "iv, iii, siii or all")->capture_default_str();
  theorem->add_option("--mode", th.mode, "symbolic or sampled")->capture_default_str();
  theorem->add_option("--samples", th.samples, "Samples in sampled mode")->capture_default_str();
  theorem->add_option("--seed", th.seed)->capture_default_str();
  theorem->add_option("--out", th.out, "Report JSON (stdout when omitted)");
  theorem->add_flag("--converse", th.converse, "Also solve the residual for the updates");
  theorem->add_flag("--timing", th.timing, "Record elapsed_ms");

  auto* regularity = verify->add_subcommand("regularity", "Spectral regularity and factorization");
  regularity->add_option("--params", params, "Params JSON (symbolic when omitted)");
  regularity->add_option("--out", out);

  std::string cmode = "symbolic";
  auto* consistency = verify->add_subcommand("consistency", "Cube consistency of the 4D system");
  consistency->add_option("--mode", cmode, "symbolic or sampled (sampled when --samples is given)");
  auto* samples_opt = consistency->add_option("--samples", samples)->capture_default_str();
  consistency->add_option("--seed", seed)->capture_default_str();
  consistency->add_option("--out", out);

  auto* lax4d = verify->add_subcommand("lax4d", "Lax consistency of the 4D system");
  lax4d->add_option("--out", out);

  int lifts = 20, bridges = 10;
  auto* reduction = verify->add_subcommand("reduction", "Geometric reduction to the IV map");
  reduction->add_option("--instances", lifts, "Random omega patches for the lift check")->capture_default_str();
  reduction->add_option("--bridge-instances", bridges, "Random instances for the dynamics bridge")
      ->capture_default_str();
  reduction->add_option("--seed", seed)->capture_default_str();
  reduction->add_option("--out", out);

  std::string case_text, backend = "exact";
  int steps = 10;
  auto* ev_p = evolve->add_subcommand("painleve", "Orbit of one map as CSV");
  ev_p->add_option("--case", case_text, "iv, iii or siii")->required();
  ev_p->add_option("--steps", steps)->capture_default_str();
  ev_p->add_option("--backend", backend, "exact or float")->capture_default_str();
  ev_p->add_option("--params", params, "Params JSON")->required();
  ev_p->add_option("--out", out, "Orbit CSV (stdout when omitted)");
  ev_p->add_option("--report", report, "Summary JSON");

  std::string box = "3,3,3,2", init, pkind = "random";
  auto* ev_l = evolve->add_subcommand("lattice", "Fill a box of the 4D lattice and audit all routes");
  ev_l->add_option("--box", box, "Sizes n1,n2,n3,n4")->capture_default_str();
  ev_l->add_option("--init", init, "Initial patch JSON (random axis data when omitted)");
  ev_l->add_option("--params", pkind, "random or reduced parameter sequences")->capture_default_str();
  ev_l->add_option("--seed", seed)->capture_default_str();
  ev_l->add_option("--out", out, "Patch JSON");
  ev_l->add_option("--report", report, "Audit JSON");

  int psteps = 10;
  auto* proj = compare->add_subcommand("projective", "SIII squared against III");
  proj->add_option("--params", params, "Params JSON with p")->required();
  proj->add_option("--steps", psteps)->capture_default_str();
  proj->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*theorem) return verify_theorem_cmd(th);
    if (*regularity) return verify_regularity_cmd(params, out);
    if (*consistency) {
      if (cmode == "symbolic" && samples_opt->count() > 0 && consistency->count("--mode") == 0) cmode = "sampled";
      return verify_consistency_cmd(cmode, samples, seed, out);
    }
    if (*lax4d) return verify_lax4d_cmd(out);
    if (*reduction) return verify_reduction_cmd(lifts, bridges, seed, out);
    if (*ev_p) return evolve_painleve_cmd(case_text, steps, backend, params, out, report);
    if (*ev_l) return evolve_lattice_cmd(box, init, pkind, seed, out, report);
    if (*proj) return compare_projective_cmd(params, psteps, out);
  } catch (const UsageError& e) {
    std::cerr << "qlax: " << e.what() << "\n";
    return usage;
  } catch (const BasePointHit& e) {
    std::cerr << "qlax: " << e.what() << "\n";
    return singular;
  } catch (const SingularSolve& e) {
    std::cerr << "qlax: " << e.what() << "\n";
    return singular;
  } catch (const SingularStep& e) {
    std::cerr << "qlax: " << e.what() << "\n";
    return singular;
  } catch (const ZeroDenominator& e) {
    std::cerr << "qlax: " << e.what() << "\n";
    return singular;
  } catch (const std::exception& e) {
    std::cerr << "qlax: " << e.what() << "\n";
    return failed;
  }
  return usage;
}
