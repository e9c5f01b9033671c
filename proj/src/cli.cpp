#include "mixedlink/cli.hpp"

#include "mixedlink/certify.hpp"
#include "mixedlink/config.hpp"
#include "mixedlink/family.hpp"
#include "mixedlink/random.hpp"
#include "mixedlink/sampler.hpp"
#include "mixedlink/torusmap.hpp"
#include "mixedlink/transversal.hpp"
#include "mixedlink/weights.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace mixedlink {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kHomogeneityTol = 1e-12;
constexpr double kFiberTol = 1e-10;
constexpr double kCurveTol = 1e-8;
constexpr std::size_t kHomogeneitySamples = 100;
constexpr std::size_t kFiberSamples = 100;

struct Outcome {
  ojson results;
  ojson summary;
  int code = kExitOk;
};

ojson weight_json(const WeightSystem& w) {
  ojson j;
  j["kind"] = to_string(w.kind);
  j["weights"] = w.weights;
  j["degree"] = w.degree;
  j["mixed_signs"] = w.mixed_signs();
  return j;
}

std::optional<WeightSystem> try_weight(const std::function<WeightSystem()>& solve, ojson& slot) {
  try {
    WeightSystem w = solve();
    slot = weight_json(w);
    return w;
  } catch (const WeightError& e) {
    slot = {{"error", to_string(e.kind())}, {"message", e.what()}};
    return std::nullopt;
  }
}

ojson graph_json(const InterconnGraph& g) {
  ojson j;
  j["vertices"] = g.vertices;
  auto edges = ojson::array();
  for (const auto& [u, v] : g.edges) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  auto comps = ojson::array();
  for (const auto& c : g.components) comps.push_back({{"vertices", c.vertices}, {"shape", to_string(c.shape)}});
  j["components"] = std::move(comps);
  return j;
}

ojson spec_json(const CyclicFamilySpec& spec) { return {{"n", spec.n()}, {"a", spec.a}, {"b", spec.b}}; }

const CyclicFamilySpec& need_spec(const RunConfig& cfg, const std::string& command) {
  if (!cfg.spec) throw ConfigError("command '" + command + "' needs 'a' and 'b'");
  return *cfg.spec;
}

void need_nonempty(const std::vector<double>& v, const std::string& key, const std::string& command) {
  if (v.empty()) throw ConfigError("command '" + command + "' needs a nonempty '" + key + "'");
}

SamplerOptions sampler_options(const RunConfig& cfg) {
  SamplerOptions o;
  o.zero_threshold_rel = cfg.zero_threshold;
  o.residual_tol = cfg.newton_tol;
  return o;
}

TransversalOptions transversal_options(const RunConfig& cfg) {
  TransversalOptions o;
  o.newton_tol = cfg.newton_tol;
  return o;
}

Outcome cmd_weights(const RunConfig& cfg, std::uint64_t seed) {
  if (!cfg.spec && !cfg.polynomial) throw ConfigError("command 'weights' needs 'a' and 'b' or 'polynomial'");
  Outcome o;
  bool ok = true;

  if (cfg.spec) {
    const CyclicFamilySpec& spec = *cfg.spec;
    ojson fam;
    fam["spec"] = spec_json(spec);
    const SpecReport rep = validate_spec(spec, !cfg.relax_spec);
    auto violations = ojson::array();
    for (auto v : rep.violations) violations.push_back(to_string(v));
    fam["validation"] = {{"ok", rep.ok()}, {"violations", std::move(violations)}};
    ok = ok && rep.ok();

    if (rep.structurally_valid()) {
      const MixedPolynomial f0 = make_cyclic(spec);
      const Integer formula = det_NM(spec);
      const Integer exact = bareiss_determinant(exponent_matrices(f0).difference_rows());
      fam["det_NM"] = formula.str();
      fam["det_NM_exact"] = exact.str();
      ok = ok && formula == exact;
      fam["graph"] = graph_json(variable_graph(f0));

      auto members = ojson::array();
      for (double t : {0.0, 0.5, 1.0}) {
        const FamilyMember m = make_member(spec, t);
        ojson mj;
        mj["t"] = t;
        mj["monomials"] = m.poly.size();
        mj["simplicial"] = is_simplicial(m.poly);
        ojson slot;
        const auto p = try_weight([&] { return polar_weight(m.poly); }, slot);
        mj["polar"] = slot;
        if (p) {
          bool relation = true;
          const std::size_t n = spec.n();
          for (std::size_t j = 0; j < n; ++j) {
            relation = relation && spec.a[j] * p->weights[j] + p->weights[(j + 1) % n] == p->degree;
          }
          const double residual = check_polar_homogeneity(m.poly, *p, kHomogeneitySamples, derive_seed(seed, {0}));
          mj["weight_relation_holds"] = relation;
          mj["homogeneity_residual"] = residual;
          ok = ok && relation && residual <= kHomogeneityTol;
        } else {
          ok = false;
        }
        if (t == 0.0 || t == 1.0) {
          ojson radial;
          try_weight([&] { return radial_weight(m.poly); }, radial);
          mj["radial"] = radial;
        }
        members.push_back(std::move(mj));
      }
      fam["members"] = std::move(members);
    }
    o.results["family"] = std::move(fam);
  }

  if (cfg.polynomial) {
    const MixedPolynomial& f = *cfg.polynomial;
    ojson pj;
    pj["polynomial"] = to_string(f);
    pj["simplicial"] = is_simplicial(f);
    pj["graph"] = graph_json(variable_graph(f));
    ojson slot;
    const auto p = try_weight([&] { return polar_weight(f); }, slot);
    pj["polar"] = slot;
    ojson radial;
    try_weight([&] { return radial_weight(f); }, radial);
    pj["radial"] = radial;
    if (p) {
      const double residual = check_polar_homogeneity(f, *p, kHomogeneitySamples, derive_seed(seed, {1}));
      pj["homogeneity_residual"] = residual;
      ok = ok && residual <= kHomogeneityTol;
    } else {
      ok = false;
    }
    o.results["polynomial"] = std::move(pj);
  }

  o.summary = {{"ok", ok}};
  o.code = ok ? kExitOk : kExitCheckFailed;
  return o;
}

Outcome cmd_certify(const RunConfig& cfg, std::uint64_t seed, unsigned jobs) {
  const CyclicFamilySpec& spec = need_spec(cfg, "certify");
  CertifyOptions opts;
  opts.sigma_rel_tol = cfg.sigma_tol;
  opts.nullity_samples = cfg.nullity_samples;
  opts.relax_spec = cfg.relax_spec;
  opts.jobs = jobs;
  opts.sampler = sampler_options(cfg);
  opts.transversal = transversal_options(cfg);

  TransversalityCertificate cert;
  try {
    cert = certify(spec, cfg.t_grid, cfg.r_list, cfg.samples_per_cell, seed, opts);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  Outcome o;
  ojson full = to_json(cert);
  o.summary = full["summary"];
  full.erase("summary");
  o.results = std::move(full);
  o.code = cert.summary.all_pass ? kExitOk : kExitCheckFailed;
  return o;
}

Outcome cmd_torus_map(const RunConfig& cfg, std::uint64_t seed) {
  if (!cfg.polynomial && !cfg.spec) throw ConfigError("command 'torus-map' needs 'polynomial' or 'a' and 'b'");
  const MixedPolynomial f = cfg.polynomial ? *cfg.polynomial : make_cyclic(*cfg.spec);
  Outcome o;
  o.results["polynomial"] = to_string(f);
  TorusMap tm;
  try {
    tm = build_torus_map(f);
  } catch (const TorusMapError& e) {
    o.results["error"] = to_string(e.kind());
    o.results["message"] = e.what();
    o.summary = {{"ok", false}};
    o.code = kExitCheckFailed;
    return o;
  }
  if (cfg.perturb_exponent) {
    const auto [i, j] = *cfg.perturb_exponent;
    if (i >= tm.E.rows() || j >= tm.E.cols()) throw ConfigError("'perturb_exponent' is out of range");
    RatMatrix E = tm.E;
    E(i, j) += 1;
    tm = with_exponent_matrix(tm, std::move(E));
    o.results["perturbed_entry"] = {i, j};
  }
  o.results["E"] = to_json(tm.E);
  o.results["target"] = to_json(tm.target);
  const double residual = check_fiber_preservation(tm, kFiberSamples, seed);
  o.results["fiber_residual"] = residual;
  o.results["fiber_samples"] = kFiberSamples;
  o.results["extendability"] = to_json(extendability_report(tm));
  const bool ok = residual <= kFiberTol;
  o.summary = {{"ok", ok}, {"fiber_tolerance", kFiberTol}};
  o.code = ok ? kExitOk : kExitCheckFailed;
  return o;
}

Outcome cmd_eta0(const RunConfig& cfg, std::uint64_t seed) {
  const CyclicFamilySpec& spec = need_spec(cfg, "eta0");
  need_nonempty(cfg.t_grid, "t_grid", "eta0");
  need_nonempty(cfg.r_list, "r_list", "eta0");
  need_nonempty(cfg.eta_grid, "eta_grid", "eta0");
  Outcome o;
  auto cells = ojson::array();
  bool ok = true;
  for (std::size_t ti = 0; ti < cfg.t_grid.size(); ++ti) {
    const FamilyMember m = make_member(spec, cfg.t_grid[ti]);
    for (std::size_t ri = 0; ri < cfg.r_list.size(); ++ri) {
      TubeEstimate est;
      try {
        est = estimate_eta0(m, cfg.r_list[ri], cfg.eta_grid, cfg.samples_per_cell, derive_seed(seed, {ti, ri}),
                            cfg.sigma_tol, sampler_options(cfg));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      ojson cj;
      cj["t"] = est.t;
      cj["r"] = est.r;
      cj["eta0"] = est.eta0;
      cj["max_abs_f"] = est.max_abs_f;
      auto levels = ojson::array();
      for (const auto& l : est.levels) {
        levels.push_back({{"eta", l.eta},
                          {"converged", l.converged},
                          {"nonconverged", l.nonconverged},
                          {"rank_failures", l.rank_failures},
                          {"worst_sigma_ratio", l.worst_sigma_ratio},
                          {"vacuous", l.vacuous},
                          {"passed", l.passed}});
      }
      cj["levels"] = std::move(levels);
      cj["failures"] = est.failures;
      ok = ok && est.eta0 > 0.0;
      cells.push_back(std::move(cj));
    }
  }
  o.results["estimates"] = std::move(cells);
  o.summary = {{"ok", ok}, {"note", "numerical probe, not a certified bound"}};
  o.code = ok ? kExitOk : kExitCheckFailed;
  return o;
}

// CSV rows s, r_1..r_n, Re w_1, Im w_1, ..., residual, tolerance.
int cmd_trace(const RunConfig& cfg, std::uint64_t seed, std::ostream& sink, std::ostream& err) {
  const CyclicFamilySpec& spec = need_spec(cfg, "trace");
  if (!cfg.t || !cfg.r) throw ConfigError("command 'trace' needs 't' and 'r'");
  if (!(*cfg.t >= 0.0 && *cfg.t <= 1.0)) throw ConfigError("'t' must lie in [0, 1]");
  if (!(*cfg.r > 0.0)) throw ConfigError("'r' must be positive");
  for (double s : cfg.s_grid)
    if (!(std::abs(s) <= 0.5)) throw ConfigError("'s_grid' values must satisfy |s| <= 0.5");
  if (cfg.s_grid.empty()) return kExitOk;

  const FamilyMember m = make_member(spec, *cfg.t);
  const SampleBatch batch = sample_link(m, *cfg.r, 1, seed, sampler_options(cfg));
  if (batch.samples.empty()) {
    err << "trace: could not sample a base point: " << batch.diagnostics.front().message << "\n";
    return kExitCheckFailed;
  }
  const LinkSample& base = batch.samples.front();
  if (!base.nullity.empty()) {
    err << "trace: base point lies on a coordinate plane; curve tracing needs an empty nullity set\n";
    return kExitCheckFailed;
  }
  std::vector<CurvePoint> points;
  try {
    points = trace_curve(m, base, cfg.s_grid, transversal_options(cfg));
  } catch (const TransversalError& e) {
    err << "trace: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitCheckFailed;
  }
  const std::size_t n = spec.n();
  double norm2 = 0.0;
  for (const auto& x : base.w) norm2 += std::norm(x);
  const double tol = kCurveTol * (1.0 + std::pow(std::sqrt(norm2), m.poly.max_total_degree()));

  std::ostringstream os;
  os << std::setprecision(17);
  os << "s";
  for (std::size_t j = 1; j <= n; ++j) os << ",r" << j;
  for (std::size_t j = 1; j <= n; ++j) os << ",w" << j << "_re,w" << j << "_im";
  os << ",residual,tolerance\n";
  bool ok = true;
  for (const auto& p : points) {
    os << p.s;
    for (double r : p.r) os << "," << r;
    for (const auto& x : p.w) os << "," << x.real() << "," << x.imag();
    os << "," << p.residual << "," << tol << "\n";
    ok = ok && p.residual <= tol;
  }
  sink << os.str();
  if (!ok) err << "trace: curve identity residual above tolerance\n";
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transversality certification for the cyclic mixed polynomial family", "mixedlink"};
  std::string command;
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed_override;
  unsigned jobs = 1;
  app.add_option("command", command, "weights | certify | trace | torus-map | eta0")
      ->required()
      ->check(CLI::IsMember({"weights", "certify", "trace", "torus-map", "eta0"}));
  app.add_option("--config", config_path, "YAML run configuration")->required();
  app.add_option("--out", out_path, "output file (default: config 'out', else stdout)");
  app.add_option("--seed", seed_override, "overrides the config seed");
  app.add_option("--jobs", jobs, "worker threads for certify")->check(CLI::PositiveNumber);
  app.set_version_flag("--version", std::string("mixedlink ") + kVersion);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "mixedlink " << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mixedlink: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  RunConfig cfg;
  try {
    cfg = load_config(config_path);
    if (seed_override) cfg.seed = seed_override;
    if (!cfg.seed) throw ConfigError("'seed' is required (or pass --seed)");
  } catch (const ConfigError& e) {
    err << e.diagnostic(config_path) << "\n";
    return kExitUsage;
  }
  const std::uint64_t seed = *cfg.seed;
  const std::string target = !out_path.empty() ? out_path : cfg.out.value_or("");

  std::ofstream file;
  if (!target.empty()) {
    file.open(target, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "mixedlink: cannot open output file " << target << "\n";
      return kExitUsage;
    }
  }
  std::ostream& sink = target.empty() ? out : file;

  try {
    if (command == "trace") return cmd_trace(cfg, seed, sink, err);

    Outcome o;
    if (command == "weights") {
      o = cmd_weights(cfg, seed);
    } else if (command == "certify") {
      o = cmd_certify(cfg, seed, jobs);
    } else if (command == "torus-map") {
      o = cmd_torus_map(cfg, seed);
    } else {
      o = cmd_eta0(cfg, seed);
    }
    ojson report;
    report["version"] = kVersion;
    report["config"] = to_json(cfg);
    report["command"] = command;
    report["results"] = std::move(o.results);
    report["summary"] = std::move(o.summary);
    sink << report.dump(2) << "\n";
    return o.code;
  } catch (const ConfigError& e) {
    err << e.diagnostic(config_path) << "\n";
    return kExitUsage;
  }
}

}  // namespace mixedlink
