#include "mixedlink/certify.hpp"

#include "mixedlink/parallel.hpp"
#include "mixedlink/random.hpp"

#include <algorithm>
#include <stdexcept>

namespace mixedlink {

namespace {

void subsets_of_size(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& current,
                     std::vector<std::vector<std::size_t>>& out) {
  if (current.size() == k) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    current.push_back(i);
    subsets_of_size(n, k, i + 1, current, out);
    current.pop_back();
  }
}

struct CellResult {
  std::vector<CertRecord> records;
  std::vector<CellDiagnostic> diagnostics;
};

CellResult run_cell(const CyclicFamilySpec& spec, double t, double r, std::size_t ti, std::size_t ri,
                    std::size_t samples_per_cell, std::uint64_t seed, const CertifyOptions& options) {
  CellResult cell;
  const FamilyMember member = make_member(spec, t);

  const SampleBatch generic = sample_link(member, r, samples_per_cell, derive_seed(seed, {ti, ri, 0}),
                                          options.sampler);
  for (const auto& s : generic.samples)
    cell.records.push_back(certify_sample(member, s, SampleSource::Generic, options));
  for (const auto& d : generic.diagnostics) cell.diagnostics.push_back({t, r, {}, d});

  if (options.nullity_samples == 0) return cell;
  const auto patterns = feasible_nullity_patterns(member, options.max_nullity_size);
  for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
    const SampleBatch batch = sample_with_nullity(member, r, patterns[pi], options.nullity_samples,
                                                  derive_seed(seed, {ti, ri, 1, pi}), options.sampler);
    for (const auto& s : batch.samples)
      cell.records.push_back(certify_sample(member, s, SampleSource::Nullity, options));
    for (const auto& d : batch.diagnostics) cell.diagnostics.push_back({t, r, patterns[pi], d});
  }
  return cell;
}

nlohmann::ordered_json real_parts(const ComplexVector& v) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& x : v) out.push_back(x.real());
  return out;
}

nlohmann::ordered_json imag_parts(const ComplexVector& v) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& x : v) out.push_back(x.imag());
  return out;
}

}  // namespace

std::string to_string(SampleSource source) { return source == SampleSource::Generic ? "generic" : "nullity"; }

std::vector<std::vector<std::size_t>> feasible_nullity_patterns(const FamilyMember& member, std::size_t cap) {
  const std::size_t n = member.spec.n();
  const std::size_t max_size = std::min(cap, n - 1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 1; k <= max_size; ++k) {
    std::vector<std::vector<std::size_t>> all;
    std::vector<std::size_t> current;
    subsets_of_size(n, k, 0, current, all);
    for (auto& p : all)
      if (nullity_feasible(member, p)) out.push_back(std::move(p));
  }
  return out;
}

CertRecord certify_sample(const FamilyMember& member, const LinkSample& sample, SampleSource source,
                          const CertifyOptions& options) {
  CertRecord rec;
  rec.t = sample.t;
  rec.r = sample.r;
  rec.source = source;
  rec.sample = sample;
  rec.endpoint = member.t == 0.0 || member.t == 1.0;

  const DirectCheck dc = direct_check(member, sample.w);
  rec.sigma_min = dc.sigma_min;
  rec.sigma_max = dc.sigma_max;
  rec.direct_pass = dc.passes(options.sigma_rel_tol);

  try {
    rec.germ = curve_germ(member, sample, options.transversal);
    rec.constructive_pass = rec.germ->passes(options.transversal);
  } catch (const TransversalError& e) {
    rec.germ_error = to_string(e.kind()) + ": " + e.what();
    rec.constructive_pass = false;
  }

  rec.disagreement = rec.direct_pass != rec.constructive_pass;
  rec.pass = rec.endpoint ? rec.direct_pass : (rec.direct_pass && rec.constructive_pass);
  return rec;
}

TransversalityCertificate certify(const CyclicFamilySpec& spec, const std::vector<double>& t_grid,
                                  const std::vector<double>& r_list, std::size_t samples_per_cell,
                                  std::uint64_t seed, const CertifyOptions& options) {
  const SpecReport report = validate_spec(spec, !options.relax_spec);
  if (options.relax_spec ? !report.structurally_valid() : !report.ok()) {
    std::string msg = "spec fails validation";
    for (std::size_t k = 0; k < report.violations.size(); ++k)
      msg += (k == 0 ? ": " : "; ") + to_string(report.violations[k]);
    throw std::invalid_argument(msg);
  }
  for (double t : t_grid)
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("t grid values must lie in [0, 1]");
  for (double r : r_list)
    if (!(r > 0.0)) throw std::invalid_argument("radii must be positive");

  TransversalityCertificate cert;
  cert.spec = spec;
  cert.t_grid = t_grid;
  cert.r_list = r_list;
  cert.samples_per_cell = samples_per_cell;
  cert.seed = seed;

  const std::size_t cells = t_grid.size() * r_list.size();
  std::vector<CellResult> results(cells);
  parallel_for(cells, options.jobs, [&](std::size_t c) {
    const std::size_t ti = c / r_list.size();
    const std::size_t ri = c % r_list.size();
    results[c] = run_cell(spec, t_grid[ti], r_list[ri], ti, ri, samples_per_cell, seed, options);
  });

  CertifySummary& sum = cert.summary;
  for (auto& cell : results) {
    for (auto& rec : cell.records) {
      ++sum.records;
      if (rec.pass) ++sum.passed;
      if (!rec.direct_pass) ++sum.direct_failures;
      if (!rec.constructive_pass) ++sum.constructive_failures;
      if (rec.disagreement) ++(rec.endpoint ? sum.endpoint_disagreements : sum.disagreements);
      if (rec.germ_error.rfind(to_string(TransversalError::Kind::DegenerateSystem), 0) == 0) ++sum.degenerate;
      cert.records.push_back(std::move(rec));
    }
    for (auto& d : cell.diagnostics) {
      ++(d.diagnostic.issue == SampleIssue::InfeasibleNullity ? sum.infeasible_patterns : sum.sampling_failures);
      cert.diagnostics.push_back(std::move(d));
    }
  }
  sum.vacuous = sum.records == 0;
  sum.all_pass = sum.passed == sum.records && sum.disagreements == 0 && sum.sampling_failures == 0;
  return cert;
}

nlohmann::ordered_json to_json(const LinkSample& sample) {
  nlohmann::ordered_json j;
  j["t"] = sample.t;
  j["r"] = sample.r;
  j["w_re"] = real_parts(sample.w);
  j["w_im"] = imag_parts(sample.w);
  j["nullity"] = sample.nullity;
  j["f_residual"] = sample.f_residual;
  j["radius_residual"] = sample.radius_residual;
  return j;
}

nlohmann::ordered_json to_json(const CertRecord& record) {
  nlohmann::ordered_json j = to_json(record.sample);
  j.erase("f_residual");
  j.erase("radius_residual");
  j["sigma_min"] = record.sigma_min;
  j["dr_ds"] = record.germ ? nlohmann::ordered_json(record.germ->dr_ds) : nlohmann::ordered_json::array();
  j["radial_derivative"] = record.germ ? nlohmann::ordered_json(record.germ->radial_derivative) : nullptr;
  j["pass"] = record.pass;
  j["source"] = to_string(record.source);
  j["sigma_max"] = record.sigma_max;
  j["direct_pass"] = record.direct_pass;
  j["constructive_pass"] = record.constructive_pass;
  j["method"] = record.germ ? nlohmann::ordered_json(to_string(record.germ->method)) : nullptr;
  if (record.germ && record.germ->cramer_dr1) {
    j["det_A"] = record.germ->det_A;
    j["cramer_dr1"] = *record.germ->cramer_dr1;
    j["cramer_mismatch"] = record.germ->cramer_mismatch;
  }
  if (record.germ && !record.germ->witnesses.empty()) j["witnesses"] = record.germ->witnesses;
  if (!record.germ_error.empty()) j["error"] = record.germ_error;
  j["f_residual"] = record.sample.f_residual;
  j["endpoint"] = record.endpoint;
  j["disagreement"] = record.disagreement;
  return j;
}

nlohmann::ordered_json to_json(const CertifySummary& s) {
  nlohmann::ordered_json j;
  j["records"] = s.records;
  j["passed"] = s.passed;
  j["direct_failures"] = s.direct_failures;
  j["constructive_failures"] = s.constructive_failures;
  j["disagreements"] = s.disagreements;
  j["endpoint_disagreements"] = s.endpoint_disagreements;
  j["degenerate"] = s.degenerate;
  j["sampling_failures"] = s.sampling_failures;
  j["infeasible_patterns"] = s.infeasible_patterns;
  j["vacuous"] = s.vacuous;
  j["all_pass"] = s.all_pass;
  return j;
}

nlohmann::ordered_json to_json(const TransversalityCertificate& cert) {
  nlohmann::ordered_json j;
  j["spec"] = {{"n", cert.spec.n()}, {"a", cert.spec.a}, {"b", cert.spec.b}};
  j["grid"] = {{"t", cert.t_grid}, {"r", cert.r_list}, {"samples_per_cell", cert.samples_per_cell},
               {"seed", cert.seed}};
  auto records = nlohmann::ordered_json::array();
  for (const auto& r : cert.records) records.push_back(to_json(r));
  j["records"] = std::move(records);
  auto diags = nlohmann::ordered_json::array();
  for (const auto& d : cert.diagnostics) {
    diags.push_back({{"t", d.t},
                     {"r", d.r},
                     {"pattern", d.pattern},
                     {"issue", to_string(d.diagnostic.issue)},
                     {"index", d.diagnostic.index},
                     {"message", d.diagnostic.message}});
  }
  j["diagnostics"] = std::move(diags);
  j["summary"] = to_json(cert.summary);
  return j;
}

}  // namespace mixedlink
