#ifndef MIXEDLINK_CERTIFY_HPP
#define MIXEDLINK_CERTIFY_HPP

#include "mixedlink/family.hpp"
#include "mixedlink/sampler.hpp"
#include "mixedlink/transversal.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mixedlink {

struct CertifyOptions {
  double sigma_rel_tol = 1e-8;       // direct check: sigma_min > this * sigma_max
  std::size_t nullity_samples = 2;   // per feasible nullity pattern
  std::size_t max_nullity_size = 6;  // further capped at n - 1
  bool relax_spec = false;           // run even when assumption (a) or (b) fails
  unsigned jobs = 1;
  SamplerOptions sampler;
  TransversalOptions transversal;
};

enum class SampleSource { Generic, Nullity };

std::string to_string(SampleSource source);

struct CertRecord {
  double t = 0.0;
  double r = 0.0;
  SampleSource source = SampleSource::Generic;
  LinkSample sample;

  double sigma_min = 0.0;
  double sigma_max = 0.0;
  bool direct_pass = false;

  std::optional<CurveGerm> germ;
  std::string germ_error;  // set when the constructive method threw
  bool constructive_pass = false;

  bool endpoint = false;      // t in {0, 1}: verdict from the direct check alone
  bool disagreement = false;  // direct and constructive verdicts differ
  bool pass = false;
};

struct CellDiagnostic {
  double t = 0.0;
  double r = 0.0;
  std::vector<std::size_t> pattern;  // empty for generic sampling
  SampleDiagnostic diagnostic;
};

struct CertifySummary {
  std::size_t records = 0;
  std::size_t passed = 0;
  std::size_t direct_failures = 0;
  std::size_t constructive_failures = 0;
  std::size_t disagreements = 0;
  std::size_t endpoint_disagreements = 0;  // informational only
  std::size_t degenerate = 0;
  std::size_t sampling_failures = 0;
  std::size_t infeasible_patterns = 0;
  bool vacuous = false;  // nothing was tested
  bool all_pass = false;
};

struct TransversalityCertificate {
  CyclicFamilySpec spec;
  std::vector<double> t_grid;
  std::vector<double> r_list;
  std::size_t samples_per_cell = 0;
  std::uint64_t seed = 0;
  std::vector<CertRecord> records;
  std::vector<CellDiagnostic> diagnostics;
  CertifySummary summary;
};

/// Nullity patterns (0-based, sorted, lexicographic by size then content)
/// of size 1 .. min(n - 1, cap) that carry link points.
std::vector<std::vector<std::size_t>> feasible_nullity_patterns(const FamilyMember& member, std::size_t cap);

/// Direct and constructive verdicts for one sample.
CertRecord certify_sample(const FamilyMember& member, const LinkSample& sample, SampleSource source,
                          const CertifyOptions& options = {});

/// Sweeps every (t, r) cell: generic samples plus samples on each feasible
/// nullity pattern. Throws std::invalid_argument when `spec` fails
/// validation (unless relaxed) or a grid value is out of range. Individual
/// sample failures never abort the sweep.
TransversalityCertificate certify(const CyclicFamilySpec& spec, const std::vector<double>& t_grid,
                                  const std::vector<double>& r_list, std::size_t samples_per_cell,
                                  std::uint64_t seed, const CertifyOptions& options = {});

nlohmann::ordered_json to_json(const LinkSample& sample);
nlohmann::ordered_json to_json(const CertRecord& record);
nlohmann::ordered_json to_json(const CertifySummary& summary);
nlohmann::ordered_json to_json(const TransversalityCertificate& cert);

}  // namespace mixedlink

#endif  // MIXEDLINK_CERTIFY_HPP
