#ifndef MIXEDLINK_SAMPLER_HPP
#define MIXEDLINK_SAMPLER_HPP

#include "mixedlink/family.hpp"
#include "mixedlink/mixedpoly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mixedlink {

struct SamplerOptions {
  double zero_threshold_rel = 1e-9;  // |w_i| <= this * r is snapped to 0
  double residual_tol = 1e-12;       // scaled Newton residual
  int max_iterations = 50;
  int max_attempts = 25;             // random restarts per requested sample
};

/// A point of V_t intersected with the sphere of radius r.
struct LinkSample {
  double t = 0.0;
  double r = 0.0;
  ComplexVector w;
  std::vector<std::size_t> nullity;  // 0-based indices with w_i == 0
  double f_residual = 0.0;           // |f(w) - level|
  double radius_residual = 0.0;      // | ||w|| - r |
};

enum class SampleIssue { ConvergenceFailure, InfeasibleNullity };

std::string to_string(SampleIssue issue);

struct SampleDiagnostic {
  SampleIssue issue;
  std::size_t index;  // requested sample index the issue belongs to
  std::string message;
};

struct SampleBatch {
  std::vector<LinkSample> samples;
  std::vector<SampleDiagnostic> diagnostics;
};

/// Safeguarded Gauss-Newton projection of `start` onto
/// {f = level, ||z||^2 = r^2}. Pseudo-inverse steps on the 3 x 2n real
/// constraint Jacobian, step halving when the residual grows.
/// Coordinates that are exactly zero in `start` stay zero; coordinates that
/// end within the zero threshold are snapped to zero and the projection is
/// repeated. Returns nullopt when Newton does not converge.
std::optional<LinkSample> project_to_link(const FamilyMember& member, double r, const ComplexVector& start,
                                          const SamplerOptions& options = {}, Complex level = {0.0, 0.0});

/// `count` converged samples from random starts, each rotated by a random
/// element of the polar S^1 action. Deterministic in `seed`; `jobs` only
/// changes scheduling.
SampleBatch sample_link(const FamilyMember& member, double r, std::size_t count, std::uint64_t seed,
                        const SamplerOptions& options = {}, unsigned jobs = 1);

/// Samples whose nullity set is exactly `nullity` (0-based). Patterns on
/// which the restricted polynomial cannot vanish with the other coordinates
/// nonzero yield no samples and one InfeasibleNullity diagnostic.
SampleBatch sample_with_nullity(const FamilyMember& member, double r, const std::vector<std::size_t>& nullity,
                                std::size_t count, std::uint64_t seed, const SamplerOptions& options = {});

/// Whether a nullity pattern carries points of the link: false when it
/// covers every coordinate or leaves exactly one cyclic term alive.
bool nullity_feasible(const FamilyMember& member, const std::vector<std::size_t>& nullity);

struct LevelResult {
  double eta = 0.0;
  std::size_t converged = 0;
  std::size_t nonconverged = 0;
  std::size_t rank_failures = 0;
  double worst_sigma_ratio = 0.0;  // min over samples of sigma_min / sigma_max
  bool vacuous = false;            // level above max |f| on the sphere: empty fiber
  bool passed = false;
};

/// Numerical probe for the tube radius: fibers f^{-1}(eta e^{i theta}) meet
/// the sphere transversely for every tested eta <= eta0.
struct TubeEstimate {
  double t = 0.0;
  double r = 0.0;
  double eta0 = 0.0;
  double max_abs_f = 0.0;  // estimated max of |f| on the sphere
  std::vector<double> grid;
  std::vector<LevelResult> levels;
  std::vector<std::string> failures;
};

TubeEstimate estimate_eta0(const FamilyMember& member, double r, const std::vector<double>& eta_grid,
                           std::size_t samples, std::uint64_t seed, double sigma_rel_tol = 1e-8,
                           const SamplerOptions& options = {});

}  // namespace mixedlink

#endif  // MIXEDLINK_SAMPLER_HPP
