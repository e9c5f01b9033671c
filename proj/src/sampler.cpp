#include "mixedlink/sampler.hpp"

#include "mixedlink/parallel.hpp"
#include "mixedlink/random.hpp"
#include "mixedlink/transversal.hpp"
#include "mixedlink/weights.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace mixedlink {

namespace {

double norm_of(const ComplexVector& z) {
  double s = 0.0;
  for (const auto& x : z) s += std::norm(x);
  return std::sqrt(s);
}

struct Projector {
  const FamilyMember& member;
  double r;
  Complex level;
  const SamplerOptions& options;
  double f_scale;  // 1 + r^d

  Projector(const FamilyMember& m, double radius, Complex lvl, const SamplerOptions& opts)
      : member(m), r(radius), level(lvl), options(opts),
        f_scale(1.0 + std::pow(radius, m.poly.max_total_degree())) {}

  double scaled_residual(const ComplexVector& z) const {
    const double fr = std::abs(eval(member.poly, z) - level) / f_scale;
    const double nr = std::abs(norm_of(z) * norm_of(z) - r * r) / (r * r);
    return std::max(fr, nr);
  }

  // Gauss-Newton on the free coordinates; the others stay fixed.
  bool newton(ComplexVector& z, const std::vector<bool>& free) const {
    const std::size_t n = z.size();
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j)
      if (free[j]) cols.push_back(j);
    if (cols.empty()) return false;

    double res = scaled_residual(z);
    for (int it = 0; it < options.max_iterations; ++it) {
      if (!std::isfinite(res)) return false;
      if (res <= options.residual_tol) return true;
      const Complex fz = eval(member.poly, z) - level;
      const Eigen::MatrixXd fj = real_jacobian(member.poly, z);
      Eigen::MatrixXd jac(3, static_cast<Eigen::Index>(2 * cols.size()));
      for (std::size_t k = 0; k < cols.size(); ++k) {
        const auto c = static_cast<Eigen::Index>(k);
        const auto src = static_cast<Eigen::Index>(cols[k]);
        jac.block(0, 2 * c, 2, 2) = fj.block(0, 2 * src, 2, 2);
        jac(2, 2 * c) = 2.0 * z[cols[k]].real();
        jac(2, 2 * c + 1) = 2.0 * z[cols[k]].imag();
      }
      const double nz = norm_of(z);
      const Eigen::Vector3d rhs(-fz.real(), -fz.imag(), -(nz * nz - r * r));
      const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const Eigen::VectorXd step = svd.solve(rhs);

      double lambda = 1.0;
      ComplexVector trial = z;
      double trial_res = res;
      for (int halving = 0; halving < 30; ++halving) {
        trial = z;
        for (std::size_t k = 0; k < cols.size(); ++k) {
          const auto c = static_cast<Eigen::Index>(k);
          trial[cols[k]] += lambda * Complex(step(2 * c), step(2 * c + 1));
        }
        trial_res = scaled_residual(trial);
        if (trial_res <= res) break;
        lambda *= 0.5;
      }
      z = std::move(trial);
      res = trial_res;
    }
    return res <= options.residual_tol;
  }

  std::optional<LinkSample> project(ComplexVector z, std::vector<bool> free) const {
    const double threshold = options.zero_threshold_rel * r;
    for (std::size_t round = 0; round <= z.size(); ++round) {
      if (!newton(z, free)) return std::nullopt;
      bool snapped = false;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (free[j] && std::abs(z[j]) <= threshold) {
          z[j] = 0.0;
          free[j] = false;
          snapped = true;
        }
      }
      if (!snapped) return finish(std::move(z));
    }
    return std::nullopt;
  }

  std::optional<LinkSample> finish(ComplexVector z) const {
    const double scale = r / norm_of(z);
    for (auto& x : z) x *= scale;
    return make_sample(std::move(z));
  }

  std::optional<LinkSample> make_sample(ComplexVector z) const {
    LinkSample s;
    s.t = member.t;
    s.r = r;
    s.f_residual = std::abs(eval(member.poly, z) - level);
    s.radius_residual = std::abs(norm_of(z) - r);
    for (std::size_t j = 0; j < z.size(); ++j)
      if (z[j] == Complex(0.0, 0.0)) s.nullity.push_back(j);
    s.w = std::move(z);
    if (s.f_residual > 1e-10 * f_scale || s.radius_residual > 1e-12 * r) return std::nullopt;
    return s;
  }
};

ComplexVector random_start(Rng& rng, double r, const std::vector<bool>& free) {
  ComplexVector z(free.size(), Complex(0.0, 0.0));
  double norm2 = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (!free[j]) continue;
    z[j] = complex_normal(rng);
    norm2 += std::norm(z[j]);
  }
  const double scale = r / std::sqrt(norm2);
  for (auto& x : z) x *= scale;
  return z;
}

std::optional<WeightSystem> member_polar_weight(const FamilyMember& member) {
  try {
    return polar_weight(member.poly);
  } catch (const WeightError&) {
    return std::nullopt;
  }
}

// s o w with s = exp(i theta); |f| and ||w|| are invariant.
void rotate(LinkSample& sample, const WeightSystem& weight, double theta, const Projector& proj) {
  for (std::size_t j = 0; j < sample.w.size(); ++j) {
    sample.w[j] *= std::polar(1.0, theta * static_cast<double>(weight.weights[j]));
  }
  if (auto redone = proj.make_sample(sample.w)) sample = std::move(*redone);
}

void require_radius(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("sphere radius must be positive");
}

std::vector<bool> free_mask(std::size_t n, const std::vector<std::size_t>& nullity) {
  std::vector<bool> free(n, true);
  for (auto i : nullity) {
    if (i >= n) throw std::out_of_range("nullity index out of range");
    free[i] = false;
  }
  return free;
}

// max |f| on the sphere: random search followed by projected gradient ascent.
double estimate_max_abs(const FamilyMember& member, double r, std::uint64_t seed) {
  const std::size_t n = member.spec.n();
  const std::vector<bool> all(n, true);
  std::vector<std::pair<double, ComplexVector>> pool;
  for (std::size_t k = 0; k < 256; ++k) {
    Rng rng(derive_seed(seed, {0xfeedULL, k}));
    ComplexVector z = random_start(rng, r, all);
    pool.emplace_back(std::abs(eval(member.poly, z)), std::move(z));
  }
  std::sort(pool.begin(), pool.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  double best = pool.front().first;
  for (std::size_t k = 0; k < std::min<std::size_t>(4, pool.size()); ++k) {
    ComplexVector z = pool[k].second;
    double value = pool[k].first;
    double step = 0.1 * r;
    for (int it = 0; it < 300 && step > 1e-12 * r; ++it) {
      const Complex fz = eval(member.poly, z);
      const Eigen::MatrixXd jac = real_jacobian(member.poly, z);
      const Eigen::VectorXd grad = jac.transpose() * Eigen::Vector2d(fz.real(), fz.imag());
      ComplexVector g(n);
      double radial_part = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        g[j] = Complex(grad(static_cast<Eigen::Index>(2 * j)), grad(static_cast<Eigen::Index>(2 * j + 1)));
        radial_part += g[j].real() * z[j].real() + g[j].imag() * z[j].imag();
      }
      double gnorm2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        g[j] -= (radial_part / (r * r)) * z[j];
        gnorm2 += std::norm(g[j]);
      }
      if (gnorm2 == 0.0) break;
      const double gnorm = std::sqrt(gnorm2);
      ComplexVector trial(n);
      for (std::size_t j = 0; j < n; ++j) trial[j] = z[j] + (step / gnorm) * g[j];
      const double scale = r / norm_of(trial);
      for (auto& x : trial) x *= scale;
      const double trial_value = std::abs(eval(member.poly, trial));
      if (trial_value > value) {
        z = std::move(trial);
        value = trial_value;
        step *= 1.5;
      } else {
        step *= 0.5;
      }
    }
    best = std::max(best, value);
  }
  return best;
}

}  // namespace

std::string to_string(SampleIssue issue) {
  return issue == SampleIssue::ConvergenceFailure ? "ConvergenceFailure" : "InfeasibleNullity";
}

std::optional<LinkSample> project_to_link(const FamilyMember& member, double r, const ComplexVector& start,
                                          const SamplerOptions& options, Complex level) {
  require_radius(r);
  if (start.size() != member.spec.n()) throw std::invalid_argument("start point has the wrong dimension");
  std::vector<bool> free(start.size());
  for (std::size_t j = 0; j < start.size(); ++j) free[j] = start[j] != Complex(0.0, 0.0);
  return Projector(member, r, level, options).project(start, std::move(free));
}

SampleBatch sample_link(const FamilyMember& member, double r, std::size_t count, std::uint64_t seed,
                        const SamplerOptions& options, unsigned jobs) {
  require_radius(r);
  const std::size_t n = member.spec.n();
  const Projector proj(member, r, 0.0, options);
  const auto weight = member_polar_weight(member);
  const std::vector<bool> all(n, true);

  std::vector<std::optional<LinkSample>> slots(count);
  parallel_for(count, jobs, [&](std::size_t i) {
    Rng rng(derive_seed(seed, {i}));
    for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
      auto sample = proj.project(random_start(rng, r, all), all);
      if (!sample) continue;
      const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
      if (weight) rotate(*sample, *weight, theta, proj);
      slots[i] = std::move(sample);
      return;
    }
  });

  SampleBatch batch;
  for (std::size_t i = 0; i < count; ++i) {
    if (slots[i]) {
      batch.samples.push_back(std::move(*slots[i]));
    } else {
      batch.diagnostics.push_back({SampleIssue::ConvergenceFailure, i,
                                   "no convergence after " + std::to_string(options.max_attempts) + " starts"});
    }
  }
  return batch;
}

bool nullity_feasible(const FamilyMember& member, const std::vector<std::size_t>& nullity) {
  const std::size_t n = member.spec.n();
  const std::set<std::size_t> unique(nullity.begin(), nullity.end());
  for (auto i : unique)
    if (i >= n) throw std::out_of_range("nullity index out of range");
  if (unique.empty()) return true;
  if (unique.size() == n) return false;
  return restrict_to_nullity(member, nullity).surviving_terms() != 1;
}

SampleBatch sample_with_nullity(const FamilyMember& member, double r, const std::vector<std::size_t>& nullity,
                                std::size_t count, std::uint64_t seed, const SamplerOptions& options) {
  require_radius(r);
  const std::size_t n = member.spec.n();
  const std::vector<bool> free = free_mask(n, nullity);
  std::vector<std::size_t> wanted;
  for (std::size_t j = 0; j < n; ++j)
    if (!free[j]) wanted.push_back(j);

  SampleBatch batch;
  if (count == 0) return batch;
  if (!nullity_feasible(member, wanted)) {
    batch.diagnostics.push_back({SampleIssue::InfeasibleNullity, 0,
                                 wanted.size() == n ? "nullity set covers every coordinate"
                                                    : "restricted polynomial is a single term"});
    return batch;
  }
  const Projector proj(member, r, 0.0, options);
  const auto weight = member_polar_weight(member);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, {i}));
    bool done = false;
    for (int attempt = 0; attempt < options.max_attempts && !done; ++attempt) {
      auto sample = proj.project(random_start(rng, r, free), free);
      if (!sample || sample->nullity != wanted) continue;
      const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
      if (weight) rotate(*sample, *weight, theta, proj);
      batch.samples.push_back(std::move(*sample));
      done = true;
    }
    if (!done) {
      batch.diagnostics.push_back({SampleIssue::ConvergenceFailure, i,
                                   "no convergence onto the nullity stratum after " +
                                       std::to_string(options.max_attempts) + " starts"});
    }
  }
  return batch;
}

TubeEstimate estimate_eta0(const FamilyMember& member, double r, const std::vector<double>& eta_grid,
                           std::size_t samples, std::uint64_t seed, double sigma_rel_tol,
                           const SamplerOptions& options) {
  require_radius(r);
  for (std::size_t k = 0; k < eta_grid.size(); ++k) {
    if (!(eta_grid[k] > 0.0) || (k > 0 && !(eta_grid[k] > eta_grid[k - 1]))) {
      throw std::invalid_argument("eta grid must be positive and strictly increasing");
    }
  }
  const std::size_t n = member.spec.n();
  const std::vector<bool> all(n, true);

  TubeEstimate est;
  est.t = member.t;
  est.r = r;
  est.grid = eta_grid;
  est.max_abs_f = estimate_max_abs(member, r, seed);

  bool prefix_intact = true;
  for (std::size_t li = 0; li < eta_grid.size(); ++li) {
    LevelResult level;
    level.eta = eta_grid[li];
    level.worst_sigma_ratio = 1.0;
    for (std::size_t k = 0; k < samples; ++k) {
      Rng rng(derive_seed(seed, {li, k}));
      const Complex target = level.eta * unit_phase(rng);
      const Projector proj(member, r, target, options);
      bool converged = false;
      for (int attempt = 0; attempt < options.max_attempts && !converged; ++attempt) {
        auto sample = proj.project(random_start(rng, r, all), all);
        if (!sample) continue;
        converged = true;
        const DirectCheck dc = direct_check(member, sample->w);
        level.worst_sigma_ratio = std::min(level.worst_sigma_ratio, dc.sigma_min / dc.sigma_max);
        if (!dc.passes(sigma_rel_tol)) ++level.rank_failures;
      }
      ++(converged ? level.converged : level.nonconverged);
    }
    level.vacuous = level.converged == 0 && level.eta > est.max_abs_f * (1.0 + 1e-6);
    level.passed = level.rank_failures == 0 && (level.converged > 0 || level.vacuous || samples == 0);
    if (!level.passed) {
      est.failures.push_back("eta = " + std::to_string(level.eta) + ": " + std::to_string(level.rank_failures) +
                             " rank failures, " + std::to_string(level.converged) + " converged samples");
    }
    if (prefix_intact && level.passed) est.eta0 = level.eta;
    prefix_intact = prefix_intact && level.passed;
    est.levels.push_back(level);
  }
  return est;
}

}  // namespace mixedlink
