#include "mixedlink/weights.hpp"

#include "mixedlink/random.hpp"

#include <algorithm>
#include <cmath>

namespace mixedlink {

namespace {

IntMatrix combine_rows(const ExponentMatrices& e, int sign) {
  IntMatrix out(e.N.cols(), e.N.rows());
  for (std::size_t i = 0; i < e.N.cols(); ++i)
    for (std::size_t j = 0; j < e.N.rows(); ++j) out(i, j) = e.N(j, i) + sign * e.M(j, i);
  return out;
}

WeightSystem solve_weight(const MixedPolynomial& f, WeightKind kind) {
  const std::size_t n = f.num_vars();
  const std::size_t m = f.size();
  const auto label = to_string(kind);
  if (m < n) {
    throw WeightError(WeightError::Kind::NotFull, label + " weight: " + std::to_string(m) +
                                                      " monomials for " + std::to_string(n) + " variables");
  }
  const ExponentMatrices e = exponent_matrices(f);
  const IntMatrix rows = kind == WeightKind::Polar ? e.difference_rows() : e.sum_rows();

  // Homogeneous system [rows | -1] (p, d) = 0.
  RatMatrix system(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) system(i, j) = Rational(rows(i, j));
    system(i, n) = -1;
  }
  if (m == n && bareiss_determinant(rows) == 0) {
    throw WeightError(WeightError::Kind::SingularSystem, label + " weight: exponent matrix is singular");
  }
  const auto basis = nullspace(system);
  if (basis.empty()) {
    throw WeightError(WeightError::Kind::Inconsistent, label + " weight: no nontrivial solution");
  }
  if (basis.size() > 1) {
    throw WeightError(WeightError::Kind::SingularSystem,
                      label + " weight: solution space has dimension " + std::to_string(basis.size()));
  }
  auto v = primitive_integer_vector(basis.front());
  if (v[n] == 0) {
    throw WeightError(WeightError::Kind::NoPositiveDegree, label + " weight: unique solution has degree 0");
  }
  if (v[n] < 0) {
    for (auto& x : v) x = -x;
  }
  WeightSystem w;
  w.kind = kind;
  for (std::size_t j = 0; j < n; ++j) w.weights.push_back(static_cast<std::int64_t>(v[j]));
  w.degree = static_cast<std::int64_t>(v[n]);
  return w;
}

}  // namespace

IntMatrix ExponentMatrices::difference_rows() const { return combine_rows(*this, -1); }
IntMatrix ExponentMatrices::sum_rows() const { return combine_rows(*this, +1); }

ExponentMatrices exponent_matrices(const MixedPolynomial& f) {
  const std::size_t n = f.num_vars();
  const std::size_t m = f.size();
  ExponentMatrices e{IntMatrix(n, m), IntMatrix(n, m)};
  for (std::size_t i = 0; i < m; ++i) {
    const auto& mono = f.monomials()[i];
    for (std::size_t j = 0; j < n; ++j) {
      e.N(j, i) = mono.nu[j];
      e.M(j, i) = mono.mu[j];
    }
  }
  return e;
}

bool is_simplicial(const MixedPolynomial& f) {
  const std::size_t m = f.size();
  if (m > f.num_vars()) return false;
  const ExponentMatrices e = exponent_matrices(f);
  return bareiss_rank(e.difference_rows()) == m && bareiss_rank(e.sum_rows()) == m;
}

std::string to_string(WeightKind kind) { return kind == WeightKind::Polar ? "polar" : "radial"; }

std::string to_string(WeightError::Kind kind) {
  switch (kind) {
    case WeightError::Kind::NotFull: return "NotFull";
    case WeightError::Kind::SingularSystem: return "SingularSystem";
    case WeightError::Kind::Inconsistent: return "Inconsistent";
    case WeightError::Kind::NoPositiveDegree: return "NoPositiveDegree";
  }
  return "Unknown";
}

bool WeightSystem::mixed_signs() const {
  const bool any_pos = std::any_of(weights.begin(), weights.end(), [](auto x) { return x > 0; });
  const bool any_neg = std::any_of(weights.begin(), weights.end(), [](auto x) { return x < 0; });
  return any_pos && any_neg;
}

WeightSystem polar_weight(const MixedPolynomial& f) { return solve_weight(f, WeightKind::Polar); }
WeightSystem radial_weight(const MixedPolynomial& f) { return solve_weight(f, WeightKind::Radial); }

double check_polar_homogeneity(const MixedPolynomial& f, const WeightSystem& w, std::size_t samples,
                               std::uint64_t seed) {
  if (w.kind != WeightKind::Polar) throw std::invalid_argument("check_polar_homogeneity: needs a polar weight");
  if (w.weights.size() != f.num_vars()) throw std::invalid_argument("check_polar_homogeneity: weight length mismatch");
  const std::size_t n = f.num_vars();
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng(derive_seed(seed, {k}));
    // E[norm(z)^2] = 1
    ComplexVector z(n);
    const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
    for (auto& zj : z) zj = scale * complex_normal(rng);
    const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    ComplexVector sz(n);
    for (std::size_t j = 0; j < n; ++j) sz[j] = std::polar(1.0, theta * static_cast<double>(w.weights[j])) * z[j];
    const Complex fz = eval(f, z);
    const Complex lhs = eval(f, sz);
    const Complex rhs = std::polar(1.0, theta * static_cast<double>(w.degree)) * fz;
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(fz)));
  }
  return worst;
}

}  // namespace mixedlink
