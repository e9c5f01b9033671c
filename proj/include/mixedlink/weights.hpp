#ifndef MIXEDLINK_WEIGHTS_HPP
#define MIXEDLINK_WEIGHTS_HPP

#include "mixedlink/mixedpoly.hpp"
#include "mixedlink/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixedlink {

/// Exponent matrices of f: column i of N is nu_i, column i of M is mu_i (n x m).
struct ExponentMatrices {
  IntMatrix N;
  IntMatrix M;

  /// Transpose of (N - M): row i is nu_i - mu_i.
  IntMatrix difference_rows() const;
  /// Transpose of (N + M): row i is nu_i + mu_i.
  IntMatrix sum_rows() const;
};

ExponentMatrices exponent_matrices(const MixedPolynomial& f);

/// m <= n and rank(N - M) = rank(N + M) = m, in exact arithmetic.
bool is_simplicial(const MixedPolynomial& f);

enum class WeightKind { Polar, Radial };

std::string to_string(WeightKind kind);

struct WeightSystem {
  WeightKind kind = WeightKind::Polar;
  std::vector<std::int64_t> weights;
  std::int64_t degree = 0;

  /// Weights of both signs occur. Allowed (Laurent-type gradings need it).
  bool mixed_signs() const;
};

class WeightError : public std::runtime_error {
 public:
  enum class Kind {
    NotFull,           // fewer monomials than variables
    SingularSystem,    // solution space of dimension > 1
    Inconsistent,      // only the trivial solution
    NoPositiveDegree,  // the unique solution has degree 0
  };
  WeightError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string to_string(WeightError::Kind kind);

// Solves sum_j (nu_ij -/+ mu_ij) p_j = d for every monomial i over the
// rationals and normalizes to coprime integer weights with d > 0.
//
// For m = n the system must be nonsingular. Overdetermined systems (m > n,
// e.g. an interior member of the cyclic family with 2n monomials) are
// accepted when their solution is unique up to scale.
WeightSystem polar_weight(const MixedPolynomial& f);
WeightSystem radial_weight(const MixedPolynomial& f);

/// max over random (z, s in S^1) of |f(s o z) - s^d f(z)| / (1 + |f(z)|).
double check_polar_homogeneity(const MixedPolynomial& f, const WeightSystem& w, std::size_t samples,
                               std::uint64_t seed);

}  // namespace mixedlink

#endif  // MIXEDLINK_WEIGHTS_HPP
