#ifndef MIXEDLINK_TORUSMAP_HPP
#define MIXEDLINK_TORUSMAP_HPP

#include "mixedlink/mixedpoly.hpp"
#include "mixedlink/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mixedlink {

class TorusMapError : public std::runtime_error {
 public:
  enum class Kind { NotFull, SingularSystem, OnCoordinatePlane };
  TorusMapError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string to_string(TorusMapError::Kind kind);

struct LaurentMonomial {
  Complex coeff;
  std::vector<std::int64_t> exponents;
};

/// g(z) = sum_i c_i z^{nu_i - mu_i} on the complex torus.
struct LaurentPolynomial {
  std::size_t n = 0;
  std::vector<LaurentMonomial> monomials;
};

LaurentPolynomial associated_laurent(const MixedPolynomial& f);

/// Throws OnCoordinatePlane when a coordinate with a negative exponent is 0.
Complex eval(const LaurentPolynomial& g, std::span<const Complex> z);

/// log xi = E log rho with transpose(N - M) E = transpose(N + M); phases kept.
struct TorusMap {
  RatMatrix E;
  MixedPolynomial source;
  LaurentPolynomial target;
};

/// Requires m = n and both transpose(N - M), transpose(N + M) nonsingular.
TorusMap build_torus_map(const MixedPolynomial& f);

/// Same source and target with an arbitrary exponent matrix (for controls).
TorusMap with_exponent_matrix(const TorusMap& tm, RatMatrix E);

/// Inverse map: exponent matrix E^{-1}, source and target swapped roles.
/// Throws SingularSystem when E is not invertible.
RatMatrix inverse_exponent_matrix(const TorusMap& tm);

struct PolarPoint {
  std::vector<double> modulus;
  std::vector<double> phase;  // argument theta_j
};

PolarPoint to_polar(std::span<const Complex> z);
ComplexVector from_polar(const PolarPoint& p);

/// Moduli remapped by exp(E log rho); the phase vector is copied unchanged.
PolarPoint apply_torus_map(const RatMatrix& E, const PolarPoint& p);
ComplexVector apply_torus_map(const TorusMap& tm, std::span<const Complex> z);
ComplexVector apply_inverse_torus_map(const TorusMap& tm, std::span<const Complex> w);

/// max over random torus points of |g(phi(z)) - f(z)| / (1 + |f(z)|).
double check_fiber_preservation(const TorusMap& tm, std::size_t samples, std::uint64_t seed);

enum class Extendability { Extendable, NoObstructionFound, NonExtendable };

std::string to_string(Extendability verdict);

struct ExtendabilityReport {
  std::vector<std::pair<std::size_t, std::size_t>> negative_entries;  // 0-based (row, col)
  bool diagonal = false;
  Extendability verdict = Extendability::NoObstructionFound;
};

/// Negative exponents block a continuous extension over the coordinate
/// planes. A diagonal E with positive entries is the Brieskorn-type case and
/// extends; other positive matrices are reported as "no obstruction found".
ExtendabilityReport extendability_report(const TorusMap& tm);

nlohmann::ordered_json to_json(const RatMatrix& E);  // rows of "p/q" strings
nlohmann::ordered_json to_json(const LaurentPolynomial& g);
nlohmann::ordered_json to_json(const ExtendabilityReport& report);

}  // namespace mixedlink

#endif  // MIXEDLINK_TORUSMAP_HPP
