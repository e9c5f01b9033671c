#ifndef MIXEDLINK_MIXEDPOLY_HPP
#define MIXEDLINK_MIXEDPOLY_HPP

#include <Eigen/Dense>
#include <json.hpp>

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mixedlink {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// One term c * z^nu * conj(z)^mu.
struct MixedMonomial {
  Complex coeff;
  std::vector<int> nu;
  std::vector<int> mu;

  int total_degree() const;
  /// nu_j + mu_j > 0
  bool contains(std::size_t var) const { return nu[var] + mu[var] > 0; }
};

/// Finite sum of mixed monomials in n complex variables.
///
/// Monomials with the same (nu, mu) are merged on construction, keeping the
/// position of the first occurrence. Terms whose coefficient is (or merges to)
/// zero are dropped, so every stored coefficient is nonzero.
class MixedPolynomial {
 public:
  MixedPolynomial() = default;
  MixedPolynomial(std::size_t n, std::vector<MixedMonomial> monomials);

  std::size_t num_vars() const { return n_; }
  std::size_t size() const { return monomials_.size(); }
  bool is_zero() const { return monomials_.empty(); }
  const std::vector<MixedMonomial>& monomials() const { return monomials_; }

  /// Largest |nu_i| + |mu_i| over the monomials (0 for the zero polynomial).
  int max_total_degree() const;

  /// Swaps nu and mu and conjugates the coefficients, so that
  /// eval(conjugate(), z) == conj(eval(*this, z)).
  MixedPolynomial conjugate() const;

  /// Sets z_i = 0 for every i flagged in `zeroed` (same length as n) and
  /// drops the monomials that vanish. The variable count is unchanged.
  MixedPolynomial restrict_zero(const std::vector<bool>& zeroed) const;

 private:
  std::size_t n_ = 0;
  std::vector<MixedMonomial> monomials_;
};

/// Sum of c_i z^nu_i conj(z)^mu_i, with 0^0 = 1.
Complex eval(const MixedPolynomial& f, std::span<const Complex> z);

/// 2 x 2n matrix: rows are the gradients of Re f and Im f in the real
/// coordinates (x_1, y_1, ..., x_n, y_n). Computed from the Wirtinger
/// derivatives df/dz and df/dconj(z).
Eigen::MatrixXd real_jacobian(const MixedPolynomial& f, std::span<const Complex> z);

/// Mixed singular point test: sigma_2 <= rel_tol * sigma_1 of real_jacobian.
bool is_mixed_singular(const MixedPolynomial& f, std::span<const Complex> z, double rel_tol = 1e-8);

enum class ComponentShape { Isolated, Bamboo, Cycle, Other };

std::string to_string(ComponentShape shape);

struct GraphComponent {
  std::vector<std::size_t> vertices;  // sorted, 0-based
  ComponentShape shape = ComponentShape::Other;
};

/// Variable graph: one vertex per variable appearing in f, an edge between
/// two variables that share a monomial.
struct InterconnGraph {
  std::vector<std::size_t> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, sorted
  std::vector<GraphComponent> components;                // ordered by smallest vertex
};

InterconnGraph variable_graph(const MixedPolynomial& f);

// Serialization: {"n": n, "monomials": [{coeff_re, coeff_im, nu[], mu[]}, ...]}.
nlohmann::json to_json(const MixedPolynomial& f);
MixedPolynomial polynomial_from_json(const nlohmann::json& j);

std::string to_string(const MixedPolynomial& f);

}  // namespace mixedlink

#endif  // MIXEDLINK_MIXEDPOLY_HPP
