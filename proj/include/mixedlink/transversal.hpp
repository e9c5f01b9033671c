#ifndef MIXEDLINK_TRANSVERSAL_HPP
#define MIXEDLINK_TRANSVERSAL_HPP

#include "mixedlink/family.hpp"
#include "mixedlink/sampler.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixedlink {

// Curves w(s) = (r_1(s) w_1, ..., r_n(s) w_n) through a point w of V_t with
// f(w(s)) = (s + 1) f(w). Each cyclic term is scaled separately, giving
//   h_j(r, s) = r_j^{a_j} r_{j+1} ((1-t)|w_j|^{2b_j} r_j^{2b_j} + t)
//               - (s + 1) ((1-t)|w_j|^{2b_j} + t) = 0.

class TransversalError : public std::runtime_error {
 public:
  enum class Kind { DegenerateSystem, InfeasibleSample, ConvergenceFailure };
  TransversalError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string to_string(TransversalError::Kind kind);

struct TransversalOptions {
  double degenerate_rel = 1e-12;  // det A <= this * prod(alpha_jj) is degenerate
  double dr_floor = 1e-12;        // dr_j/ds >= -dr_floor
  double radial_rel = 1e-12;      // radial derivative > radial_rel * ||w||^2
  double cramer_rel = 1e-10;      // closed-form dr_1/ds vs linear solve
  double newton_tol = 1e-12;
  int max_iterations = 50;
  double on_variety_rel = 1e-8;   // |f(w)| <= this * (1 + ||w||^d)
};

/// The (n+1) x (n+1) Jacobian of (r, s) -> (h(r, s), s): bidiagonal cyclic
/// block A with last column -beta and last row e_{n+1}.
struct PhiJacobian {
  std::size_t n = 0;
  std::vector<double> diag;  // alpha_{j,j}
  std::vector<double> next;  // alpha_{j,j+1}; next[n-1] is the corner alpha_{n,1}
  std::vector<double> beta;  // beta_j = (1-t)|w_j|^{2b_j} + t

  Eigen::MatrixXd full() const;
  Eigen::MatrixXd block() const;
};

std::vector<double> h_functions(const FamilyMember& member, std::span<const Complex> w, std::span<const double> r,
                                double s);

PhiJacobian phi_jacobian(const FamilyMember& member, std::span<const Complex> w, std::span<const double> r);

/// alpha'_{j,j} = r_j^{a_j} ((1-t)|w_j|^{2b_j}(a_j+2b_j) r_j^{2b_j} + a_j t); same product as the alpha_{j,j}.
std::vector<double> primed_diagonal(const FamilyMember& member, std::span<const Complex> w,
                                    std::span<const double> r);

/// prod alpha_{j,j} + (-1)^{n+1} prod alpha_{j,j+1}
double det_closed_form(const PhiJacobian& jac);

/// Block A at r = (1, ..., 1).
Eigen::MatrixXd matrix_A(const FamilyMember& member, std::span<const Complex> w);

/// dr_1/ds from the expansion of the Cramer numerator along its first column:
///   sum_j (-1)^{j-1} A_{j-1} beta_j A'_{j+1} / det A,
/// A_{j-1} = prod_{l<j} alpha_{l,l+1}, A'_{j+1} = prod_{l>j} alpha_{l,l}.
double cramer_dr1(const PhiJacobian& jac);

enum class GermMethod { Cramer, LinearSolve, BambooRecursion, Scaling };

std::string to_string(GermMethod method);

/// First-order data of a curve w(s) in V_t through the base point.
struct CurveGerm {
  LinkSample base;
  std::vector<double> dr_ds;  // dr_j/ds at s = 0
  ComplexVector tangent;      // dr_ds[j] * w[j]
  double radial_derivative = 0.0;  // d||w(s)||^2/ds at 0 = 2 sum dr_j/ds |w_j|^2
  GermMethod method = GermMethod::LinearSolve;

  // Case 1 only
  double det_A = 0.0;
  std::optional<double> cramer_dr1;
  double cramer_mismatch = 0.0;  // relative

  // Case 2 only: index (mu_i - 1 mod n) of each bamboo component
  std::vector<std::size_t> witnesses;

  double min_dr() const;
  /// radial derivative above tolerance, no significantly negative dr_j.
  bool passes(const TransversalOptions& options = {}) const;
};

/// Case I_w empty: solve A dr = beta (LU), cross-check dr_1 against the
/// Cramer closed form. Throws DegenerateSystem when det A is not positive.
CurveGerm tangent_case1(const FamilyMember& member, const LinkSample& sample, const TransversalOptions& options = {});

struct CurvePoint {
  double s = 0.0;
  std::vector<double> r;
  ComplexVector w;
  double residual = 0.0;  // |f(w(s)) - (s + 1) f(w)|
};

/// Newton continuation of h(r, s) = 0 from r = 1 at s = 0. Points are
/// returned in the order of `s_values`; |s| <= 0.5 is required.
/// Throws ConvergenceFailure naming the failing s.
std::vector<CurvePoint> trace_curve(const FamilyMember& member, const LinkSample& sample,
                                    const std::vector<double>& s_values, const TransversalOptions& options = {});

/// A run of consecutive surviving cyclic terms first, ..., first+terms-1.
/// Vertices are first, ..., first+terms (mod n); the right end vertex
/// first+terms only appears linearly and may exceed n - 1 before reduction.
struct BambooComponent {
  std::size_t first = 0;
  std::size_t terms = 0;
  std::size_t n = 0;

  std::size_t vertex(std::size_t k) const { return (first + k) % n; }
  std::size_t right_end() const { return first + terms; }  // unreduced
  std::vector<std::size_t> vertices() const;
};

struct NullityRestriction {
  std::vector<std::size_t> nullity;
  MixedPolynomial restricted;             // f' = f with z_i = 0 for i in nullity
  std::vector<std::size_t> surviving;     // J: variables appearing in f'
  std::vector<BambooComponent> components;

  std::size_t surviving_terms() const;
  bool vanishes() const { return components.empty(); }
};

NullityRestriction restrict_to_nullity(const FamilyMember& member, const std::vector<std::size_t>& nullity);

/// psi(s_j): the unique r > 0 with
///   r^a ((1-t) m^{2b} r^{2b} + t) = s_j ((1-t) m^{2b} + t),  m = |w_j| > 0.
/// Bracketed bisection then two Newton polish steps.
double solve_scaling_equation(int a, int b, double t, double modulus, double s_j);

/// r_j(s) and s_j(s) along one bamboo component, indexed by local vertex
/// k = 0..terms (r) and local term k = 0..terms-1 (s_param). r[terms] = 1.
struct BambooState {
  std::vector<double> r;
  std::vector<double> s_param;
};

BambooState solve_bamboo(const FamilyMember& member, std::span<const Complex> w, const BambooComponent& component,
                         double s);

/// dr/ds at s = 0 per local vertex by implicit differentiation of the
/// downward recursion.
std::vector<double> bamboo_derivatives(const FamilyMember& member, std::span<const Complex> w,
                                       const BambooComponent& component);

/// Case I_w nonempty. Scaling germ when f' vanishes identically, otherwise
/// bamboo recursion per component with the coordinates outside J frozen.
CurveGerm tangent_case2(const FamilyMember& member, const LinkSample& sample, const TransversalOptions& options = {});

/// Dispatches on the nullity set.
CurveGerm curve_germ(const FamilyMember& member, const LinkSample& sample, const TransversalOptions& options = {});

struct DirectCheck {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  bool passes(double rel_tol) const { return sigma_min > rel_tol * sigma_max; }
};

/// Singular values of the 3 x 2n real Jacobian of (Re f, Im f, ||z||^2) at w.
DirectCheck direct_check(const FamilyMember& member, std::span<const Complex> w);

}  // namespace mixedlink

#endif  // MIXEDLINK_TRANSVERSAL_HPP
