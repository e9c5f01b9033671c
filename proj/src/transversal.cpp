#include "mixedlink/transversal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mixedlink {

namespace {

double ipow(double x, int k) {
  double result = 1.0;
  for (int i = 0; i < k; ++i) result *= x;
  return result;
}

void require_length(const FamilyMember& member, std::size_t w_size, std::size_t r_size) {
  const std::size_t n = member.spec.n();
  if (w_size != n || r_size != n) throw std::invalid_argument("dimension mismatch with the family member");
}

// (1 - t) |w_j|^{2 b_j}
double conj_weight(const FamilyMember& member, std::span<const Complex> w, std::size_t j) {
  return (1.0 - member.t) * ipow(std::norm(w[j]), member.spec.b[j]);
}

double norm_squared(std::span<const Complex> w) {
  double s = 0.0;
  for (const auto& x : w) s += std::norm(x);
  return s;
}

ComplexVector scaled_point(std::span<const Complex> w, const std::vector<double>& r) {
  ComplexVector out(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) out[j] = r[j] * w[j];
  return out;
}

// Newton on h(., s) = 0 starting from r. Returns false on failure.
bool newton_h(const FamilyMember& member, std::span<const Complex> w, double s, std::vector<double>& r,
              const TransversalOptions& options) {
  const std::size_t n = r.size();
  const PhiJacobian at_one = phi_jacobian(member, w, std::vector<double>(n, 1.0));
  auto scaled_residual = [&](const std::vector<double>& h) {
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(h[j]) / ((1.0 + std::abs(s)) * at_one.beta[j]));
    return worst;
  };
  for (int it = 0; it <= options.max_iterations; ++it) {
    const auto h = h_functions(member, w, r, s);
    const double res = scaled_residual(h);
    if (!std::isfinite(res)) return false;
    if (res <= 1e-15) return true;
    if (it == options.max_iterations) return res <= options.newton_tol;
    const Eigen::MatrixXd a = phi_jacobian(member, w, r).block();
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(h.data(), static_cast<Eigen::Index>(n));
    const Eigen::VectorXd step = a.partialPivLu().solve(rhs);
    double step_norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      r[j] -= step(static_cast<Eigen::Index>(j));
      step_norm = std::max(step_norm, std::abs(step(static_cast<Eigen::Index>(j))));
      if (!(r[j] > 0.0)) return false;
    }
    if (step_norm <= 1e-16) {
      return scaled_residual(h_functions(member, w, r, s)) <= options.newton_tol;
    }
  }
  return false;
}

}  // namespace

std::string to_string(TransversalError::Kind kind) {
  switch (kind) {
    case TransversalError::Kind::DegenerateSystem: return "DegenerateSystem";
    case TransversalError::Kind::InfeasibleSample: return "InfeasibleSample";
    case TransversalError::Kind::ConvergenceFailure: return "ConvergenceFailure";
  }
  return "Unknown";
}

std::string to_string(GermMethod method) {
  switch (method) {
    case GermMethod::Cramer: return "cramer";
    case GermMethod::LinearSolve: return "linear-solve";
    case GermMethod::BambooRecursion: return "bamboo-recursion";
    case GermMethod::Scaling: return "scaling";
  }
  return "unknown";
}

Eigen::MatrixXd PhiJacobian::full() const {
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m + 1, m + 1);
  out.topLeftCorner(m, m) = block();
  for (Eigen::Index j = 0; j < m; ++j) out(j, m) = -beta[static_cast<std::size_t>(j)];
  out(m, m) = 1.0;
  return out;
}

Eigen::MatrixXd PhiJacobian::block() const {
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    a(j, j) += diag[static_cast<std::size_t>(j)];
    a(j, (j + 1) % m) += next[static_cast<std::size_t>(j)];
  }
  return a;
}

std::vector<double> h_functions(const FamilyMember& member, std::span<const Complex> w, std::span<const double> r,
                                double s) {
  require_length(member, w.size(), r.size());
  const std::size_t n = w.size();
  const double t = member.t;
  std::vector<double> h(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = (j + 1) % n;
    const int a = member.spec.a[j];
    const int b = member.spec.b[j];
    const double c = conj_weight(member, w, j);
    h[j] = ipow(r[j], a) * r[k] * (c * ipow(r[j], 2 * b) + t) - (s + 1.0) * (c + t);
  }
  return h;
}

PhiJacobian phi_jacobian(const FamilyMember& member, std::span<const Complex> w, std::span<const double> r) {
  require_length(member, w.size(), r.size());
  const std::size_t n = w.size();
  const double t = member.t;
  PhiJacobian jac;
  jac.n = n;
  jac.diag.resize(n);
  jac.next.resize(n);
  jac.beta.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = (j + 1) % n;
    const int a = member.spec.a[j];
    const int b = member.spec.b[j];
    const double c = conj_weight(member, w, j);
    const double r2b = ipow(r[j], 2 * b);
    jac.diag[j] = ipow(r[j], a - 1) * r[k] * (c * (a + 2 * b) * r2b + a * t);
    jac.next[j] = ipow(r[j], a) * (c * r2b + t);
    jac.beta[j] = c + t;
  }
  return jac;
}

std::vector<double> primed_diagonal(const FamilyMember& member, std::span<const Complex> w,
                                    std::span<const double> r) {
  require_length(member, w.size(), r.size());
  const std::size_t n = w.size();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const int a = member.spec.a[j];
    const int b = member.spec.b[j];
    const double c = conj_weight(member, w, j);
    out[j] = ipow(r[j], a) * (c * (a + 2 * b) * ipow(r[j], 2 * b) + a * member.t);
  }
  return out;
}

double det_closed_form(const PhiJacobian& jac) {
  double diag = 1.0;
  double cycle = 1.0;
  for (std::size_t j = 0; j < jac.n; ++j) {
    diag *= jac.diag[j];
    cycle *= jac.next[j];
  }
  return jac.n % 2 == 1 ? diag + cycle : diag - cycle;
}

Eigen::MatrixXd matrix_A(const FamilyMember& member, std::span<const Complex> w) {
  return phi_jacobian(member, w, std::vector<double>(w.size(), 1.0)).block();
}

double cramer_dr1(const PhiJacobian& jac) {
  const std::size_t n = jac.n;
  // suffix[k] = prod_{l > k} diag[l]
  std::vector<double> suffix(n, 1.0);
  for (std::size_t k = n - 1; k > 0; --k) suffix[k - 1] = suffix[k] * jac.diag[k];
  double prefix = 1.0;  // prod_{l < k} next[l]
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double term = prefix * jac.beta[k] * suffix[k];
    sum += (k % 2 == 0) ? term : -term;
    prefix *= jac.next[k];
  }
  return sum / det_closed_form(jac);
}

double CurveGerm::min_dr() const {
  double m = 0.0;
  bool first = true;
  for (std::size_t j = 0; j < dr_ds.size(); ++j) {
    if (base.w[j] == Complex(0.0, 0.0)) continue;
    m = first ? dr_ds[j] : std::min(m, dr_ds[j]);
    first = false;
  }
  return m;
}

bool CurveGerm::passes(const TransversalOptions& options) const {
  if (!(radial_derivative > options.radial_rel * norm_squared(base.w))) return false;
  if (min_dr() < -options.dr_floor) return false;
  if (cramer_dr1 && !(cramer_mismatch <= options.cramer_rel)) return false;
  return std::all_of(witnesses.begin(), witnesses.end(), [&](std::size_t j) { return dr_ds[j] > 0.0; });
}

CurveGerm tangent_case1(const FamilyMember& member, const LinkSample& sample, const TransversalOptions& options) {
  if (!sample.nullity.empty()) throw std::invalid_argument("tangent_case1 needs a sample with empty nullity set");
  const std::size_t n = member.spec.n();
  const std::span<const Complex> w(sample.w);
  const PhiJacobian jac = phi_jacobian(member, w, std::vector<double>(n, 1.0));

  const double det = det_closed_form(jac);
  const double scale = std::accumulate(jac.diag.begin(), jac.diag.end(), 1.0, std::multiplies<>());
  if (!(det > options.degenerate_rel * scale)) {
    std::ostringstream msg;
    msg << "det A = " << det << " is not positive at r = (1, ..., 1)";
    throw TransversalError(TransversalError::Kind::DegenerateSystem, msg.str());
  }

  const Eigen::VectorXd beta = Eigen::Map<const Eigen::VectorXd>(jac.beta.data(), static_cast<Eigen::Index>(n));
  const Eigen::VectorXd dr = jac.block().partialPivLu().solve(beta);

  CurveGerm germ;
  germ.base = sample;
  germ.method = GermMethod::LinearSolve;
  germ.det_A = det;
  germ.dr_ds.assign(dr.data(), dr.data() + n);
  germ.cramer_dr1 = cramer_dr1(jac);
  germ.cramer_mismatch = std::abs(*germ.cramer_dr1 - dr(0)) / std::max(std::abs(dr(0)), 1e-300);
  germ.tangent = scaled_point(w, germ.dr_ds);
  double radial = 0.0;
  for (std::size_t j = 0; j < n; ++j) radial += germ.dr_ds[j] * std::norm(w[j]);
  germ.radial_derivative = 2.0 * radial;
  return germ;
}

std::vector<CurvePoint> trace_curve(const FamilyMember& member, const LinkSample& sample,
                                    const std::vector<double>& s_values, const TransversalOptions& options) {
  if (!sample.nullity.empty()) throw std::invalid_argument("trace_curve needs a sample with empty nullity set");
  const std::size_t n = member.spec.n();
  const std::span<const Complex> w(sample.w);
  for (double s : s_values) {
    if (!(std::abs(s) <= 0.5)) throw std::invalid_argument("trace_curve: |s| must not exceed 0.5");
  }
  const Complex f0 = eval(member.poly, w);

  // Continue separately along s >= 0 and s < 0 from r = 1, in order of |s|.
  std::vector<std::size_t> order(s_values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const bool pi = s_values[i] >= 0.0, pj = s_values[j] >= 0.0;
    if (pi != pj) return pi;
    return std::abs(s_values[i]) < std::abs(s_values[j]);
  });

  std::vector<CurvePoint> out(s_values.size());
  std::vector<double> r(n, 1.0);
  double current = 0.0;
  bool positive_branch = true;
  constexpr double max_step = 0.05;
  for (std::size_t idx : order) {
    const double target = s_values[idx];
    if (positive_branch && target < 0.0) {
      positive_branch = false;
      r.assign(n, 1.0);
      current = 0.0;
    }
    const int substeps = std::max(1, static_cast<int>(std::ceil(std::abs(target - current) / max_step)));
    for (int k = 1; k <= substeps; ++k) {
      const double s = current + (target - current) * k / substeps;
      if (!newton_h(member, w, s, r, options)) {
        throw TransversalError(TransversalError::Kind::ConvergenceFailure,
                               "curve continuation failed at s = " + std::to_string(s));
      }
    }
    current = target;
    CurvePoint p;
    p.s = target;
    p.r = r;
    p.w = scaled_point(w, r);
    p.residual = std::abs(eval(member.poly, p.w) - (target + 1.0) * f0);
    out[idx] = std::move(p);
  }
  return out;
}

std::vector<std::size_t> BambooComponent::vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= terms; ++k) out.push_back(vertex(k));
  return out;
}

std::size_t NullityRestriction::surviving_terms() const {
  std::size_t total = 0;
  for (const auto& c : components) total += c.terms;
  return total;
}

NullityRestriction restrict_to_nullity(const FamilyMember& member, const std::vector<std::size_t>& nullity) {
  const std::size_t n = member.spec.n();
  if (nullity.empty()) throw std::invalid_argument("restrict_to_nullity: nullity set must be nonempty");
  std::vector<bool> zeroed(n, false);
  for (auto i : nullity) {
    if (i >= n) throw std::out_of_range("restrict_to_nullity: index out of range");
    zeroed[i] = true;
  }
  NullityRestriction out;
  for (std::size_t i = 0; i < n; ++i)
    if (zeroed[i]) out.nullity.push_back(i);
  out.restricted = member.poly.restrict_zero(zeroed);

  // cyclic term j couples z_j and z_{j+1}
  std::vector<bool> alive(n);
  for (std::size_t j = 0; j < n; ++j) alive[j] = !zeroed[j] && !zeroed[(j + 1) % n];
  std::vector<bool> in_j(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    // a run starts at an alive term whose predecessor is dead
    if (!alive[j] || alive[(j + n - 1) % n]) continue;
    BambooComponent comp{j, 0, n};
    while (alive[(j + comp.terms) % n]) ++comp.terms;
    for (auto v : comp.vertices()) in_j[v] = true;
    out.components.push_back(comp);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (in_j[i]) out.surviving.push_back(i);
  return out;
}

double solve_scaling_equation(int a, int b, double t, double modulus, double s_j) {
  if (!(s_j > 0.0)) throw std::invalid_argument("solve_scaling_equation: s_j must be positive");
  if (!(modulus > 0.0)) throw std::invalid_argument("solve_scaling_equation: |w_j| must be positive");
  if (s_j == 1.0) return 1.0;
  const double c = (1.0 - t) * ipow(modulus * modulus, b);
  const double beta = c + t;
  auto g = [&](double r) { return ipow(r, a) * (c * ipow(r, 2 * b) + t) - s_j * beta; };
  auto dg = [&](double r) { return ipow(r, a - 1) * (c * (a + 2 * b) * ipow(r, 2 * b) + a * t); };

  // g is increasing with g(1) = (1 - s_j) beta; the root lies between 1 and s_j.
  double lo = std::min(1.0, s_j);
  double hi = std::max(1.0, s_j);
  while (g(lo) > 0.0) lo *= 0.5;
  while (g(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  double r = 0.5 * (lo + hi);
  for (int polish = 0; polish < 2; ++polish) {
    const double d = dg(r);
    if (d <= 0.0) break;
    const double next = r - g(r) / d;
    if (next >= lo - 1e-14 && next <= hi + 1e-14) r = next;
  }
  return r;
}

BambooState solve_bamboo(const FamilyMember& member, std::span<const Complex> w, const BambooComponent& component,
                         double s) {
  BambooState state;
  state.r.assign(component.terms + 1, 1.0);
  state.s_param.assign(component.terms, 1.0);
  for (std::size_t k = component.terms; k-- > 0;) {
    const std::size_t j = component.vertex(k);
    state.s_param[k] = (s + 1.0) / state.r[k + 1];
    state.r[k] = solve_scaling_equation(member.spec.a[j], member.spec.b[j], member.t, std::abs(w[j]), state.s_param[k]);
  }
  return state;
}

std::vector<double> bamboo_derivatives(const FamilyMember& member, std::span<const Complex> w,
                                       const BambooComponent& component) {
  std::vector<double> dr(component.terms + 1, 0.0);
  for (std::size_t k = component.terms; k-- > 0;) {
    const std::size_t j = component.vertex(k);
    const int a = member.spec.a[j];
    const int b = member.spec.b[j];
    const double c = conj_weight(member, w, j);
    const double beta = c + member.t;
    const double slope = c * (a + 2 * b) + a * member.t;  // alpha'_{j,j} at r = 1
    const double ds_j = 1.0 - dr[k + 1];                   // d/ds (s+1)/r_{j+1} at s = 0
    dr[k] = ds_j * beta / slope;
  }
  return dr;
}

CurveGerm tangent_case2(const FamilyMember& member, const LinkSample& sample, const TransversalOptions& options) {
  if (sample.nullity.empty()) throw std::invalid_argument("tangent_case2 needs a nonempty nullity set");
  const std::size_t n = member.spec.n();
  const std::span<const Complex> w(sample.w);
  if (w.size() != n) throw std::invalid_argument("dimension mismatch with the family member");
  for (auto i : sample.nullity) {
    if (i >= n || w[i] != Complex(0.0, 0.0)) {
      throw TransversalError(TransversalError::Kind::InfeasibleSample, "nullity set does not match the sample");
    }
  }
  const double norm2 = norm_squared(w);
  const double scale = 1.0 + std::pow(std::sqrt(norm2), member.poly.max_total_degree());
  if (!(std::abs(eval(member.poly, w)) <= options.on_variety_rel * scale)) {
    throw TransversalError(TransversalError::Kind::InfeasibleSample, "sample is not on V_t");
  }

  const NullityRestriction restriction = restrict_to_nullity(member, sample.nullity);
  CurveGerm germ;
  germ.base = sample;
  germ.dr_ds.assign(n, 0.0);
  if (restriction.vanishes()) {
    // w(s) = (s + 1) w
    germ.method = GermMethod::Scaling;
    for (std::size_t j = 0; j < n; ++j)
      if (w[j] != Complex(0.0, 0.0)) germ.dr_ds[j] = 1.0;
  } else {
    germ.method = GermMethod::BambooRecursion;
    for (const auto& comp : restriction.components) {
      const auto dr = bamboo_derivatives(member, w, comp);
      for (std::size_t k = 0; k <= comp.terms; ++k) germ.dr_ds[comp.vertex(k)] = dr[k];
      germ.witnesses.push_back(comp.vertex(comp.terms - 1));
    }
  }
  germ.tangent = scaled_point(w, germ.dr_ds);
  double radial = 0.0;
  for (std::size_t j = 0; j < n; ++j) radial += germ.dr_ds[j] * std::norm(w[j]);
  germ.radial_derivative = 2.0 * radial;
  return germ;
}

CurveGerm curve_germ(const FamilyMember& member, const LinkSample& sample, const TransversalOptions& options) {
  return sample.nullity.empty() ? tangent_case1(member, sample, options) : tangent_case2(member, sample, options);
}

DirectCheck direct_check(const FamilyMember& member, std::span<const Complex> w) {
  const std::size_t n = member.spec.n();
  if (w.size() != n) throw std::invalid_argument("dimension mismatch with the family member");
  if (norm_squared(w) == 0.0) throw std::invalid_argument("direct_check: the origin is not on any sphere r > 0");
  Eigen::MatrixXd jac(3, 2 * n);
  jac.topRows(2) = real_jacobian(member.poly, w);
  for (std::size_t j = 0; j < n; ++j) {
    jac(2, static_cast<Eigen::Index>(2 * j)) = 2.0 * w[j].real();
    jac(2, static_cast<Eigen::Index>(2 * j + 1)) = 2.0 * w[j].imag();
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const auto& sv = svd.singularValues();
  return DirectCheck{sv(2), sv(0)};
}

}  // namespace mixedlink
