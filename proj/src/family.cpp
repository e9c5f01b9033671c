#include "mixedlink/family.hpp"

#include <algorithm>
#include <stdexcept>

namespace mixedlink {

namespace {

void require_structure(const CyclicFamilySpec& spec) {
  const SpecReport report = validate_spec(spec, false);
  if (!report.structurally_valid()) {
    std::string msg = "invalid cyclic family spec:";
    for (auto v : report.violations) msg += " " + to_string(v);
    throw std::invalid_argument(msg);
  }
}

// z_j^{a + b} conj(z_j)^b z_{next}, with next == n meaning no linear factor.
MixedMonomial chain_term(std::size_t n, std::size_t j, std::size_t next, int a, int b, Complex coeff) {
  MixedMonomial m{coeff, std::vector<int>(n, 0), std::vector<int>(n, 0)};
  m.nu[j] += a + b;
  m.mu[j] += b;
  if (next < n) m.nu[next] += 1;
  return m;
}

MixedPolynomial cyclic_combination(const CyclicFamilySpec& spec, double t) {
  const std::size_t n = spec.n();
  std::vector<MixedMonomial> terms;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t next = (j + 1) % n;
    if (spec.b[j] == 0) {
      // (1 - t) + t collapses to exactly 1
      terms.push_back(chain_term(n, j, next, spec.a[j], 0, 1.0));
      continue;
    }
    if (t < 1.0) terms.push_back(chain_term(n, j, next, spec.a[j], spec.b[j], 1.0 - t));
    if (t > 0.0) terms.push_back(chain_term(n, j, next, spec.a[j], 0, t));
  }
  return MixedPolynomial(n, std::move(terms));
}

void require_exponents(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() || a.size() != b.size()) throw std::invalid_argument("exponent vectors must be nonempty and equal length");
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < 1 || b[j] < 0) throw std::invalid_argument("need a_j >= 1 and b_j >= 0");
  }
}

}  // namespace

std::string to_string(SpecViolation v) {
  switch (v) {
    case SpecViolation::TooFewVariables: return "n must be at least 2";
    case SpecViolation::LengthMismatch: return "a and b must have the same length";
    case SpecViolation::ExponentBelowOne: return "every a_j must be >= 1";
    case SpecViolation::NegativeConjugate: return "every b_j must be >= 0";
    case SpecViolation::NoConjugate: return "assumption (a) violated: no b_j >= 1";
    case SpecViolation::NoExponentAtLeastTwo: return "assumption (b) violated: no a_k >= 2";
  }
  return "unknown violation";
}

bool SpecReport::structurally_valid() const {
  return std::none_of(violations.begin(), violations.end(), [](SpecViolation v) {
    return v != SpecViolation::NoConjugate && v != SpecViolation::NoExponentAtLeastTwo;
  });
}

SpecReport validate_spec(const CyclicFamilySpec& spec, bool require_b) {
  SpecReport report;
  if (spec.a.size() < 2) report.violations.push_back(SpecViolation::TooFewVariables);
  if (spec.a.size() != spec.b.size()) {
    report.violations.push_back(SpecViolation::LengthMismatch);
    return report;
  }
  if (std::any_of(spec.a.begin(), spec.a.end(), [](int x) { return x < 1; }))
    report.violations.push_back(SpecViolation::ExponentBelowOne);
  if (std::any_of(spec.b.begin(), spec.b.end(), [](int x) { return x < 0; }))
    report.violations.push_back(SpecViolation::NegativeConjugate);
  if (std::none_of(spec.b.begin(), spec.b.end(), [](int x) { return x >= 1; }))
    report.violations.push_back(SpecViolation::NoConjugate);
  if (require_b && std::none_of(spec.a.begin(), spec.a.end(), [](int x) { return x >= 2; }))
    report.violations.push_back(SpecViolation::NoExponentAtLeastTwo);
  return report;
}

FamilyMember make_member(const CyclicFamilySpec& spec, double t) {
  require_structure(spec);
  if (!(t >= 0.0 && t <= 1.0)) throw std::out_of_range("family parameter t must lie in [0, 1]");
  return FamilyMember{spec, t, cyclic_combination(spec, t)};
}

MixedPolynomial make_cyclic(const CyclicFamilySpec& spec) {
  require_structure(spec);
  return cyclic_combination(spec, 0.0);
}

MixedPolynomial make_associated(const CyclicFamilySpec& spec) {
  require_structure(spec);
  return cyclic_combination(spec, 1.0);
}

MixedPolynomial make_bamboo(const std::vector<int>& a, const std::vector<int>& b) {
  require_exponents(a, b);
  const std::size_t n = a.size();
  std::vector<MixedMonomial> terms;
  for (std::size_t j = 0; j < n; ++j) terms.push_back(chain_term(n, j, j + 1, a[j], b[j], 1.0));
  return MixedPolynomial(n, std::move(terms));
}

MixedPolynomial make_brieskorn(const std::vector<int>& a, const std::vector<int>& b) {
  require_exponents(a, b);
  const std::size_t n = a.size();
  std::vector<MixedMonomial> terms;
  for (std::size_t j = 0; j < n; ++j) terms.push_back(chain_term(n, j, n, a[j], b[j], 1.0));
  return MixedPolynomial(n, std::move(terms));
}

Integer det_NM(const CyclicFamilySpec& spec) {
  Integer product = 1;
  for (int x : spec.a) product *= x;
  return spec.n() % 2 == 1 ? Integer(product + 1) : Integer(product - 1);
}

}  // namespace mixedlink
