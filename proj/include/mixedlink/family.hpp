#ifndef MIXEDLINK_FAMILY_HPP
#define MIXEDLINK_FAMILY_HPP

#include "mixedlink/mixedpoly.hpp"
#include "mixedlink/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace mixedlink {

/// Exponent data (n, a, b) of the cyclic family
///   f_t(z) = sum_j z_j^{a_j} z_{j+1} ((1 - t)|z_j|^{2 b_j} + t),  indices mod n.
struct CyclicFamilySpec {
  std::vector<int> a;
  std::vector<int> b;

  std::size_t n() const { return a.size(); }
};

enum class SpecViolation {
  TooFewVariables,      // n < 2
  LengthMismatch,       // |a| != |b|
  ExponentBelowOne,     // some a_j < 1
  NegativeConjugate,    // some b_j < 0
  NoConjugate,          // assumption (a): no b_j >= 1
  NoExponentAtLeastTwo  // assumption (b): no a_k >= 2
};

std::string to_string(SpecViolation v);

struct SpecReport {
  std::vector<SpecViolation> violations;
  bool ok() const { return violations.empty(); }
  /// Only the structural checks failed or passed; assumptions (a)/(b) aside.
  bool structurally_valid() const;
};

/// `require_b = false` relaxes assumption (b), which is only needed for
/// simpliciality when n is even.
SpecReport validate_spec(const CyclicFamilySpec& spec, bool require_b = true);

/// One member f_{II,t} of the deformation. `t` is carried explicitly.
struct FamilyMember {
  CyclicFamilySpec spec;
  double t = 0.0;
  MixedPolynomial poly;
};

/// Expanded member at t in [0, 1]; t = 0 gives f_II, t = 1 gives g_II.
/// Throws std::invalid_argument on a structurally invalid spec and
/// std::out_of_range for t outside [0, 1].
FamilyMember make_member(const CyclicFamilySpec& spec, double t);

MixedPolynomial make_cyclic(const CyclicFamilySpec& spec);      // f_II
MixedPolynomial make_associated(const CyclicFamilySpec& spec);  // g_II

/// sum_{j<n} z_j^{a_j+b_j} conj(z_j)^{b_j} z_{j+1} + z_n^{a_n+b_n} conj(z_n)^{b_n}
MixedPolynomial make_bamboo(const std::vector<int>& a, const std::vector<int>& b);
/// sum_j z_j^{a_j+b_j} conj(z_j)^{b_j}
MixedPolynomial make_brieskorn(const std::vector<int>& a, const std::vector<int>& b);

/// a_1 ... a_n + (-1)^{n+1}, the determinant of the transposed N - M of f_II.
Integer det_NM(const CyclicFamilySpec& spec);

}  // namespace mixedlink

#endif  // MIXEDLINK_FAMILY_HPP
