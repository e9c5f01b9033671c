#include "doctest.h"
#include "oracles.hpp"

#include "mixedlink/family.hpp"
#include "mixedlink/weights.hpp"

#include <random>

using namespace mixedlink;

namespace {

bool has(const SpecReport& r, SpecViolation v) {
  return std::find(r.violations.begin(), r.violations.end(), v) != r.violations.end();
}

std::vector<std::vector<long long>> diff_rows(const MixedPolynomial& f) {
  const auto d = exponent_matrices(f).difference_rows();
  std::vector<std::vector<long long>> out(d.rows(), std::vector<long long>(d.cols()));
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) out[i][j] = d(i, j).convert_to<long long>();
  return out;
}

}  // namespace

TEST_CASE("spec validation") {
  CHECK(validate_spec({{2, 2, 2}, {1, 1, 1}}).ok());

  const auto no_b = validate_spec({{1, 1}, {1, 1}});
  CHECK(has(no_b, SpecViolation::NoExponentAtLeastTwo));
  CHECK(no_b.structurally_valid());
  CHECK(validate_spec({{1, 1}, {1, 1}}, false).ok());

  const auto no_a = validate_spec({{2, 2}, {0, 0}});
  CHECK(has(no_a, SpecViolation::NoConjugate));

  CHECK(has(validate_spec({{0, 2}, {1, 1}}), SpecViolation::ExponentBelowOne));
  CHECK(has(validate_spec({{2, 2}, {1, -1}}), SpecViolation::NegativeConjugate));
  CHECK(has(validate_spec({{2, 2}, {1}}), SpecViolation::LengthMismatch));
  CHECK(has(validate_spec({{2}, {1}}), SpecViolation::TooFewVariables));
  CHECK_FALSE(validate_spec({{0, 2}, {1, 1}}).structurally_valid());
}

TEST_CASE("members at the endpoints and the midpoint") {
  const CyclicFamilySpec spec{{2, 2, 2}, {1, 1, 1}};
  const auto g = make_member(spec, 1.0);
  REQUIRE(g.poly.size() == 3);
  for (const auto& m : g.poly.monomials()) {
    CHECK(m.coeff == Complex(1.0, 0.0));
    CHECK(m.mu == std::vector<int>{0, 0, 0});
    CHECK(m.total_degree() == 3);
  }
  const auto f = make_member(spec, 0.0);
  REQUIRE(f.poly.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto& m = f.poly.monomials()[j];
    CHECK(m.coeff == Complex(1.0, 0.0));
    CHECK(m.nu[j] == 3);
    CHECK(m.mu[j] == 1);
    CHECK(m.nu[(j + 1) % 3] == 1);
  }
  const auto half = make_member(spec, 0.5);
  CHECK(half.poly.size() == 6);
  for (const auto& m : half.poly.monomials()) CHECK(m.coeff == Complex(0.5, 0.0));
  CHECK(half.t == 0.5);

  CHECK_THROWS_AS(make_member(spec, -0.1), std::out_of_range);
  CHECK_THROWS_AS(make_member(spec, 1.5), std::out_of_range);
  CHECK_THROWS_AS(make_member({{0, 1}, {1, 1}}, 0.5), std::invalid_argument);
}

TEST_CASE("zero conjugate exponents give single exact monomials") {
  const auto m = make_member({{2, 3, 2}, {0, 1, 0}}, 0.3);
  CHECK(m.poly.size() == 4);
  int exact = 0;
  for (const auto& mono : m.poly.monomials())
    if (mono.coeff == Complex(1.0, 0.0)) ++exact;
  CHECK(exact == 2);
}

TEST_CASE("bamboo and Brieskorn constructors") {
  const auto bamboo = make_bamboo({2, 2}, {1, 0});
  REQUIRE(bamboo.size() == 2);
  CHECK(bamboo.monomials()[0].nu == std::vector<int>{3, 1});
  CHECK(bamboo.monomials()[0].mu == std::vector<int>{1, 0});
  CHECK(bamboo.monomials()[1].nu == std::vector<int>{0, 2});
  CHECK(bamboo.monomials()[1].mu == std::vector<int>{0, 0});

  const auto br = make_brieskorn({2, 3}, {1, 0});
  REQUIRE(br.size() == 2);
  CHECK(br.monomials()[0].nu == std::vector<int>{3, 0});
  CHECK(br.monomials()[0].mu == std::vector<int>{1, 0});
  CHECK(br.monomials()[1].nu == std::vector<int>{0, 3});
}

TEST_CASE("det_NM examples") {
  CHECK(det_NM({{2, 2, 2}, {1, 1, 1}}) == 9);
  CHECK(det_NM({{1, 1}, {1, 1}}) == 0);
  CHECK(det_NM({{2, 3}, {0, 1}}) == 5);
  CHECK(oracle::leibniz_det(diff_rows(make_cyclic({{2, 3}, {0, 1}}))) == 5);
}

TEST_CASE("det_NM equals the exact determinant for n <= 8, entries <= 5") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> ea(1, 5), eb(0, 5);
  for (int k = 0; k < 120; ++k) {
    const std::size_t n = 2 + k % 7;
    CyclicFamilySpec spec{std::vector<int>(n), std::vector<int>(n)};
    for (std::size_t j = 0; j < n; ++j) {
      spec.a[j] = ea(rng);
      spec.b[j] = eb(rng);
    }
    const auto rows = diff_rows(make_cyclic(spec));
    CHECK(det_NM(spec) == oracle::leibniz_det(rows));
  }
}

TEST_CASE("members are exact convex combinations") {
  std::mt19937_64 rng(8);
  const CyclicFamilySpec spec{{2, 3, 1, 2}, {1, 0, 2, 1}};
  const auto f0 = make_cyclic(spec);
  const auto g = make_associated(spec);
  for (double t : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    const auto m = make_member(spec, t);
    for (int k = 0; k < 20; ++k) {
      const auto z = oracle::random_point(rng, 4, 0.8);
      const Complex expect = (1.0 - t) * eval(f0, z) + t * eval(g, z);
      CHECK(std::abs(eval(m.poly, z) - expect) < 1e-13);
      CHECK(std::abs(eval(m.poly, z) - oracle::cyclic_family(spec.a, spec.b, t, z)) < 1e-13);
    }
  }
}

TEST_CASE("polar weights do not depend on t and satisfy the cyclic relation") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> ea(1, 4), eb(0, 3);
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = 2 + k % 5;
    CyclicFamilySpec spec{std::vector<int>(n), std::vector<int>(n)};
    for (std::size_t j = 0; j < n; ++j) {
      spec.a[j] = ea(rng);
      spec.b[j] = eb(rng);
    }
    if (det_NM(spec) == 0) continue;
    const auto p0 = polar_weight(make_member(spec, 0.3).poly);
    const auto p1 = polar_weight(make_member(spec, 0.8).poly);
    CHECK(p0.weights == p1.weights);
    CHECK(p0.degree == p1.degree);
    for (std::size_t j = 0; j < n; ++j) CHECK(spec.a[j] * p0.weights[j] + p0.weights[(j + 1) % n] == p0.degree);
  }
}
