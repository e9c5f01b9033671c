#include "doctest.h"
#include "oracles.hpp"

#include "mixedlink/family.hpp"
#include "mixedlink/torusmap.hpp"
#include "mixedlink/weights.hpp"

#include <cmath>
#include <random>

using namespace mixedlink;

namespace {

MixedPolynomial example_one() {
  return MixedPolynomial(3, {{1.0, {3, 1, 0}, {1, 0, 0}}, {1.0, {0, 3, 1}, {0, 1, 0}}, {1.0, {1, 0, 3}, {0, 0, 1}}});
}

RatMatrix example_E() {
  const int num[3][3] = {{17, -4, 2}, {2, 17, -4}, {-4, 2, 17}};
  RatMatrix E(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) E(i, j) = Rational(num[i][j], 9);
  return E;
}

RatMatrix identity_matrix(std::size_t n) {
  RatMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

// Random polynomial with n monomials that admits a torus map.
std::optional<MixedPolynomial> random_full(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> e(0, 3), c(-3, 3);
  std::vector<MixedMonomial> monos;
  for (std::size_t i = 0; i < n; ++i) {
    MixedMonomial m{Complex(c(rng), c(rng)), std::vector<int>(n), std::vector<int>(n)};
    if (m.coeff == Complex(0.0, 0.0)) m.coeff = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      m.nu[j] = e(rng);
      m.mu[j] = e(rng) / 2;
    }
    monos.push_back(m);
  }
  MixedPolynomial f(n, monos);
  if (f.size() != n || !is_simplicial(f)) return std::nullopt;
  return f;
}

}  // namespace

TEST_CASE("exponent matrix of the three-variable example") {
  const auto tm = build_torus_map(example_one());
  CHECK(tm.E == example_E());
  const auto em = exponent_matrices(example_one());
  CHECK(multiply(em.difference_rows().cast<Rational>(), tm.E) == em.sum_rows().cast<Rational>());
  CHECK(to_json(tm.E).dump() ==
        R"([["17/9","-4/9","2/9"],["2/9","17/9","-4/9"],["-4/9","2/9","17/9"]])");
}

TEST_CASE("holomorphic polynomials give the identity") {
  const auto g = make_associated({{2, 3, 2}, {1, 1, 1}});
  const auto tm = build_torus_map(g);
  CHECK(tm.E == identity_matrix(3));
  CHECK(check_fiber_preservation(tm, 100, 3) <= 1e-14);
  CHECK(extendability_report(tm).verdict == Extendability::Extendable);
}

TEST_CASE("mixed Brieskorn polynomials give a diagonal matrix") {
  const std::vector<int> a{2, 3, 1, 4}, b{1, 0, 2, 3};
  const auto tm = build_torus_map(make_brieskorn(a, b));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(tm.E(i, j) == (i == j ? Rational(a[i] + 2 * b[i], a[i]) : Rational(0)));
  const auto rep = extendability_report(tm);
  CHECK(rep.diagonal);
  CHECK(rep.negative_entries.empty());
  CHECK(rep.verdict == Extendability::Extendable);
  CHECK(to_string(rep.verdict) == "extendable");
}

TEST_CASE("construction errors") {
  try {
    build_torus_map(MixedPolynomial(3, {{1.0, {2, 1, 0}, {0, 0, 0}}}));
    FAIL("expected NotFull");
  } catch (const TorusMapError& e) {
    CHECK(e.kind() == TorusMapError::Kind::NotFull);
  }
  try {
    build_torus_map(make_cyclic({{1, 1, 1, 1}, {0, 0, 0, 0}}));
    FAIL("expected SingularSystem");
  } catch (const TorusMapError& e) {
    CHECK(e.kind() == TorusMapError::Kind::SingularSystem);
  }
}

TEST_CASE("applying the map") {
  const auto tm = build_torus_map(example_one());
  const ComplexVector unit{std::polar(1.0, 0.3), std::polar(1.0, -2.0), std::polar(1.0, 1.1)};
  const auto same = apply_torus_map(tm, unit);
  for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(same[j] - unit[j]) < 1e-15);

  const ComplexVector z{2.0, 1.0, 1.0};
  const auto w = apply_torus_map(tm, z);
  CHECK(std::abs(w[0] - std::pow(2.0, 17.0 / 9.0)) < 1e-13);
  CHECK(std::abs(w[1] - std::pow(2.0, 2.0 / 9.0)) < 1e-13);
  CHECK(std::abs(w[2] - std::pow(2.0, -4.0 / 9.0)) < 1e-13);

  CHECK_THROWS_AS(apply_torus_map(tm, ComplexVector{1.0, 0.0, 1.0}), TorusMapError);
  try {
    to_polar(ComplexVector{0.0, 1.0, 1.0});
  } catch (const TorusMapError& e) {
    CHECK(e.kind() == TorusMapError::Kind::OnCoordinatePlane);
  }
}

TEST_CASE("phases are copied bitwise") {
  std::mt19937_64 rng(4);
  const auto tm = build_torus_map(example_one());
  for (int k = 0; k < 50; ++k) {
    const auto p = to_polar(oracle::random_point(rng, 3, 1.0));
    const auto q = apply_torus_map(tm.E, p);
    CHECK(q.phase == p.phase);
  }
}

TEST_CASE("fiber preservation and a corrupted control") {
  const auto tm = build_torus_map(example_one());
  CHECK(check_fiber_preservation(tm, 100, 11) <= 1e-10);
  CHECK(check_fiber_preservation(tm, 100, 11) == check_fiber_preservation(tm, 100, 11));

  auto bad = tm.E;
  bad(0, 0) += 1;
  CHECK(check_fiber_preservation(with_exponent_matrix(tm, bad), 100, 11) > 1e-3);

  // independent evaluation: g(phi(z)) against f(z) term by term
  std::mt19937_64 rng(12);
  const std::vector<oracle::Term> f_terms{{1.0, {3, 1, 0}, {1, 0, 0}}, {1.0, {0, 3, 1}, {0, 1, 0}},
                                          {1.0, {1, 0, 3}, {0, 0, 1}}};
  const std::vector<oracle::Term> g_terms{{1.0, {2, 1, 0}, {0, 0, 0}}, {1.0, {0, 2, 1}, {0, 0, 0}},
                                          {1.0, {1, 0, 2}, {0, 0, 0}}};
  for (int k = 0; k < 100; ++k) {
    const auto z = oracle::random_point(rng, 3, 0.8);
    const auto w = apply_torus_map(tm, z);
    const Complex fz = oracle::eval_terms(f_terms, z);
    CHECK(std::abs(oracle::eval_terms(g_terms, w) - fz) <= 1e-10 * (1.0 + std::abs(fz)));
  }
}

TEST_CASE("random full simplicial instances") {
  std::mt19937_64 rng(21);
  int tested = 0;
  while (tested < 20) {
    const std::size_t n = 2 + rng() % 4;
    const auto f = random_full(rng, n);
    if (!f) continue;
    TorusMap tm;
    try {
      tm = build_torus_map(*f);
    } catch (const TorusMapError&) {
      continue;
    }
    ++tested;
    const auto em = exponent_matrices(*f);
    CHECK(multiply(em.difference_rows().cast<Rational>(), tm.E) == em.sum_rows().cast<Rational>());
    CHECK(check_fiber_preservation(tm, 100, tested) <= 1e-10);

    const auto inv = inverse_exponent_matrix(tm);
    CHECK(multiply(tm.E, inv) == identity_matrix(n));
    for (int k = 0; k < 10; ++k) {
      const auto z = oracle::random_point(rng, n, 1.0);
      const auto back = apply_inverse_torus_map(tm, apply_torus_map(tm, z));
      for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(back[j] - z[j]) <= 1e-12 * std::max(1.0, std::abs(z[j])));
    }
  }
}

TEST_CASE("Laurent target") {
  const auto g = associated_laurent(example_one());
  REQUIRE(g.monomials.size() == 3);
  CHECK(g.monomials[0].exponents == std::vector<std::int64_t>{2, 1, 0});
  const auto h = associated_laurent(MixedPolynomial(2, {{1.0, {1, 0}, {0, 2}}, {1.0, {0, 1}, {0, 0}}}));
  bool found = false;
  for (const auto& m : h.monomials) found = found || m.exponents == std::vector<std::int64_t>{1, -2};
  CHECK(found);
  CHECK(eval(h, ComplexVector{2.0, 2.0}) == Complex(2.5, 0.0));
  CHECK_THROWS_AS(eval(h, ComplexVector{1.0, 0.0}), TorusMapError);
}

TEST_CASE("extendability of the example") {
  const auto rep = extendability_report(build_torus_map(example_one()));
  CHECK(rep.verdict == Extendability::NonExtendable);
  CHECK(to_string(rep.verdict) == "non-extendable across coordinate planes");
  const std::vector<std::pair<std::size_t, std::size_t>> expect{{0, 1}, {1, 2}, {2, 0}};
  CHECK(rep.negative_entries == expect);

  const auto tm = build_torus_map(example_one());
  RatMatrix pos(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) pos(i, j) = Rational(1 + i + j, 3);
  CHECK(extendability_report(with_exponent_matrix(tm, pos)).verdict == Extendability::NoObstructionFound);
}
