#include "doctest.h"
#include "oracles.hpp"

#include "mixedlink/family.hpp"
#include "mixedlink/mixedpoly.hpp"

#include <numbers>
#include <random>

using namespace mixedlink;

namespace {

const Complex kOmega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

MixedPolynomial example_one() {
  return MixedPolynomial(3, {{1.0, {3, 1, 0}, {1, 0, 0}}, {1.0, {0, 3, 1}, {0, 1, 0}}, {1.0, {1, 0, 3}, {0, 0, 1}}});
}

MixedPolynomial random_poly(std::mt19937_64& rng, std::size_t n, int max_exp, std::size_t terms) {
  std::uniform_int_distribution<int> e(0, max_exp);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<MixedMonomial> monos;
  for (std::size_t k = 0; k < terms; ++k) {
    MixedMonomial m{Complex(g(rng), g(rng)), std::vector<int>(n), std::vector<int>(n)};
    for (std::size_t j = 0; j < n; ++j) {
      m.nu[j] = e(rng);
      m.mu[j] = e(rng);
    }
    monos.push_back(std::move(m));
  }
  return MixedPolynomial(n, std::move(monos));
}

std::vector<oracle::Term> terms_of(const MixedPolynomial& f) {
  std::vector<oracle::Term> out;
  for (const auto& m : f.monomials()) out.push_back({m.coeff, m.nu, m.mu});
  return out;
}

}  // namespace

TEST_CASE("eval of the associated holomorphic member at (1,1,1)") {
  const auto g = make_associated({{2, 2, 2}, {1, 1, 1}});
  const ComplexVector z{1.0, 1.0, 1.0};
  CHECK(eval(g, z) == Complex(3.0, 0.0));
}

TEST_CASE("eval vanishes when every term has a zero factor") {
  const ComplexVector z{1.0, 0.0, 0.0};
  CHECK(eval(example_one(), z) == Complex(0.0, 0.0));
}

TEST_CASE("eval at the cube-root-of-unity point is zero for every t") {
  const ComplexVector w{1.0, kOmega, kOmega};
  for (double t : {0.0, 0.3, 0.5, 1.0}) {
    const auto m = make_member({{2, 2, 2}, {1, 1, 1}}, t);
    CHECK(std::abs(eval(m.poly, w)) < 1e-14);
    CHECK(std::abs(oracle::cyclic_family({2, 2, 2}, {1, 1, 1}, t, w)) < 1e-14);
  }
}

TEST_CASE("eval rejects a dimension mismatch") {
  const ComplexVector z{1.0, 2.0};
  CHECK_THROWS_AS(eval(example_one(), z), std::invalid_argument);
  CHECK_THROWS_AS(real_jacobian(example_one(), z), std::invalid_argument);
}

TEST_CASE("construction merges duplicates and drops zero coefficients") {
  MixedPolynomial f(2, {{1.0, {1, 0}, {0, 1}}, {2.0, {0, 1}, {0, 0}}, {-1.0, {1, 0}, {0, 1}}});
  REQUIRE(f.size() == 1);
  CHECK(f.monomials()[0].coeff == Complex(2.0, 0.0));
  CHECK_THROWS_AS(MixedPolynomial(2, {{1.0, {1}, {0, 0}}}), std::invalid_argument);
  CHECK_THROWS_AS(MixedPolynomial(1, {{1.0, {-1}, {0}}}), std::invalid_argument);
}

TEST_CASE("0^0 is 1 so zeroing a variable matches restriction") {
  const auto f = make_member({{2, 3, 2, 2}, {1, 0, 1, 2}}, 0.4).poly;
  std::mt19937_64 rng(3);
  auto z = oracle::random_point(rng, 4, 0.7);
  z[1] = 0.0;
  const auto restricted = f.restrict_zero({false, true, false, false});
  CHECK(std::abs(eval(f, z) - eval(restricted, z)) < 1e-15);
  CHECK(restricted.size() < f.size());
}

TEST_CASE("real jacobian of the identity and of |z|^2") {
  const MixedPolynomial id(1, {{1.0, {1}, {0}}});
  const ComplexVector z{Complex(0.3, -1.2)};
  const auto J = real_jacobian(id, z);
  CHECK(J(0, 0) == doctest::Approx(1.0));
  CHECK(J(0, 1) == doctest::Approx(0.0));
  CHECK(J(1, 0) == doctest::Approx(0.0));
  CHECK(J(1, 1) == doctest::Approx(1.0));

  const MixedPolynomial sq(1, {{1.0, {1}, {1}}});
  const auto K = real_jacobian(sq, z);
  CHECK(K(0, 0) == doctest::Approx(0.6));
  CHECK(K(0, 1) == doctest::Approx(-2.4));
  CHECK(K(1, 0) == doctest::Approx(0.0));
  CHECK(K(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("real jacobian of a family member matches finite differences") {
  std::mt19937_64 rng(11);
  const auto m = make_member({{2, 3, 2}, {1, 2, 0}}, 0.37);
  const auto z = oracle::random_point(rng, 3, 0.6);
  const auto J = real_jacobian(m.poly, z);
  const auto F = oracle::fd_jacobian(
      [&](const std::vector<Complex>& x) { return oracle::cyclic_family({2, 3, 2}, {1, 2, 0}, 0.37, x); }, z, 1e-6);
  CHECK((J - F).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("real jacobian agrees with finite differences on 1000 random instances") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> dim(1, 6), count(1, 4);
  int worst_ok = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = dim(rng);
    const auto f = random_poly(rng, n, 5, count(rng));
    const auto z = oracle::random_point(rng, n, 0.5);
    const auto terms = terms_of(f);
    const auto J = real_jacobian(f, z);
    const auto F = oracle::fd_jacobian([&](const std::vector<Complex>& x) { return oracle::eval_terms(terms, x); },
                                       z, 1e-6);
    const double scale = std::max(1.0, F.cwiseAbs().maxCoeff());
    if ((J - F).cwiseAbs().maxCoeff() <= 1e-6 * scale) ++worst_ok;
  }
  CHECK(worst_ok == 1000);
}

TEST_CASE("evaluation matches the independent evaluator and is linear") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 200; ++k) {
    const auto f = random_poly(rng, 3, 3, 3);
    const auto g = random_poly(rng, 3, 3, 2);
    const auto z = oracle::random_point(rng, 3, 0.8);
    CHECK(std::abs(eval(f, z) - oracle::eval_terms(terms_of(f), z)) < 1e-12);
    auto monos = f.monomials();
    for (const auto& m : g.monomials()) monos.push_back(m);
    const MixedPolynomial sum(3, monos);
    CHECK(std::abs(eval(sum, z) - (eval(f, z) + eval(g, z))) < 1e-12);
    CHECK(std::abs(std::conj(eval(f, z)) - eval(f.conjugate(), z)) < 1e-12);
  }
}

TEST_CASE("mixed singularity test") {
  const ComplexVector origin(3, 0.0);
  for (double t : {0.0, 0.5, 1.0}) CHECK(is_mixed_singular(make_member({{2, 2, 2}, {1, 1, 1}}, t).poly, origin));
  CHECK(is_mixed_singular(make_member({{1, 2, 1}, {0, 1, 3}}, 0.2).poly, origin));

  const MixedPolynomial sq(1, {{1.0, {1}, {1}}});
  const ComplexVector z{Complex(0.4, 0.9)};
  CHECK(is_mixed_singular(sq, z));

  const ComplexVector w{1.0, kOmega, kOmega};
  CHECK_FALSE(is_mixed_singular(make_member({{2, 2, 2}, {1, 1, 1}}, 0.5).poly, w));
}

TEST_CASE("variable graph classification") {
  for (std::size_t n : {3u, 4u, 5u}) {
    const auto g = variable_graph(make_cyclic({std::vector<int>(n, 2), std::vector<int>(n, 1)}));
    REQUIRE(g.components.size() == 1);
    CHECK(g.components[0].shape == ComponentShape::Cycle);
    CHECK(g.components[0].vertices.size() == n);
    CHECK(g.edges.size() == n);
  }
  const auto bamboo = variable_graph(make_bamboo({2, 3, 2, 2}, {1, 0, 1, 0}));
  REQUIRE(bamboo.components.size() == 1);
  CHECK(bamboo.components[0].shape == ComponentShape::Bamboo);

  const auto brieskorn = variable_graph(make_brieskorn({2, 3, 4}, {1, 0, 2}));
  CHECK(brieskorn.edges.empty());
  REQUIRE(brieskorn.components.size() == 3);
  for (const auto& c : brieskorn.components) CHECK(c.shape == ComponentShape::Isolated);

  const MixedPolynomial star(4, {{1.0, {1, 1, 1, 1}, {0, 0, 0, 0}}});
  CHECK(variable_graph(star).components[0].shape == ComponentShape::Other);
}

TEST_CASE("json records round-trip exactly") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const auto f = random_poly(rng, 4, 4, 5);
    const auto back = polynomial_from_json(nlohmann::json::parse(to_json(f).dump()));
    REQUIRE(back.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(back.monomials()[i].coeff == f.monomials()[i].coeff);
      CHECK(back.monomials()[i].nu == f.monomials()[i].nu);
      CHECK(back.monomials()[i].mu == f.monomials()[i].mu);
    }
  }
}
