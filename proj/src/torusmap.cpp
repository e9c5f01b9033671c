#include "mixedlink/torusmap.hpp"

#include "mixedlink/random.hpp"
#include "mixedlink/weights.hpp"

#include <cmath>
#include <numbers>

namespace mixedlink {

namespace {

RatMatrix identity(std::size_t n) {
  RatMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1;
  return id;
}

Complex laurent_power(Complex z, std::int64_t e) {
  if (e == 0) return 1.0;
  if (e > 0) return std::pow(z, static_cast<int>(e));
  return 1.0 / std::pow(z, static_cast<int>(-e));
}

void require_on_torus(std::span<const Complex> z) {
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (z[j] == Complex(0.0, 0.0)) {
      throw TorusMapError(TorusMapError::Kind::OnCoordinatePlane,
                          "coordinate " + std::to_string(j) + " is zero; the map lives on the torus");
    }
  }
}

}  // namespace

std::string to_string(TorusMapError::Kind kind) {
  switch (kind) {
    case TorusMapError::Kind::NotFull: return "NotFull";
    case TorusMapError::Kind::SingularSystem: return "SingularSystem";
    case TorusMapError::Kind::OnCoordinatePlane: return "OnCoordinatePlane";
  }
  return "?";
}

std::string to_string(Extendability verdict) {
  switch (verdict) {
    case Extendability::Extendable: return "extendable";
    case Extendability::NoObstructionFound: return "no obstruction found";
    case Extendability::NonExtendable: return "non-extendable across coordinate planes";
  }
  return "?";
}

LaurentPolynomial associated_laurent(const MixedPolynomial& f) {
  LaurentPolynomial g;
  g.n = f.num_vars();
  for (const auto& m : f.monomials()) {
    LaurentMonomial lm{m.coeff, {}};
    for (std::size_t j = 0; j < g.n; ++j) lm.exponents.push_back(std::int64_t{m.nu[j]} - std::int64_t{m.mu[j]});
    g.monomials.push_back(std::move(lm));
  }
  return g;
}

Complex eval(const LaurentPolynomial& g, std::span<const Complex> z) {
  if (z.size() != g.n) throw std::invalid_argument("dimension mismatch with the Laurent polynomial");
  Complex sum = 0.0;
  for (const auto& m : g.monomials) {
    Complex term = m.coeff;
    for (std::size_t j = 0; j < g.n; ++j) {
      if (m.exponents[j] < 0 && z[j] == Complex(0.0, 0.0)) {
        throw TorusMapError(TorusMapError::Kind::OnCoordinatePlane, "negative power of a zero coordinate");
      }
      term *= laurent_power(z[j], m.exponents[j]);
    }
    sum += term;
  }
  return sum;
}

TorusMap build_torus_map(const MixedPolynomial& f) {
  const std::size_t n = f.num_vars();
  if (f.size() != n) {
    throw TorusMapError(TorusMapError::Kind::NotFull, "torus map needs as many monomials as variables (" +
                                                          std::to_string(f.size()) + " vs " + std::to_string(n) + ")");
  }
  const ExponentMatrices em = exponent_matrices(f);
  const IntMatrix diff = em.difference_rows();
  const IntMatrix sum = em.sum_rows();
  if (bareiss_determinant(diff) == 0) {
    throw TorusMapError(TorusMapError::Kind::SingularSystem, "transpose(N - M) is singular");
  }
  if (bareiss_determinant(sum) == 0) {
    throw TorusMapError(TorusMapError::Kind::SingularSystem, "transpose(N + M) is singular");
  }
  auto E = solve_exact(diff.cast<Rational>(), sum.cast<Rational>());
  return TorusMap{std::move(*E), f, associated_laurent(f)};
}

TorusMap with_exponent_matrix(const TorusMap& tm, RatMatrix E) {
  if (E.rows() != tm.E.rows() || E.cols() != tm.E.cols())
    throw std::invalid_argument("exponent matrix has the wrong shape");
  return TorusMap{std::move(E), tm.source, tm.target};
}

RatMatrix inverse_exponent_matrix(const TorusMap& tm) {
  auto inv = solve_exact(tm.E, identity(tm.E.rows()));
  if (!inv) throw TorusMapError(TorusMapError::Kind::SingularSystem, "exponent matrix is not invertible");
  return std::move(*inv);
}

PolarPoint to_polar(std::span<const Complex> z) {
  require_on_torus(z);
  PolarPoint p;
  for (const auto& x : z) {
    p.modulus.push_back(std::abs(x));
    p.phase.push_back(std::arg(x));
  }
  return p;
}

ComplexVector from_polar(const PolarPoint& p) {
  ComplexVector z(p.modulus.size());
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = std::polar(p.modulus[j], p.phase[j]);
  return z;
}

PolarPoint apply_torus_map(const RatMatrix& E, const PolarPoint& p) {
  const std::size_t n = p.modulus.size();
  if (E.rows() != n || E.cols() != n) throw std::invalid_argument("dimension mismatch with the exponent matrix");
  std::vector<double> log_rho(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!(p.modulus[j] > 0.0)) throw TorusMapError(TorusMapError::Kind::OnCoordinatePlane, "zero modulus");
    log_rho[j] = std::log(p.modulus[j]);
  }
  PolarPoint out;
  out.phase = p.phase;
  out.modulus.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double log_xi = 0.0;
    for (std::size_t j = 0; j < n; ++j) log_xi += E(i, j).convert_to<double>() * log_rho[j];
    out.modulus[i] = std::exp(log_xi);
  }
  return out;
}

ComplexVector apply_torus_map(const TorusMap& tm, std::span<const Complex> z) {
  return from_polar(apply_torus_map(tm.E, to_polar(z)));
}

ComplexVector apply_inverse_torus_map(const TorusMap& tm, std::span<const Complex> w) {
  return from_polar(apply_torus_map(inverse_exponent_matrix(tm), to_polar(w)));
}

double check_fiber_preservation(const TorusMap& tm, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = tm.source.num_vars();
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng(derive_seed(seed, {k}));
    PolarPoint p;
    for (std::size_t j = 0; j < n; ++j) {
      p.modulus.push_back(std::exp(uniform(rng, std::log(0.5), std::log(2.0))));
      p.phase.push_back(uniform(rng, -std::numbers::pi, std::numbers::pi));
    }
    const ComplexVector z = from_polar(p);
    const ComplexVector w = from_polar(apply_torus_map(tm.E, p));
    const Complex fz = eval(tm.source, z);
    worst = std::max(worst, std::abs(eval(tm.target, w) - fz) / (1.0 + std::abs(fz)));
  }
  return worst;
}

ExtendabilityReport extendability_report(const TorusMap& tm) {
  ExtendabilityReport rep;
  rep.diagonal = true;
  for (std::size_t i = 0; i < tm.E.rows(); ++i) {
    for (std::size_t j = 0; j < tm.E.cols(); ++j) {
      if (tm.E(i, j) < 0) {
        rep.negative_entries.emplace_back(i, j);
      }
      if (i != j && tm.E(i, j) != 0) rep.diagonal = false;
    }
  }
  if (!rep.negative_entries.empty()) {
    rep.verdict = Extendability::NonExtendable;
  } else if (rep.diagonal) {
    rep.verdict = Extendability::Extendable;
  } else {
    rep.verdict = Extendability::NoObstructionFound;
  }
  return rep;
}

nlohmann::ordered_json to_json(const RatMatrix& E) {
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < E.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < E.cols(); ++j) row.push_back(to_string(E(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json to_json(const LaurentPolynomial& g) {
  nlohmann::ordered_json j;
  j["n"] = g.n;
  auto monos = nlohmann::ordered_json::array();
  for (const auto& m : g.monomials) {
    monos.push_back({{"coeff_re", m.coeff.real()}, {"coeff_im", m.coeff.imag()}, {"exponents", m.exponents}});
  }
  j["monomials"] = std::move(monos);
  return j;
}

nlohmann::ordered_json to_json(const ExtendabilityReport& report) {
  nlohmann::ordered_json j;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [i, k] : report.negative_entries) entries.push_back({i, k});
  j["negative_entries"] = std::move(entries);
  j["diagonal"] = report.diagonal;
  j["verdict"] = to_string(report.verdict);
  return j;
}

}  // namespace mixedlink
