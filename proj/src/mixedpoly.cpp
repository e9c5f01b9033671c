#include "mixedlink/mixedpoly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mixedlink {

namespace {

Complex ipow(Complex base, int exponent) {
  Complex result(1.0, 0.0);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

void require_dimension(const MixedPolynomial& f, std::span<const Complex> z) {
  if (z.size() != f.num_vars()) {
    throw std::invalid_argument("dimension mismatch: polynomial has " + std::to_string(f.num_vars()) +
                                " variables, point has " + std::to_string(z.size()));
  }
}

// c * z^nu * conj(z)^mu with the exponent of variable `skip_var` in the
// holomorphic (or antiholomorphic) part lowered by one. skip_var == n means none.
Complex monomial_value(const MixedMonomial& m, std::span<const Complex> z, std::size_t skip_holo,
                       std::size_t skip_anti) {
  Complex value = m.coeff;
  for (std::size_t j = 0; j < z.size(); ++j) {
    const int p = m.nu[j] - (j == skip_holo ? 1 : 0);
    const int q = m.mu[j] - (j == skip_anti ? 1 : 0);
    if (p > 0) value *= ipow(z[j], p);
    if (q > 0) value *= ipow(std::conj(z[j]), q);
  }
  return value;
}

}  // namespace

int MixedMonomial::total_degree() const {
  return std::accumulate(nu.begin(), nu.end(), 0) + std::accumulate(mu.begin(), mu.end(), 0);
}

MixedPolynomial::MixedPolynomial(std::size_t n, std::vector<MixedMonomial> monomials) : n_(n) {
  if (n == 0) throw std::invalid_argument("mixed polynomial needs at least one variable");
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::size_t> index;
  for (auto& m : monomials) {
    if (m.nu.size() != n || m.mu.size() != n) {
      throw std::invalid_argument("monomial exponent vectors must have length " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (m.nu[j] < 0 || m.mu[j] < 0) throw std::invalid_argument("monomial exponents must be nonnegative");
    }
    auto key = std::make_pair(m.nu, m.mu);
    if (auto it = index.find(key); it != index.end()) {
      monomials_[it->second].coeff += m.coeff;
    } else {
      index.emplace(std::move(key), monomials_.size());
      monomials_.push_back(std::move(m));
    }
  }
  std::erase_if(monomials_, [](const MixedMonomial& m) { return m.coeff == Complex(0.0, 0.0); });
}

int MixedPolynomial::max_total_degree() const {
  int d = 0;
  for (const auto& m : monomials_) d = std::max(d, m.total_degree());
  return d;
}

MixedPolynomial MixedPolynomial::conjugate() const {
  std::vector<MixedMonomial> out;
  out.reserve(monomials_.size());
  for (const auto& m : monomials_) out.push_back({std::conj(m.coeff), m.mu, m.nu});
  return MixedPolynomial(n_, std::move(out));
}

MixedPolynomial MixedPolynomial::restrict_zero(const std::vector<bool>& zeroed) const {
  if (zeroed.size() != n_) throw std::invalid_argument("restrict_zero: mask length mismatch");
  std::vector<MixedMonomial> out;
  for (const auto& m : monomials_) {
    bool vanishes = false;
    for (std::size_t j = 0; j < n_ && !vanishes; ++j) vanishes = zeroed[j] && m.contains(j);
    if (!vanishes) out.push_back(m);
  }
  return MixedPolynomial(n_, std::move(out));
}

Complex eval(const MixedPolynomial& f, std::span<const Complex> z) {
  require_dimension(f, z);
  const std::size_t none = z.size();
  Complex sum(0.0, 0.0);
  for (const auto& m : f.monomials()) sum += monomial_value(m, z, none, none);
  return sum;
}

Eigen::MatrixXd real_jacobian(const MixedPolynomial& f, std::span<const Complex> z) {
  require_dimension(f, z);
  const std::size_t n = z.size();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2, 2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex dz(0.0, 0.0);
    Complex dzbar(0.0, 0.0);
    for (const auto& m : f.monomials()) {
      if (m.nu[j] > 0) dz += static_cast<double>(m.nu[j]) * monomial_value(m, z, j, n);
      if (m.mu[j] > 0) dzbar += static_cast<double>(m.mu[j]) * monomial_value(m, z, n, j);
    }
    // d/dx = d/dz + d/dzbar, d/dy = i (d/dz - d/dzbar)
    const Complex dx = dz + dzbar;
    const Complex dy = Complex(0.0, 1.0) * (dz - dzbar);
    jac(0, 2 * j) = dx.real();
    jac(1, 2 * j) = dx.imag();
    jac(0, 2 * j + 1) = dy.real();
    jac(1, 2 * j + 1) = dy.imag();
  }
  return jac;
}

bool is_mixed_singular(const MixedPolynomial& f, std::span<const Complex> z, double rel_tol) {
  if (!(rel_tol > 0)) throw std::invalid_argument("is_mixed_singular: tolerance must be positive");
  const Eigen::MatrixXd jac = real_jacobian(f, z);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const auto& sv = svd.singularValues();
  const double sigma1 = sv(0);
  const double sigma2 = sv.size() > 1 ? sv(1) : 0.0;
  return sigma2 <= rel_tol * sigma1;
}

std::string to_string(ComponentShape shape) {
  switch (shape) {
    case ComponentShape::Isolated: return "isolated";
    case ComponentShape::Bamboo: return "bamboo";
    case ComponentShape::Cycle: return "cycle";
    case ComponentShape::Other: return "other";
  }
  return "other";
}

InterconnGraph variable_graph(const MixedPolynomial& f) {
  const std::size_t n = f.num_vars();
  InterconnGraph g;
  std::vector<bool> present(n, false);
  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
  for (const auto& m : f.monomials()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!m.contains(i)) continue;
      present[i] = true;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (m.contains(j)) adjacent[i][j] = adjacent[j][i] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (present[i]) g.vertices.push_back(i);
    for (std::size_t j = i + 1; j < n; ++j)
      if (adjacent[i][j]) g.edges.emplace_back(i, j);
  }

  std::vector<bool> seen(n, false);
  for (std::size_t start : g.vertices) {
    if (seen[start]) continue;
    GraphComponent comp;
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      comp.vertices.push_back(v);
      for (std::size_t u = 0; u < n; ++u) {
        if (adjacent[v][u] && !seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
    std::sort(comp.vertices.begin(), comp.vertices.end());

    std::size_t edge_count = 0;
    std::size_t max_degree = 0;
    for (std::size_t v : comp.vertices) {
      const auto deg = static_cast<std::size_t>(std::count(adjacent[v].begin(), adjacent[v].end(), true));
      edge_count += deg;
      max_degree = std::max(max_degree, deg);
    }
    edge_count /= 2;
    const std::size_t size = comp.vertices.size();
    if (size == 1) {
      comp.shape = ComponentShape::Isolated;
    } else if (max_degree <= 2 && edge_count + 1 == size) {
      comp.shape = ComponentShape::Bamboo;
    } else if (max_degree == 2 && edge_count == size && size >= 3) {
      comp.shape = ComponentShape::Cycle;
    } else {
      comp.shape = ComponentShape::Other;
    }
    g.components.push_back(std::move(comp));
  }
  return g;
}

nlohmann::json to_json(const MixedPolynomial& f) {
  nlohmann::json monomials = nlohmann::json::array();
  for (const auto& m : f.monomials()) {
    monomials.push_back({{"coeff_re", m.coeff.real()}, {"coeff_im", m.coeff.imag()}, {"nu", m.nu}, {"mu", m.mu}});
  }
  return {{"n", f.num_vars()}, {"monomials", std::move(monomials)}};
}

MixedPolynomial polynomial_from_json(const nlohmann::json& j) {
  const auto n = j.at("n").get<std::size_t>();
  std::vector<MixedMonomial> monomials;
  for (const auto& rec : j.at("monomials")) {
    monomials.push_back({Complex(rec.at("coeff_re").get<double>(), rec.at("coeff_im").get<double>()),
                         rec.at("nu").get<std::vector<int>>(), rec.at("mu").get<std::vector<int>>()});
  }
  return MixedPolynomial(n, std::move(monomials));
}

std::string to_string(const MixedPolynomial& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& m : f.monomials()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << m.coeff.real() << (m.coeff.imag() < 0 ? "-" : "+") << std::abs(m.coeff.imag()) << "i)";
    for (std::size_t j = 0; j < m.nu.size(); ++j) {
      if (m.nu[j] > 0) os << "*z" << j + 1 << (m.nu[j] > 1 ? "^" + std::to_string(m.nu[j]) : "");
      if (m.mu[j] > 0) os << "*zb" << j + 1 << (m.mu[j] > 1 ? "^" + std::to_string(m.mu[j]) : "");
    }
  }
  return os.str();
}

}  // namespace mixedlink
