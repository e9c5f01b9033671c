// Independent reference implementations used by the tests. Nothing here
// calls into the library's numerical code.
#ifndef MIXEDLINK_TESTS_ORACLES_HPP
#define MIXEDLINK_TESTS_ORACLES_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using Rat = boost::multiprecision::cpp_rational;

inline cd ipow(cd z, int e) {
  cd out = 1.0;
  for (int k = 0; k < e; ++k) out *= z;
  return out;
}

inline double ipow(double x, int e) {
  double out = 1.0;
  for (int k = 0; k < e; ++k) out *= x;
  return out;
}

// The cyclic family written directly from its defining sum.
inline cd cyclic_family(const std::vector<int>& a, const std::vector<int>& b, double t, const std::vector<cd>& z) {
  const std::size_t n = a.size();
  cd sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const cd zj = z[j];
    const cd zn = z[(j + 1) % n];
    sum += ipow(zj, a[j]) * zn * ((1.0 - t) * ipow(std::norm(zj), b[j]) + t);
  }
  return sum;
}

struct Term {
  cd coeff;
  std::vector<int> nu;
  std::vector<int> mu;
};

inline cd eval_terms(const std::vector<Term>& terms, const std::vector<cd>& z) {
  cd sum = 0.0;
  for (const auto& tm : terms) {
    cd v = tm.coeff;
    for (std::size_t j = 0; j < z.size(); ++j) v *= ipow(z[j], tm.nu[j]) * ipow(std::conj(z[j]), tm.mu[j]);
    sum += v;
  }
  return sum;
}

// Central differences of (Re F, Im F) in x1, y1, ..., xn, yn.
inline Eigen::MatrixXd fd_jacobian(const std::function<cd(const std::vector<cd>&)>& F, const std::vector<cd>& z,
                                   double h) {
  const std::size_t n = z.size();
  Eigen::MatrixXd J(2, 2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (int part = 0; part < 2; ++part) {
      std::vector<cd> zp = z, zm = z;
      const cd step = part == 0 ? cd(h, 0) : cd(0, h);
      zp[j] += step;
      zm[j] -= step;
      const cd d = (F(zp) - F(zm)) / (2.0 * h);
      J(0, 2 * j + part) = d.real();
      J(1, 2 * j + part) = d.imag();
    }
  }
  return J;
}

// Leibniz expansion over all permutations.
template <typename T>
T leibniz_det(const std::vector<std::vector<T>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  T total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    T prod = 1;
    for (std::size_t i = 0; i < n && prod != 0; ++i) prod *= m[i][perm[i]];
    total += (inversions % 2 == 0) ? prod : T(-prod);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Cramer's rule over the rationals; empty result when singular.
inline std::vector<Rat> cramer_solve(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b) {
  const Rat det = leibniz_det(a);
  if (det == 0) return {};
  std::vector<Rat> x(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    auto ak = a;
    for (std::size_t i = 0; i < a.size(); ++i) ak[i][k] = b[i];
    x[k] = leibniz_det(ak) / det;
  }
  return x;
}

// h_j of the curve construction, written out term by term.
inline std::vector<double> h_direct(const std::vector<int>& a, const std::vector<int>& b, double t,
                                    const std::vector<cd>& w, const std::vector<double>& r, double s) {
  const std::size_t n = a.size();
  std::vector<double> h(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double m2b = ipow(std::norm(w[j]), b[j]);
    const double lhs = ipow(r[j], a[j]) * r[(j + 1) % n] * ((1.0 - t) * m2b * ipow(r[j], 2 * b[j]) + t);
    h[j] = lhs - (s + 1.0) * ((1.0 - t) * m2b + t);
  }
  return h;
}

// n x n Jacobian of h in r by central differences.
inline Eigen::MatrixXd fd_h_jacobian(const std::vector<int>& a, const std::vector<int>& b, double t,
                                     const std::vector<cd>& w, const std::vector<double>& r, double step) {
  const std::size_t n = a.size();
  Eigen::MatrixXd J(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    auto rp = r, rm = r;
    rp[k] += step;
    rm[k] -= step;
    const auto hp = h_direct(a, b, t, w, rp, 0.0);
    const auto hm = h_direct(a, b, t, w, rm, 0.0);
    for (std::size_t j = 0; j < n; ++j) J(j, k) = (hp[j] - hm[j]) / (2.0 * step);
  }
  return J;
}

// Scalar root of r^a (c r^{2b} + t) = s (c + t) by plain bisection.
inline double scaling_root(int a, int b, double t, double modulus, double s) {
  const double c = (1.0 - t) * ipow(modulus * modulus, b);
  auto g = [&](double r) { return ipow(r, a) * (c * ipow(r, 2 * b) + t) - s * (c + t); };
  double lo = 0.0, hi = 1.0;
  while (g(hi) < 0.0) hi *= 2.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline std::vector<cd> random_point(std::mt19937_64& rng, std::size_t n, double scale) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cd> z(n);
  for (auto& x : z) x = cd(g(rng), g(rng)) * scale;
  return z;
}

}  // namespace oracle

#endif  // MIXEDLINK_TESTS_ORACLES_HPP
