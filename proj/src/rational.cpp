#include "mixedlink/rational.hpp"

#include <utility>

namespace mixedlink {

namespace {

// Brings a nonzero entry of column `col` (rows >= `row`) into row `row`.
// Returns false if the column is zero below the diagonal.
template <typename T>
bool pivot_into_place(Matrix<T>& a, std::size_t row, std::size_t col, bool* swapped) {
  if (a(row, col) != 0) {
    *swapped = false;
    return true;
  }
  for (std::size_t i = row + 1; i < a.rows(); ++i) {
    if (a(i, col) != 0) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(row, j), a(i, j));
      *swapped = true;
      return true;
    }
  }
  return false;
}

}  // namespace

Integer bareiss_determinant(IntMatrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("bareiss_determinant: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return Integer(1);
  Integer previous_pivot = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    bool swapped = false;
    if (!pivot_into_place(a, k, k, &swapped)) return Integer(0);
    if (swapped) sign = -sign;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous_pivot;
      }
      a(i, k) = 0;
    }
    previous_pivot = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t bareiss_rank(IntMatrix a) {
  Integer previous_pivot = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    bool swapped = false;
    if (!pivot_into_place(a, rank, col, &swapped)) continue;
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      for (std::size_t j = col + 1; j < a.cols(); ++j) {
        a(i, j) = (a(i, j) * a(rank, col) - a(i, col) * a(rank, j)) / previous_pivot;
      }
      a(i, col) = 0;
    }
    previous_pivot = a(rank, col);
    ++rank;
  }
  return rank;
}

RatMatrix rref(RatMatrix a, std::vector<std::size_t>* pivots) {
  std::vector<std::size_t> found;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    bool swapped = false;
    if (!pivot_into_place(a, row, col, &swapped)) continue;
    const Rational inv = 1 / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Rational factor = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= factor * a(row, j);
    }
    found.push_back(col);
    ++row;
  }
  if (pivots != nullptr) *pivots = std::move(found);
  return a;
}

std::vector<std::vector<Rational>> nullspace(const RatMatrix& a) {
  std::vector<std::size_t> pivots;
  const RatMatrix r = rref(a, &pivots);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(a.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatMatrix> solve_exact(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != a.cols()) throw std::invalid_argument("solve_exact: matrix is not square");
  if (b.rows() != a.rows()) throw std::invalid_argument("solve_exact: right-hand side has wrong row count");
  const std::size_t n = a.rows();
  RatMatrix augmented(n, n + b.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) augmented(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) augmented(i, n + j) = b(i, j);
  }
  std::vector<std::size_t> pivots;
  const RatMatrix r = rref(std::move(augmented), &pivots);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  RatMatrix x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = r(i, n + j);
  return x;
}

std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v) {
  Integer lcm_den = 1;
  for (const auto& q : v) lcm_den = boost::multiprecision::lcm(lcm_den, Integer(denominator(q)));
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& q : v) {
    Integer x = numerator(q) * (lcm_den / denominator(q));
    g = boost::multiprecision::gcd(g, x);
    out.push_back(std::move(x));
  }
  if (g > 1) {
    for (auto& x : out) x /= g;
  }
  return out;
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace mixedlink
