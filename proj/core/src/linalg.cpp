#include "linalg.hpp"

#include <cmath>
#include <limits>

namespace memeflow::detail {

std::optional<std::vector<double>> lu_solve(Matrix a, std::vector<double> b) {
  if (!a.square() || a.rows() != b.size()) return std::nullopt;
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        pivot = i;
      }
    }
    if (!(best > 0.0) || !std::isfinite(best)) return std::nullopt;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      std::swap(b[k], b[pivot]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      a(i, k) = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }

  std::vector<double> x(n, 0.0);
  for (std::size_t ir = n; ir-- > 0;) {
    double s = b[ir];
    for (std::size_t j = ir + 1; j < n; ++j) s -= a(ir, j) * x[j];
    x[ir] = s / a(ir, ir);
    if (!std::isfinite(x[ir])) return std::nullopt;
  }
  return x;
}

std::optional<Matrix> invert(const Matrix& a) {
  if (!a.square()) return std::nullopt;
  const std::size_t n = a.rows();
  Matrix inv(n, n, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<double> e(n, 0.0);
    e[col] = 1.0;
    auto x = lu_solve(a, std::move(e));
    if (!x) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) inv(i, col) = (*x)[i];
  }
  return inv;
}

double inf_norm(const Matrix& a) {
  double norm = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) row += std::abs(a(i, j));
    norm = std::max(norm, row);
  }
  return norm;
}

double condition_inf(const Matrix& a) {
  auto inv = invert(a);
  if (!inv) return std::numeric_limits<double>::infinity();
  return inf_norm(a) * inf_norm(*inv);
}

std::vector<double> characteristic_polynomial(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<double> coeffs(n + 1, 0.0);
  coeffs[0] = 1.0;
  Matrix m = a;  // M_1 = A
  for (std::size_t k = 1; k <= n; ++k) {
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
    const double c = -tr / static_cast<double>(k);
    coeffs[k] = c;
    if (k == n) break;
    // M_{k+1} = A (M_k + c I)
    Matrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c;
    Matrix next(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < n; ++l) s += a(i, l) * shifted(l, j);
        next(i, j) = s;
      }
    m = next;
  }
  return coeffs;
}

RouthVerdict routh_hurwitz(const std::vector<double>& monic) {
  const std::size_t n = monic.size() - 1;  // polynomial degree
  if (n == 0) return RouthVerdict::AllLeftHalfPlane;
  for (double c : monic)
    if (!std::isfinite(c)) return RouthVerdict::Degenerate;

  // rows 0 and 1 interleave the coefficients
  const std::size_t width = n / 2 + 1;
  std::vector<std::vector<double>> table(n + 1, std::vector<double>(width + 1, 0.0));
  for (std::size_t j = 0; 2 * j < monic.size(); ++j) table[0][j] = monic[2 * j];
  for (std::size_t j = 0; 2 * j + 1 < monic.size(); ++j) table[1][j] = monic[2 * j + 1];

  for (std::size_t i = 2; i <= n; ++i) {
    const double pivot = table[i - 1][0];
    if (pivot == 0.0) return RouthVerdict::Degenerate;
    for (std::size_t j = 0; j < width; ++j) {
      table[i][j] =
          (pivot * table[i - 2][j + 1] - table[i - 2][0] * table[i - 1][j + 1]) / pivot;
    }
  }

  for (std::size_t i = 0; i <= n; ++i) {
    const double lead = table[i][0];
    if (lead == 0.0) return RouthVerdict::Degenerate;
    if (lead < 0.0) return RouthVerdict::RightHalfPlaneRoot;
  }
  return RouthVerdict::AllLeftHalfPlane;
}

}  // namespace memeflow::detail
