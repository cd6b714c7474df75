#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/rational.hpp"

namespace kt::linalg {

using RatMat = std::vector<std::vector<Rat>>;
using IntMat = std::vector<std::vector<Int>>;

// Gauss-Jordan solve of a square system; nullopt when singular.
inline std::optional<std::vector<Rat>> solve(RatMat a, std::vector<Rat> rhs) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);
    const Rat inv = 1 / a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
    rhs[col] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rat factor = a[row][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
      rhs[row] -= factor * rhs[col];
    }
  }
  return rhs;
}

inline std::optional<RatMat> inverse(const RatMat& a) {
  const std::size_t n = a.size();
  RatMat work = a;
  RatMat inv(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(work[pivot], work[col]);
    std::swap(inv[pivot], inv[col]);
    const Rat scale = 1 / work[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      work[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || work[row][col] == 0) continue;
      const Rat factor = work[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        work[row][j] -= factor * work[col][j];
        inv[row][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

inline uint32_t rank(RatMat a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size();
  const std::size_t cols = a[0].size();
  uint32_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    for (std::size_t row = r + 1; row < rows; ++row) {
      if (a[row][col] == 0) continue;
      const Rat factor = a[row][col] / a[r][col];
      for (std::size_t j = col; j < cols; ++j) a[row][j] -= factor * a[r][j];
    }
    ++r;
  }
  return r;
}

// Fraction-free Bareiss determinant for integer matrices.
inline Int det(IntMat a) {
  const std::size_t n = a.size();
  if (n == 0) return Int(1);
  Int prev(1);
  int sign = 1;
  for (std::size_t col = 0; col + 1 < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return Int(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      sign = -sign;
    }
    for (std::size_t row = col + 1; row < n; ++row) {
      for (std::size_t j = col + 1; j < n; ++j) {
        Int value = a[row][j] * a[col][col] - a[row][col] * a[col][j];
        mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), prev.get_mpz_t());
        a[row][j] = value;
      }
      a[row][col] = 0;
    }
    prev = a[col][col];
  }
  return sign < 0 ? Int(-a[n - 1][n - 1]) : a[n - 1][n - 1];
}

}  // namespace kt::linalg
