#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace minkspec {

using Complex = std::complex<double>;

/// Small dense complex matrix, row-major. Sized for desk-scale problems.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> data() const noexcept { return data_; }

  CMatrix adjoint() const;
  double max_abs() const noexcept;
  double frobenius() const noexcept;

  friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
  friend CMatrix operator+(const CMatrix& lhs, const CMatrix& rhs);
  friend CMatrix operator-(const CMatrix& lhs, const CMatrix& rhs);
  friend bool operator==(const CMatrix& lhs, const CMatrix& rhs) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Determinant by LU with partial pivoting.
Complex determinant(CMatrix m);

/// Solves m x = rhs by LU with partial pivoting; m must be square and nonsingular.
std::vector<Complex> solve(CMatrix m, std::vector<Complex> rhs);

/// Numerical rank by Gaussian elimination with full pivoting; pivots with
/// modulus at or below `cutoff` count as zero.
std::size_t numerical_rank(CMatrix m, double cutoff);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace minkspec
