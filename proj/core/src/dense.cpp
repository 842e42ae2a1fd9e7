#include <minkspec/dense.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <minkspec/error.hpp>

namespace minkspec {

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) fail(ErrorKind::DimensionMismatch, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> values) {
  CMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

double CMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double CMatrix::frobenius() const noexcept {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_) fail(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  CMatrix out(lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i)
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const Complex l = lhs(i, k);
      if (l == Complex{}) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += l * rhs(k, j);
    }
  return out;
}

CMatrix operator+(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.rows_ != rhs.rows_ || lhs.cols_ != rhs.cols_) fail(ErrorKind::DimensionMismatch, "matrix sum shape mismatch");
  CMatrix out = lhs;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

CMatrix operator-(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.rows_ != rhs.rows_ || lhs.cols_ != rhs.cols_) fail(ErrorKind::DimensionMismatch, "matrix difference shape mismatch");
  CMatrix out = lhs;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

namespace {

// In-place LU with partial pivoting. Returns the permutation parity, or 0 when singular.
int lu_partial(CMatrix& m, std::vector<std::size_t>& perm) {
  const std::size_t n = m.rows();
  perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  int parity = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > best) {
        best = std::abs(m(i, k));
        p = i;
      }
    }
    if (best == 0.0) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      std::swap(perm[k], perm[p]);
      parity = -parity;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex factor = m(i, k) / m(k, k);
      m(i, k) = factor;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= factor * m(k, j);
    }
  }
  return parity;
}

}  // namespace

Complex determinant(CMatrix m) {
  if (!m.square()) fail(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  std::vector<std::size_t> perm;
  const int parity = lu_partial(m, perm);
  if (parity == 0) return 0.0;
  Complex det = static_cast<double>(parity);
  for (std::size_t i = 0; i < m.rows(); ++i) det *= m(i, i);
  return det;
}

std::vector<Complex> solve(CMatrix m, std::vector<Complex> rhs) {
  if (!m.square() || rhs.size() != m.rows()) fail(ErrorKind::DimensionMismatch, "solve: shape mismatch");
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm;
  if (lu_partial(m, perm) == 0) fail(ErrorKind::InvalidArgument, "solve: singular matrix");
  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= m(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= m(i, j) * x[j];
    x[i] /= m(i, i);
  }
  return x;
}

std::size_t numerical_rank(CMatrix m, double cutoff) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t steps = std::min(rows, cols);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t pi = k, pj = k;
    double best = -1.0;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j)
        if (std::abs(m(i, j)) > best) {
          best = std::abs(m(i, j));
          pi = i;
          pj = j;
        }
    if (best <= cutoff) break;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(k, j), m(pi, j));
    for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, k), m(i, pj));
    for (std::size_t i = k + 1; i < rows; ++i) {
      const Complex factor = m(i, k) / m(k, k);
      for (std::size_t j = k; j < cols; ++j) m(i, j) -= factor * m(k, j);
    }
    ++rank;
  }
  return rank;
}

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    compensation_ += (sum_ - t) + x;
  else
    compensation_ += (x - t) + sum_;
  sum_ = t;
}

}  // namespace minkspec
