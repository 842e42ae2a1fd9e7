#include <minkspec/model.hpp>

#include <cmath>
#include <string>

#include <minkspec/error.hpp>

namespace minkspec {

namespace {

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

HermitianMatrix HermitianMatrix::validate(const CMatrix& raw, const Tolerances& tol) {
  if (!raw.square()) fail(ErrorKind::DimensionMismatch, "J must be square");
  const std::size_t m = raw.rows();
  for (const auto& z : raw.data())
    if (!finite(z)) fail(ErrorKind::NonFiniteEntry, "J contains a non-finite entry");

  const double cutoff = tol.herm(raw.max_abs());
  double asym = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) asym = std::max(asym, std::abs(raw(i, j) - std::conj(raw(j, i))));
  if (asym > cutoff) {
    fail(ErrorKind::NotHermitian,
         "max |J_ij - conj(J_ji)| = " + std::to_string(asym) + " exceeds " + std::to_string(cutoff));
  }

  CMatrix sym(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    sym(i, i) = raw(i, i).real();
    for (std::size_t j = i + 1; j < m; ++j) {
      const Complex v = (raw(i, j) + std::conj(raw(j, i))) * 0.5;
      sym(i, j) = v;
      sym(j, i) = std::conj(v);
    }
  }
  return HermitianMatrix(std::move(sym));
}

BorderedPencil validate_problem(const CMatrix& raw_j, std::span<const Complex> raw_u, double raw_a,
                                const Tolerances& tol) {
  if (!raw_j.square()) fail(ErrorKind::DimensionMismatch, "J must be square");
  if (raw_u.size() != raw_j.rows()) {
    fail(ErrorKind::DimensionMismatch,
         "u has length " + std::to_string(raw_u.size()) + " but J has order " + std::to_string(raw_j.rows()));
  }
  for (const auto& z : raw_u)
    if (!finite(z)) fail(ErrorKind::NonFiniteEntry, "u contains a non-finite entry");
  if (!std::isfinite(raw_a)) fail(ErrorKind::NonFiniteEntry, "a is not finite");
  return BorderedPencil(HermitianMatrix::validate(raw_j, tol), std::vector<Complex>(raw_u.begin(), raw_u.end()),
                        raw_a);
}

BorderedPencil validate_problem(const std::vector<std::vector<Complex>>& raw_j, std::span<const Complex> raw_u,
                                double raw_a, const Tolerances& tol) {
  const std::size_t m = raw_j.size();
  CMatrix j(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    if (raw_j[i].size() != m) fail(ErrorKind::DimensionMismatch, "J row " + std::to_string(i) + " has wrong length");
    for (std::size_t k = 0; k < m; ++k) j(i, k) = raw_j[i][k];
  }
  return validate_problem(j, raw_u, raw_a, tol);
}

AssembledPair assemble_A_and_H(const BorderedPencil& pencil) {
  const std::size_t m = pencil.J().order();
  const std::size_t n = m + 1;
  AssembledPair out{CMatrix(n, n), CMatrix::identity(n)};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out.A(i, j) = pencil.J()(i, j);
    out.A(i, m) = pencil.u()[i];
    out.A(m, i) = -std::conj(pencil.u()[i]);
  }
  out.A(m, m) = pencil.a();
  out.H(m, m) = -1.0;
  return out;
}

}  // namespace minkspec
