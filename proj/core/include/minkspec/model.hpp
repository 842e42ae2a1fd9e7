#pragma once

#include <optional>
#include <span>
#include <vector>

#include <minkspec/dense.hpp>
#include <minkspec/tolerances.hpp>

namespace minkspec {

/// A validated Hermitian matrix: entries(i, j) == conj(entries(j, i)) exactly,
/// with a real diagonal.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  std::size_t order() const noexcept { return entries_.rows(); }
  const CMatrix& entries() const noexcept { return entries_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  /// Symmetrizes to (M + M*)/2 when the asymmetry is at most tol.herm(|M|max),
  /// otherwise throws NotHermitian.
  static HermitianMatrix validate(const CMatrix& raw, const Tolerances& tol = {});

  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

 private:
  explicit HermitianMatrix(CMatrix m) : entries_(std::move(m)) {}
  CMatrix entries_;
};

/// The bordered matrix A = [[J, u], [-u*, a]] together with H = I_{n-1} (+) (-1).
/// n = order(J) + 1; n = 1 (empty J) is the degenerate pencil A = [a].
class BorderedPencil {
 public:
  const HermitianMatrix& J() const noexcept { return j_; }
  std::span<const Complex> u() const noexcept { return u_; }
  double a() const noexcept { return a_; }
  std::size_t n() const noexcept { return u_.size() + 1; }

  friend bool operator==(const BorderedPencil&, const BorderedPencil&) = default;

 private:
  friend BorderedPencil validate_problem(const CMatrix&, std::span<const Complex>, double, const Tolerances&);
  BorderedPencil(HermitianMatrix j, std::vector<Complex> u, double a) : j_(std::move(j)), u_(std::move(u)), a_(a) {}

  HermitianMatrix j_;
  std::vector<Complex> u_;
  double a_ = 0.0;
};

/// One eigenvalue of A with its Jordan data. Non-real eigenvalues appear as
/// two records (x + iy and x - iy), each of multiplicity 1.
struct EigenvalueRecord {
  Complex value;
  int algebraic_multiplicity = 1;
  int jordan_block_size = 1;
  bool is_real = true;
  /// Pole interval holding a real eigenvalue; see IntervalAnalysis for the numbering.
  std::optional<int> interval_index;
};

/// Errors: DimensionMismatch, NotHermitian, NonFiniteEntry.
BorderedPencil validate_problem(const CMatrix& raw_j, std::span<const Complex> raw_u, double raw_a,
                                const Tolerances& tol = {});

BorderedPencil validate_problem(const std::vector<std::vector<Complex>>& raw_j, std::span<const Complex> raw_u,
                                double raw_a, const Tolerances& tol = {});

struct AssembledPair {
  CMatrix A;
  CMatrix H;
};

/// HA == A*H holds exactly for the returned pair.
AssembledPair assemble_A_and_H(const BorderedPencil& pencil);

}  // namespace minkspec
