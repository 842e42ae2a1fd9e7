#pragma once

#include <vector>

#include <minkspec/dense.hpp>
#include <minkspec/model.hpp>
#include <minkspec/tolerances.hpp>

namespace minkspec {

struct HermitianEigen {
  CMatrix vectors;                  ///< unitary; column k belongs to values[k]
  std::vector<double> values;       ///< descending
  int sweeps = 0;
};

/// Cyclic complex Jacobi. Throws ConvergenceFailure when the sweep budget
/// (kJacobiMaxSweeps) runs out before the off-diagonal mass drops below
/// kJacobiThreshold * |J|_F.
HermitianEigen hermitian_eigendecomposition(const HermitianMatrix& j);

/// Same engine on a raw matrix assumed Hermitian (no validation pass).
HermitianEigen hermitian_eigendecomposition(const CMatrix& j);

/// Pole/residue data of the bordered problem.
///
/// g(x) = -sum_j residues[j] / (x - poles[j]); the eigenvalues of the
/// observable part of A are the roots of f(x) = x - shift - g(x).
struct SpectralForm {
  std::vector<double> poles;        ///< strictly decreasing
  std::vector<double> residues;     ///< positive, same length as poles
  double shift = 0.0;
  std::vector<double> detached;     ///< eigenvalues of J split off as unobservable, descending
  double dropped_residue = 0.0;     ///< residue mass discarded with unobservable directions

  std::size_t pole_count() const noexcept { return poles.size(); }
  /// Order of the bordered matrix the retained part belongs to.
  std::size_t order() const noexcept { return poles.size() + 1; }
  double spread() const noexcept { return poles.empty() ? 0.0 : poles.front() - poles.back(); }
  double residue_sum() const noexcept;

  SpectralForm with_shift(double a) const;

  /// Validates user-supplied (mu, d, a): mu strictly decreasing with gaps above
  /// tol.gap, every d finite and above tol.obs. Throws ValidationError.
  static SpectralForm from_poles(std::vector<double> mu, std::vector<double> d, double a, const Tolerances& tol = {});

  friend bool operator==(const SpectralForm&, const SpectralForm&) = default;
};

/// Eigenvalues of J that coincide within tol.gap, with their pooled residue.
struct PoleCluster {
  std::vector<double> members;      ///< descending
  std::size_t heaviest = 0;         ///< index into members carrying the largest residue
  double residue = 0.0;             ///< sum of |(V* u)_j|^2 over the cluster
};

struct ClusteredSpectrum {
  std::vector<PoleCluster> clusters;  ///< descending by eigenvalue
  double u_norm_sq = 0.0;
};

ClusteredSpectrum cluster_poles(const BorderedPencil& pencil, const Tolerances& tol = {});

/// Diagonalizes J, forms d_j = |(V* u)_j|^2, merges poles closer than
/// tol.gap and detaches unobservable directions (residue at or below tol.obs).
SpectralForm to_spectral_form(const BorderedPencil& pencil, const Tolerances& tol = {});

/// The diagonal pencil J = diag(poles), u = sqrt(residues) realizing a spectral form.
BorderedPencil to_pencil(const SpectralForm& form);

}  // namespace minkspec
