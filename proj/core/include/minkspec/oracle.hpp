#pragma once

#include <array>
#include <span>
#include <vector>

#include <minkspec/hermitian.hpp>
#include <minkspec/model.hpp>
#include <minkspec/secular.hpp>

namespace minkspec {

/// p(z) = (z - a) prod_j (z - mu_j) + sum_j d_j prod_{k != j} (z - mu_k),
/// evaluated directly in product form, with p'(z) and the magnitude sum of
/// its terms (a rounding-error scale).
struct PolyValue {
  Complex value;
  Complex derivative;
  double magnitude = 0.0;
};
PolyValue char_poly_product_form(const SpectralForm& form, Complex z);

/// All order() roots of p by Aberth-Ehrlich simultaneous iteration.
/// Throws OracleDivergence when the iteration cap is hit or a residual is too large.
std::vector<Complex> char_poly_roots_oracle(const SpectralForm& form);

/// det(z I - A) by dense LU.
Complex dense_char_poly(const CMatrix& a, Complex z);

/// Eigenvalues of a dense complex matrix (Eigen's complex Schur solver).
std::vector<Complex> dense_spectrum(const CMatrix& a);

/// Min-sum assignment (Hungarian algorithm) on a square cost matrix;
/// returns row -> column.
std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost);

/// Max distance of the min-sum matching between two equally sized multisets
/// (Hungarian algorithm). Throws InvalidArgument on a size mismatch.
double optimal_matching_distance(std::span<const Complex> lhs, std::span<const Complex> rhs);

/// Eigenvalues of the Hermitian matrix x H - H A, ascending.
std::vector<double> nu_values(const BorderedPencil& pencil, double x);

struct NuCurveSample {
  double lambda = 0.0;
  std::vector<double> nus;             ///< ascending
  std::vector<std::size_t> matching;   ///< curve c takes nus[matching[c]]
};

/// Samples the n eigenvalue curves of x H - H A on a sorted grid and links
/// consecutive samples by nearest-neighbour assignment against a linear
/// prediction, so crossing curves keep their identity.
std::vector<NuCurveSample> nu_curves(const BorderedPencil& pencil, std::span<const double> grid);

/// curves[c][k] = value of curve c at grid point k.
std::vector<std::vector<double>> curves_from_samples(std::span<const NuCurveSample> samples);

/// Real eigenvalues of A located as odd-order zero crossings of the nu-curves:
/// the parity of the negative inertia of x H - H A flips there. Each flip
/// between grid points is refined by bisection.
std::vector<double> nu_zero_crossings(const BorderedPencil& pencil, std::span<const double> grid);

struct NuSlopeCheck {
  double numeric = 0.0;
  double analytic = 0.0;
  bool agree = false;
};

/// Slope at a simple real eigenvalue: Richardson-extrapolated central
/// differences against -(1 - g')/(1 + g'). Agreement at relative gap 1e-4.
NuSlopeCheck nu_derivative_check(const BorderedPencil& pencil, const SecularFunction& s, double lambda);

/// Curvature at a double eigenvalue: second differences against
/// g''/(1 + g'). Agreement at relative gap 1e-3.
NuSlopeCheck nu_second_derivative_check(const BorderedPencil& pencil, const SecularFunction& s, double lambda);

/// Numerical rank of (A - x I)^k, k in {1, 2, 3}, computed by the SVD staircase
/// (nested kernels) with one first-order cutoff, probe * max(1, |A - xI|max).
std::size_t jordan_rank_probe(const BorderedPencil& pencil, Complex x, int k, const Tolerances& tol = {});

struct JordanCertificate {
  std::array<std::size_t, 3> ranks{};  ///< ranks of (A - xI)^k for k = 1, 2, 3
  int block_size = 0;                  ///< 0 when x is not an eigenvalue
  bool nonderogatory = false;          ///< rank drops by exactly one at the first power
};
JordanCertificate jordan_certificate(const BorderedPencil& pencil, Complex x, const Tolerances& tol = {});

}  // namespace minkspec
