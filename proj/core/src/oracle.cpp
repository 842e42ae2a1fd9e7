#include <minkspec/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <minkspec/error.hpp>

namespace minkspec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), way_cost(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(way_cost.begin(), way_cost.end(), inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < way_cost[j]) {
          way_cost[j] = cur;
          way[j] = j0;
        }
        if (way_cost[j] < delta) {
          delta = way_cost[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          way_cost[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(n);
  for (std::size_t j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
  return assignment;
}

namespace {

CMatrix nu_matrix(const BorderedPencil& pencil, double x) {
  // x H - H A = [[x I - J, -u], [-u*, a - x]]
  const std::size_t m = pencil.J().order();
  CMatrix out(m + 1, m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out(i, j) = -pencil.J()(i, j);
    out(i, i) += x;
    out(i, m) = -pencil.u()[i];
    out(m, i) = -std::conj(pencil.u()[i]);
  }
  out(m, m) = pencil.a() - x;
  return out;
}

int negative_count(const BorderedPencil& pencil, double x) {
  const auto nus = nu_values(pencil, x);
  return static_cast<int>(std::count_if(nus.begin(), nus.end(), [](double v) { return v < 0.0; }));
}

// The nu-eigenvalue closest to zero at x.
double zero_curve(const BorderedPencil& pencil, double x) {
  const auto nus = nu_values(pencil, x);
  return *std::min_element(nus.begin(), nus.end(), [](double l, double r) { return std::abs(l) < std::abs(r); });
}

}  // namespace

PolyValue char_poly_product_form(const SpectralForm& form, Complex z) {
  const auto& mu = form.poles;
  const auto& d = form.residues;
  const std::size_t m = mu.size();

  // (P, P') of prod (z - mu_k), optionally skipping one index.
  auto product = [&](std::size_t skip) {
    Complex p = 1.0, dp = 0.0;
    double mag = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (k == skip) continue;
      const Complex f = z - mu[k];
      dp = dp * f + p;
      p *= f;
      mag *= std::abs(f);
    }
    return std::tuple{p, dp, mag};
  };

  const auto [full, dfull, mag_full] = product(m);
  PolyValue out;
  const Complex lead = z - form.shift;
  out.value = lead * full;
  out.derivative = full + lead * dfull;
  out.magnitude = std::abs(lead) * mag_full;
  for (std::size_t j = 0; j < m; ++j) {
    const auto [pj, dpj, magj] = product(j);
    out.value += d[j] * pj;
    out.derivative += d[j] * dpj;
    out.magnitude += d[j] * magj;
  }
  return out;
}

std::vector<Complex> char_poly_roots_oracle(const SpectralForm& form) {
  const std::size_t n = form.order();
  double center = form.shift;
  for (double mu : form.poles) center += mu;
  center /= static_cast<double>(n);
  double radius = std::abs(form.shift - center);
  for (double mu : form.poles) radius = std::max(radius, std::abs(mu - center));
  radius += std::sqrt(form.residue_sum()) + 1.0;

  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = center + std::polar(radius, angle);
  }
  if (n == 1) return {Complex(form.shift, 0.0)};

  std::vector<bool> done(n, false);
  const double floor = 8.0 * static_cast<double>(n) * kEps;
  constexpr int kMaxIterations = 2000;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      const PolyValue pv = char_poly_product_form(form, z[k]);
      if (std::abs(pv.value) <= floor * pv.magnitude) {
        done[k] = true;
        continue;
      }
      all_done = false;
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      const Complex newton = pv.derivative == Complex{} ? Complex(1e-8, 1e-8) : pv.value / pv.derivative;
      const Complex step = newton / (1.0 - newton * repulsion);
      z[k] -= step;
      if (std::abs(step) <= 4.0 * kEps * std::abs(z[k])) done[k] = true;
    }
    if (all_done) {
      for (const auto& root : z) {
        const PolyValue pv = char_poly_product_form(form, root);
        // Next to a pole the factor (z - mu) carries a rounding error of
        // ulp(z) / |z - mu|, so also accept roots whose Newton correction is
        // within a few thousand ulps of z.
        const bool small_residual = std::abs(pv.value) <= 1e-10 * std::max(1.0, pv.magnitude);
        const bool tiny_correction = std::abs(pv.value) <= 4096.0 * kEps * std::max(1.0, std::abs(root)) *
                                                               std::abs(pv.derivative);
        if (!small_residual && !tiny_correction) {
          std::ostringstream msg;
          msg.precision(17);
          msg << "Aberth iteration stopped with a large residual: |p(" << root << ")| = " << std::abs(pv.value)
              << " against term magnitude " << pv.magnitude;
          fail(ErrorKind::OracleDivergence, msg.str());
        }
      }
      return z;
    }
  }
  fail(ErrorKind::OracleDivergence, "Aberth iteration cap reached for order " + std::to_string(n));
}

Complex dense_char_poly(const CMatrix& a, Complex z) {
  CMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = -a(i, j);
  for (std::size_t i = 0; i < a.rows(); ++i) m(i, i) += z;
  return determinant(std::move(m));
}

std::vector<Complex> dense_spectrum(const CMatrix& a) {
  if (!a.square()) fail(ErrorKind::DimensionMismatch, "dense_spectrum needs a square matrix");
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  if (solver.info() != Eigen::Success) fail(ErrorKind::OracleDivergence, "dense eigensolver failed");
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

double optimal_matching_distance(std::span<const Complex> lhs, std::span<const Complex> rhs) {
  if (lhs.size() != rhs.size()) fail(ErrorKind::InvalidArgument, "matching needs multisets of equal size");
  if (lhs.empty()) return 0.0;
  std::vector<std::vector<double>> cost(lhs.size(), std::vector<double>(rhs.size()));
  for (std::size_t i = 0; i < lhs.size(); ++i)
    for (std::size_t j = 0; j < rhs.size(); ++j) cost[i][j] = std::abs(lhs[i] - rhs[j]);
  const auto assignment = min_cost_assignment(cost);
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, cost[i][assignment[i]]);
  return worst;
}

std::vector<double> nu_values(const BorderedPencil& pencil, double x) {
  auto values = hermitian_eigendecomposition(nu_matrix(pencil, x)).values;
  std::reverse(values.begin(), values.end());
  return values;
}

std::vector<NuCurveSample> nu_curves(const BorderedPencil& pencil, std::span<const double> grid) {
  std::vector<NuCurveSample> out;
  out.reserve(grid.size());
  const std::size_t n = pencil.n();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (k > 0 && !(grid[k] > grid[k - 1])) fail(ErrorKind::InvalidArgument, "nu-curve grid must be increasing");
    NuCurveSample sample{grid[k], nu_values(pencil, grid[k]), {}};
    if (k == 0) {
      sample.matching.resize(n);
      for (std::size_t c = 0; c < n; ++c) sample.matching[c] = c;
    } else {
      const auto& prev = out[k - 1];
      std::vector<std::vector<double>> cost(n, std::vector<double>(n));
      for (std::size_t c = 0; c < n; ++c) {
        double predicted = prev.nus[prev.matching[c]];
        if (k > 1) {
          const auto& older = out[k - 2];
          const double step = (grid[k] - grid[k - 1]) / (grid[k - 1] - grid[k - 2]);
          predicted += step * (predicted - older.nus[older.matching[c]]);
        }
        for (std::size_t j = 0; j < n; ++j) cost[c][j] = std::abs(predicted - sample.nus[j]);
      }
      sample.matching = min_cost_assignment(cost);
    }
    out.push_back(std::move(sample));
  }
  return out;
}

std::vector<std::vector<double>> curves_from_samples(std::span<const NuCurveSample> samples) {
  if (samples.empty()) return {};
  const std::size_t n = samples.front().nus.size();
  std::vector<std::vector<double>> curves(n, std::vector<double>(samples.size()));
  for (std::size_t k = 0; k < samples.size(); ++k)
    for (std::size_t c = 0; c < n; ++c) curves[c][k] = samples[k].nus[samples[k].matching[c]];
  return curves;
}

std::vector<double> nu_zero_crossings(const BorderedPencil& pencil, std::span<const double> grid) {
  std::vector<double> out;
  if (grid.size() < 2) return out;
  int parity_prev = negative_count(pencil, grid[0]) % 2;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const int parity = negative_count(pencil, grid[k]) % 2;
    if (parity != parity_prev) {
      double lo = grid[k - 1], hi = grid[k];
      for (int iter = 0; iter < 200 && hi - lo > 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (negative_count(pencil, mid) % 2 == parity_prev)
          lo = mid;
        else
          hi = mid;
      }
      out.push_back(0.5 * (lo + hi));
    }
    parity_prev = parity;
  }
  return out;
}

NuSlopeCheck nu_derivative_check(const BorderedPencil& pencil, const SecularFunction& s, double lambda) {
  double pole_distance = std::numeric_limits<double>::infinity();
  for (double mu : s.form().poles) pole_distance = std::min(pole_distance, std::abs(lambda - mu));
  const double h = std::min(1e-5 * (1.0 + std::abs(lambda)), 1e-3 * pole_distance);
  auto central = [&](double step) {
    return (zero_curve(pencil, lambda + step) - zero_curve(pencil, lambda - step)) / (2.0 * step);
  };
  NuSlopeCheck out;
  out.numeric = (4.0 * central(0.5 * h) - central(h)) / 3.0;
  const double g1 = s.g1_at(lambda);
  out.analytic = -(1.0 - g1) / (1.0 + g1);
  out.agree = std::abs(out.numeric - out.analytic) <= 1e-4 * std::abs(out.analytic);
  return out;
}

NuSlopeCheck nu_second_derivative_check(const BorderedPencil& pencil, const SecularFunction& s, double lambda) {
  // The curve is smooth only on the scale of the nearest pole, so the step
  // shrinks with that distance; Richardson removes the O(h^2) term.
  double pole_distance = std::numeric_limits<double>::infinity();
  for (double mu : s.form().poles) pole_distance = std::min(pole_distance, std::abs(lambda - mu));
  const double h = std::min(1e-3 * (1.0 + std::abs(lambda)), 0.02 * pole_distance);
  const double center = zero_curve(pencil, lambda);
  auto second = [&](double step) {
    return (zero_curve(pencil, lambda + step) - 2.0 * center + zero_curve(pencil, lambda - step)) / (step * step);
  };
  NuSlopeCheck out;
  out.numeric = (4.0 * second(0.5 * h) - second(h)) / 3.0;
  out.analytic = s.g2_at(lambda) / (1.0 + s.g1_at(lambda));
  out.agree = std::abs(out.numeric - out.analytic) <= 1e-3 * std::abs(out.analytic);
  return out;
}

namespace {

// Nullities of (A - xI)^k for k = 1..3 by the staircase: N_1 = ker M and
// N_{k+1} = ker(P_k M), with P_k the projector onto the complement of N_k.
// Every step is a first-order rank decision, so a distinct eigenvalue at
// distance D from x shows up as a singular value near D, not D^k.
std::array<std::size_t, 3> staircase_nullities(const BorderedPencil& pencil, Complex x, const Tolerances& tol) {
  const CMatrix a = assemble_A_and_H(pencil).A;
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  m.diagonal().array() -= x;
  const double cutoff = tol.probe() * std::max(1.0, m.cwiseAbs().maxCoeff());

  std::array<std::size_t, 3> out{};
  Eigen::MatrixXcd basis(n, 0);
  for (std::size_t k = 0; k < 3; ++k) {
    const Eigen::MatrixXcd projected = m - basis * (basis.adjoint() * m);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(projected, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    basis = svd.matrixV().rightCols(n - rank);
    out[k] = static_cast<std::size_t>(n - rank);
  }
  return out;
}

}  // namespace

std::size_t jordan_rank_probe(const BorderedPencil& pencil, Complex x, int k, const Tolerances& tol) {
  if (k < 1 || k > 3) fail(ErrorKind::InvalidArgument, "jordan_rank_probe supports powers 1 to 3");
  return pencil.n() - staircase_nullities(pencil, x, tol)[static_cast<std::size_t>(k - 1)];
}

JordanCertificate jordan_certificate(const BorderedPencil& pencil, Complex x, const Tolerances& tol) {
  JordanCertificate cert;
  const std::size_t n = pencil.n();
  const auto nullities = staircase_nullities(pencil, x, tol);
  for (std::size_t k = 0; k < 3; ++k) cert.ranks[k] = n - nullities[k];
  cert.nonderogatory = cert.ranks[0] + 1 == n;
  std::size_t previous = n;
  for (std::size_t k = 0; k < 3; ++k) {
    if (cert.ranks[k] + 1 != previous) break;
    ++cert.block_size;
    previous = cert.ranks[k];
  }
  return cert;
}

}  // namespace minkspec
