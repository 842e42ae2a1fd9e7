#include <minkspec/hermitian.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include <minkspec/error.hpp>

namespace minkspec {

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += std::norm(a(i, j));
  return std::sqrt(2.0 * s);
}

// One complex Jacobi rotation annihilating a(p, q).
void rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
  const std::size_t n = a.rows();
  const Complex apq = a(p, q);
  const double b = std::abs(apq);
  const double alpha = a(p, p).real();
  const double beta = a(q, q).real();

  // diag(1, delta) turns the pair real-symmetric: [[alpha, b], [b, beta]].
  const Complex delta = std::conj(apq / b);

  const double theta = (beta - alpha) / (2.0 * b);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  // G = diag(1, delta) * [[c, s], [-s, c]]
  const Complex gpp = c, gpq = s, gqp = -s * delta, gqq = c * delta;

  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p), akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k), aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p), vkq = v(k, q);
    v(k, p) = vkp * gpp + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * gqq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = alpha - t * b;
  a(q, q) = beta + t * b;
}

}  // namespace

HermitianEigen hermitian_eigendecomposition(const CMatrix& j) {
  if (!j.square()) fail(ErrorKind::DimensionMismatch, "Jacobi needs a square matrix");
  const std::size_t n = j.rows();
  CMatrix a = j;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  CMatrix v = CMatrix::identity(n);

  const double threshold = kJacobiThreshold * a.frobenius();
  const double skip = n > 0 ? threshold / static_cast<double>(n) : 0.0;

  int sweep = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (sweep == kJacobiMaxSweeps) {
      fail(ErrorKind::ConvergenceFailure,
           "Jacobi did not converge in " + std::to_string(kJacobiMaxSweeps) + " sweeps (order " +
               std::to_string(n) + ")");
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > skip) rotate(a, v, p, q);
    ++sweep;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return a(l, l).real() > a(r, r).real(); });

  HermitianEigen out{CMatrix(n, n), std::vector<double>(n), sweep};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

HermitianEigen hermitian_eigendecomposition(const HermitianMatrix& j) {
  return hermitian_eigendecomposition(j.entries());
}

double SpectralForm::residue_sum() const noexcept {
  CompensatedSum s;
  for (double d : residues) s.add(d);
  return s.value();
}

SpectralForm SpectralForm::with_shift(double a) const {
  SpectralForm out = *this;
  out.shift = a;
  return out;
}

SpectralForm SpectralForm::from_poles(std::vector<double> mu, std::vector<double> d, double a, const Tolerances& tol) {
  if (mu.size() != d.size()) {
    fail(ErrorKind::ValidationError,
         "mu has " + std::to_string(mu.size()) + " entries but d has " + std::to_string(d.size()));
  }
  if (!std::isfinite(a)) fail(ErrorKind::ValidationError, "a is not finite");
  for (std::size_t k = 0; k < mu.size(); ++k) {
    if (!std::isfinite(mu[k]) || !std::isfinite(d[k]))
      fail(ErrorKind::ValidationError, "non-finite entry at index " + std::to_string(k));
  }
  const double spread = mu.empty() ? 0.0 : mu.front() - mu.back();
  const double gap = tol.gap(std::abs(spread));
  for (std::size_t k = 1; k < mu.size(); ++k) {
    if (!(mu[k - 1] - mu[k] > gap)) {
      fail(ErrorKind::ValidationError,
           "mu must be strictly decreasing (index " + std::to_string(k - 1) + " -> " + std::to_string(k) + ")");
    }
  }
  double total = 0.0;
  for (double x : d) total += x;
  const double floor = tol.obs(total);
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (!(d[k] > floor))
      fail(ErrorKind::ValidationError, "d[" + std::to_string(k) + "] must be positive (observable)");
  }
  SpectralForm out;
  out.poles = std::move(mu);
  out.residues = std::move(d);
  out.shift = a;
  return out;
}

ClusteredSpectrum cluster_poles(const BorderedPencil& pencil, const Tolerances& tol) {
  const std::size_t m = pencil.J().order();
  ClusteredSpectrum out;
  for (const auto& z : pencil.u()) out.u_norm_sq += std::norm(z);
  if (m == 0) return out;

  const HermitianEigen eig = hermitian_eigendecomposition(pencil.J());
  std::vector<double> d(m);
  for (std::size_t k = 0; k < m; ++k) {
    Complex w = 0.0;
    for (std::size_t i = 0; i < m; ++i) w += std::conj(eig.vectors(i, k)) * pencil.u()[i];
    d[k] = std::norm(w);
  }

  const double gap = tol.gap(eig.values.front() - eig.values.back());
  std::size_t begin = 0;
  while (begin < m) {
    std::size_t end = begin + 1;
    while (end < m && eig.values[end - 1] - eig.values[end] <= gap) ++end;
    PoleCluster cluster;
    for (std::size_t k = begin; k < end; ++k) {
      cluster.members.push_back(eig.values[k]);
      cluster.residue += d[k];
      if (d[k] > d[begin + cluster.heaviest]) cluster.heaviest = k - begin;
    }
    out.clusters.push_back(std::move(cluster));
    begin = end;
  }
  return out;
}

SpectralForm to_spectral_form(const BorderedPencil& pencil, const Tolerances& tol) {
  const ClusteredSpectrum spectrum = cluster_poles(pencil, tol);
  const double obs = tol.obs(spectrum.u_norm_sq);
  SpectralForm out;
  out.shift = pencil.a();
  // Within a cluster one direction can be observable at most; the rest detach.
  for (const auto& cluster : spectrum.clusters) {
    if (cluster.residue > obs) {
      out.poles.push_back(cluster.members[cluster.heaviest]);
      out.residues.push_back(cluster.residue);
      for (std::size_t k = 0; k < cluster.members.size(); ++k)
        if (k != cluster.heaviest) out.detached.push_back(cluster.members[k]);
    } else {
      out.detached.insert(out.detached.end(), cluster.members.begin(), cluster.members.end());
      out.dropped_residue += cluster.residue;
    }
  }
  std::sort(out.detached.begin(), out.detached.end(), std::greater<>());
  return out;
}

BorderedPencil to_pencil(const SpectralForm& form) {
  std::vector<double> diag;
  std::vector<Complex> u;
  // Detached eigenvalues first, with zero coupling.
  for (double x : form.detached) {
    diag.push_back(x);
    u.emplace_back(0.0);
  }
  for (std::size_t k = 0; k < form.poles.size(); ++k) {
    diag.push_back(form.poles[k]);
    u.emplace_back(std::sqrt(form.residues[k]));
  }
  return validate_problem(CMatrix::diagonal(diag), u, form.shift);
}

}  // namespace minkspec
