#include <minkspec/observability.hpp>

namespace minkspec {

HautusReport hautus_test(const BorderedPencil& pencil, const Tolerances& tol) {
  const ClusteredSpectrum spectrum = cluster_poles(pencil, tol);
  const double obs = tol.obs(spectrum.u_norm_sq);
  HautusReport report;
  for (const auto& cluster : spectrum.clusters) {
    HautusEntry entry;
    entry.eigenvalue = cluster.members[cluster.heaviest];
    entry.multiplicity = static_cast<int>(cluster.members.size());
    entry.observable = entry.multiplicity == 1 && cluster.residue > obs;
    report.observable = report.observable && entry.observable;
    report.entries.push_back(entry);
  }
  return report;
}

std::size_t hautus_stacked_rank(const BorderedPencil& pencil, double x, const Tolerances& tol) {
  const std::size_t m = pencil.J().order();
  CMatrix stacked(m + 1, m);
  double u_norm_sq = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) stacked(i, j) = -pencil.J()(i, j);
    stacked(i, i) += x;
    stacked(m, i) = std::conj(pencil.u()[i]);
    u_norm_sq += std::norm(pencil.u()[i]);
  }
  return numerical_rank(std::move(stacked), tol.rank(pencil.J().entries().max_abs(), std::sqrt(u_norm_sq)));
}

ObservabilityReport kalman_reduce(const BorderedPencil& pencil, const Tolerances& tol) {
  SpectralForm form = to_spectral_form(pencil, tol);
  ObservabilityReport report;
  report.detached_spectrum = std::move(form.detached);
  form.detached.clear();
  report.unobservable_dimension = static_cast<int>(report.detached_spectrum.size());
  report.observable = report.detached_spectrum.empty();
  report.reduced = std::move(form);
  return report;
}

BorderedPencil reduced_pencil(const ObservabilityReport& report) { return to_pencil(report.reduced); }

}  // namespace minkspec
