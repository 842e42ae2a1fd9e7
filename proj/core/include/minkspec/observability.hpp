#pragma once

#include <span>
#include <vector>

#include <minkspec/hermitian.hpp>
#include <minkspec/model.hpp>

namespace minkspec {

struct HautusEntry {
  double eigenvalue = 0.0;
  int multiplicity = 1;
  bool observable = true;  ///< rank [x I - J; u*] == order(J) at this eigenvalue
};

struct HautusReport {
  std::vector<HautusEntry> entries;  ///< one per distinct eigenvalue of J, descending
  bool observable = true;
};

/// Per-eigenvalue Hautus test for the pair (J, u*), decided in eigencoordinates.
HautusReport hautus_test(const BorderedPencil& pencil, const Tolerances& tol = {});

/// Rank of the stacked matrix [x I - J; u*] by full-pivot elimination with the
/// tol.rank cutoff. The explicit form of the Hautus test.
std::size_t hautus_stacked_rank(const BorderedPencil& pencil, double x, const Tolerances& tol = {});

struct ObservabilityReport {
  bool observable = true;
  int unobservable_dimension = 0;
  std::vector<double> detached_spectrum;  ///< spectrum of J restricted to the unobservable subspace
  SpectralForm reduced;                   ///< observable part; reduced.detached is empty
};

/// Kalman split J = J1 (+) J2 on N (+) N-perp. The spectrum of A is
/// detached_spectrum together with the roots of the reduced secular function.
ObservabilityReport kalman_reduce(const BorderedPencil& pencil, const Tolerances& tol = {});

/// Diagonal bordered pencil for the observable part only.
BorderedPencil reduced_pencil(const ObservabilityReport& report);

}  // namespace minkspec
