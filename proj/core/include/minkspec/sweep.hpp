#pragma once

#include <vector>

#include <minkspec/secular.hpp>

namespace minkspec {

/// A shift at which f acquires a multiple root: g'(t) = 1 and a = t - g(t).
struct CriticalValue {
  double a_star = 0.0;
  double tangency_point = 0.0;
  int interval_index = 0;
  CaseLabel resulting_case = CaseLabel::C4b;  ///< 1b, 3b, 4b, 4c or 4d
};

/// Every critical shift of the (shift-free) form, ascending in a_star.
std::vector<CriticalValue> critical_a_values(const SpectralForm& form, const Tolerances& tol = {});

struct TrajectoryPoint {
  double a = 0.0;
  std::vector<Complex> eigenvalues;  ///< indexed by branch, n entries
  CaseLabel case_label = CaseLabel::DegenerateSmall;
};

/// Solves the spectrum on an even grid of `steps` shifts in [a_min, a_max] and
/// links the n branches by nearest-neighbour assignment in the complex plane.
/// When the case label changes between two samples, an intermediate sample is
/// used for the linking (it is not emitted).
std::vector<TrajectoryPoint> eigenvalue_trajectories(const SpectralForm& form, double a_min, double a_max, int steps,
                                                     const Tolerances& tol = {});

/// d lambda / d a = 1 / (1 - g'(lambda)) along a simple branch.
/// Throws TangencyDerivative when |g'(lambda) - 1| is within the sign margin.
double trajectory_derivative(const SecularFunction& s, double lambda);
Complex trajectory_derivative(const SecularFunction& s, Complex lambda);

struct AsymptoticReport {
  double a = 0.0;
  std::vector<Complex> eigenvalues;        ///< descending real part
  std::vector<bool> pole_branch_ok;        ///< one per pole: an eigenvalue in (mu_j, mu_j + C/a)
  bool runaway_ok = false;                 ///< one eigenvalue in [a - sum d/(a - mu_1) - 1, a + 1]
  double bound = 0.0;                      ///< C / a with C = 2 sum d

  bool all_ok() const noexcept;
};

/// Large-shift behaviour: n - 1 eigenvalues approach the poles from the right
/// and one follows a. Requires a_large >= 10 (1 + |mu_1| + sum d).
AsymptoticReport asymptotic_check(const SpectralForm& form, double a_large, const Tolerances& tol = {});

}  // namespace minkspec
