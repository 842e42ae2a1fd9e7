#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <minkspec/observability.hpp>
#include <minkspec/secular.hpp>
#include <minkspec/signs.hpp>

namespace minkspec {

/// A problem as read from disk: the full bordered matrix or its spectral data.
using Problem = std::variant<BorderedPencil, SpectralForm>;

/// The bordered pencil a problem describes (diagonal realization for spectral input).
BorderedPencil pencil_of(const Problem& problem);

struct Diagnostics {
  double tolerance_scale = 1.0;
  double tau_tangency = 0.0;
  double tau_gap = 0.0;
  double tau_obs = 0.0;
  double max_simple_residual = 0.0;  ///< max |f(x)| / (1 + |x| + |a|) over simple real roots
};

/// Everything the toolkit derives for one problem.
struct Analysis {
  std::size_t order = 0;
  std::optional<HautusReport> hautus;    ///< matrix input only
  ObservabilityReport observability;
  EigenStructure reduced;                ///< observable part
  InterlacingReport interlacing;         ///< of the observable part
  CaseLabel case_label = CaseLabel::DegenerateSmall;  ///< REDUCIBLE when anything was detached
  std::vector<EigenvalueRecord> eigenvalues;          ///< all n: reduced records, then detached ones
  CanonicalForm canonical;
  std::string sign_census;               ///< empty when consistent
  Diagnostics diagnostics;
};

Analysis analyze(const Problem& problem, const Tolerances& tol = {});

/// One line of an instance cross-check.
struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the oracle cross-checks on one problem: Aberth roots vs the secular
/// solver, the determinant identity against dense LU, the dense spectrum of A
/// against the Kalman split, nu-curve slopes and zero crossings, Jordan rank
/// certificates and the canonical-form census.
std::vector<CheckResult> verify_instance(const Problem& problem, const Tolerances& tol = {});

}  // namespace minkspec
