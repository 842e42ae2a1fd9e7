#pragma once

namespace minkspec {

/// Numerical thresholds used throughout the toolkit.
///
/// Every threshold is a base constant times `scale`; the CLI reads `scale`
/// from the MINKSPEC_TOL environment variable. The Jacobi sweep budget and
/// convergence threshold are not scaled.
struct Tolerances {
  double scale = 1.0;

  /// Hermitian symmetrization cutoff for J.
  double herm(double j_max_abs) const;
  /// Residues at or below this are unobservable.
  double obs(double u_norm_sq) const;
  /// Poles closer than this are merged.
  double gap(double pole_spread) const;
  /// Singular cutoff for the stacked Hautus matrix.
  double rank(double j_max_abs, double u_norm) const;
  /// |f(t)| at a critical point below this declares a multiple root.
  double tangency(double shift, double pole_spread) const;
  /// Two tangency points closer than this have collapsed into one.
  double collapse(double pole_spread) const;
  /// |g'(x) - 1| (or relative |g''|) below this makes a sign ambiguous.
  double sign_margin() const;
  /// Relative cutoff for the Jordan rank probe.
  double probe() const;

  /// Reads MINKSPEC_TOL; falls back to scale 1 when unset.
  /// Throws InvalidArgument on a non-positive or malformed value.
  static Tolerances from_environment();
};

inline constexpr int kJacobiMaxSweeps = 30;
inline constexpr double kJacobiThreshold = 1e-14;

}  // namespace minkspec
