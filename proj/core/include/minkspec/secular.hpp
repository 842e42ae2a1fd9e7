#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <minkspec/hermitian.hpp>
#include <minkspec/model.hpp>

namespace minkspec {

/// f(x) = h(x) - g(x) with h(x) = x - a and g(x) = -sum_j d_j / (x - mu_j).
///
/// The checked evaluators reject points within half the pole-merging gap of a
/// pole (PoleEvaluation). The *_at variants skip that check and are meant for
/// solver internals that already know they are strictly inside an interval.
class SecularFunction {
 public:
  explicit SecularFunction(SpectralForm form, Tolerances tol = {});

  const SpectralForm& form() const noexcept { return form_; }
  const Tolerances& tolerances() const noexcept { return tol_; }
  double shift() const noexcept { return form_.shift; }
  std::size_t pole_count() const noexcept { return form_.poles.size(); }
  std::size_t order() const noexcept { return form_.poles.size() + 1; }
  double spread() const noexcept { return form_.spread(); }

  double g(double x) const;
  double h(double x) const noexcept { return x - form_.shift; }
  double f(double x) const;

  struct Derivatives {
    double first;   ///< g'(x) > 0
    double second;  ///< g''(x)
  };
  Derivatives g_derivatives(double x) const;

  double g_at(double x) const noexcept;
  double f_at(double x) const noexcept;
  double g1_at(double x) const noexcept;
  double g2_at(double x) const noexcept;
  double g3_at(double x) const noexcept;
  /// 2 * sum_j d_j / |x - mu_j|^3, the natural size of g''(x).
  double g2_scale_at(double x) const noexcept;

  Complex f_at(Complex z) const noexcept;
  Complex g1_at(Complex z) const noexcept;

  /// 1 + |x| + |a|, the scale of f near x.
  double residual_scale(double x) const noexcept;
  /// Distance to the nearest pole below which checked evaluation fails.
  double pole_guard() const noexcept;

 private:
  void check_off_pole(double x) const;

  SpectralForm form_;
  Tolerances tol_;
};

/// A real root of f with its multiplicity (1, 2 or 3).
struct RealRoot {
  double value = 0.0;
  int multiplicity = 1;
};

enum class IntervalKind { RightOuter, Internal, LeftOuter };

/// Root census for one pole interval.
///
/// Intervals are numbered from the top: index 0 is (mu_1, +inf), index k
/// (1 <= k < m) is (mu_{k+1}, mu_k), index m is (-inf, mu_m).
struct IntervalAnalysis {
  int index = 0;
  IntervalKind kind = IntervalKind::Internal;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  /// Internal intervals: the minimizer of the convex g' and its value.
  /// Outer intervals have monotone g' and leave these empty.
  std::optional<double> g1_argmin;
  std::optional<double> g1_min;
  /// Solutions of g'(t) = 1 in ascending order; a collapsed pair is one entry.
  std::vector<double> tangency_points;
  bool collapsed = false;
  std::vector<RealRoot> real_roots;  ///< ascending

  int root_count() const noexcept;
};

std::vector<IntervalAnalysis> analyze_intervals(const SecularFunction& s);

enum class CaseLabel { C1a, C1b, C2, C3a, C3b, C4a, C4b, C4c, C4d, Reducible, DegenerateSmall };

std::string_view to_string(CaseLabel label) noexcept;
std::optional<CaseLabel> case_label_from_string(std::string_view text) noexcept;

struct ComplexPair {
  double re = 0.0;
  double im = 0.0;  ///< > 0; the pair is re +- i im
};

struct EigenStructure {
  std::vector<EigenvalueRecord> records;  ///< real values descending, then the pair (upper first)
  CaseLabel case_label = CaseLabel::DegenerateSmall;
  std::optional<ComplexPair> complex_pair;
  std::size_t order = 0;

  /// All n eigenvalues, repeated by multiplicity, in record order.
  std::vector<Complex> values() const;
};

/// All n = pole_count + 1 eigenvalues of the bordered matrix built from the
/// (observable) form. Throws CountMismatch when the census does not add up.
EigenStructure solve_spectrum(const SecularFunction& s);

struct InterlacingReport {
  CaseLabel label = CaseLabel::DegenerateSmall;
  std::optional<int> host_interval;      ///< interval holding the two extra eigenvalues
  std::vector<int> interval_counts;      ///< real roots with multiplicity, by interval index
  std::string narrative;
};

/// Assigns the interlacing case and checks the census against it.
/// Throws Unclassifiable when the census matches no case.
InterlacingReport classify_interlacing(const EigenStructure& e, const SecularFunction& s);

/// Solutions of g'(t) = 1 over all intervals; independent of the shift.
struct Tangency {
  double point = 0.0;
  int interval_index = 0;
  IntervalKind kind = IntervalKind::Internal;
  enum class Side { Outer, Left, Right, Collapsed } side = Side::Outer;
};

std::vector<Tangency> tangency_points(const SecularFunction& s);

}  // namespace minkspec
