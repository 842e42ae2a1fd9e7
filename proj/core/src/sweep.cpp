#include <minkspec/sweep.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include <minkspec/error.hpp>
#include <minkspec/oracle.hpp>

namespace minkspec {

std::vector<CriticalValue> critical_a_values(const SpectralForm& form, const Tolerances& tol) {
  const SecularFunction s(form.with_shift(0.0), tol);
  const int m = static_cast<int>(s.pole_count());
  std::vector<CriticalValue> out;
  for (const auto& t : tangency_points(s)) {
    CriticalValue cv;
    cv.tangency_point = t.point;
    cv.interval_index = t.interval_index;
    cv.a_star = t.point - s.g_at(t.point);
    switch (t.side) {
      case Tangency::Side::Outer:
        cv.resulting_case = t.interval_index == m ? CaseLabel::C1b : CaseLabel::C3b;
        break;
      case Tangency::Side::Left: cv.resulting_case = CaseLabel::C4b; break;
      case Tangency::Side::Right: cv.resulting_case = CaseLabel::C4c; break;
      case Tangency::Side::Collapsed: cv.resulting_case = CaseLabel::C4d; break;
    }
    out.push_back(cv);
  }
  std::sort(out.begin(), out.end(), [](const CriticalValue& l, const CriticalValue& r) { return l.a_star < r.a_star; });
  return out;
}

namespace {

std::vector<Complex> solve_values(const SpectralForm& form, double a, const Tolerances& tol, CaseLabel* label) {
  try {
    const SecularFunction s(form.with_shift(a), tol);
    const EigenStructure e = solve_spectrum(s);
    if (label) *label = e.case_label;
    return e.values();
  } catch (const Error& err) {
    std::ostringstream msg;
    msg.precision(17);
    msg << err.detail() << " [sweep at a = " << a << "]";
    throw Error(err.kind(), msg.str());
  }
}

// Reorders `next` so that entry c continues branch c of `prev` (optionally
// extrapolated from `older`).
std::vector<Complex> link(const std::vector<Complex>& prev, const std::vector<Complex>* older,
                          const std::vector<Complex>& next, double step_ratio) {
  const std::size_t n = prev.size();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t c = 0; c < n; ++c) {
    Complex predicted = prev[c];
    if (older) predicted += step_ratio * (prev[c] - (*older)[c]);
    for (std::size_t j = 0; j < n; ++j) cost[c][j] = std::abs(predicted - next[j]);
  }
  const auto assignment = min_cost_assignment(cost);
  std::vector<Complex> out(n);
  for (std::size_t c = 0; c < n; ++c) out[c] = next[assignment[c]];
  return out;
}

}  // namespace

std::vector<TrajectoryPoint> eigenvalue_trajectories(const SpectralForm& form, double a_min, double a_max, int steps,
                                                     const Tolerances& tol) {
  if (steps < 2) fail(ErrorKind::InvalidArgument, "a sweep needs at least two steps");
  if (!(a_min < a_max)) fail(ErrorKind::InvalidArgument, "a sweep needs a_min < a_max");

  std::vector<TrajectoryPoint> out;
  out.reserve(static_cast<std::size_t>(steps));
  const double h = (a_max - a_min) / static_cast<double>(steps - 1);
  for (int k = 0; k < steps; ++k) {
    const double a = k == steps - 1 ? a_max : a_min + h * static_cast<double>(k);
    TrajectoryPoint point;
    point.a = a;
    std::vector<Complex> values = solve_values(form, a, tol, &point.case_label);
    if (k == 0) {
      // Initial branch order: descending real part, upper half-plane first.
      std::sort(values.begin(), values.end(), [](Complex l, Complex r) {
        return l.real() != r.real() ? l.real() > r.real() : l.imag() > r.imag();
      });
      point.eigenvalues = std::move(values);
    } else {
      const auto& prev = out.back();
      const std::vector<Complex>* older = k >= 2 ? &out[out.size() - 2].eigenvalues : nullptr;
      if (point.case_label != prev.case_label) {
        // Census changed: hop through the midpoint before linking.
        const double mid_a = 0.5 * (prev.a + a);
        const auto mid = link(prev.eigenvalues, nullptr, solve_values(form, mid_a, tol, nullptr), 0.0);
        point.eigenvalues = link(mid, nullptr, values, 0.0);
      } else {
        point.eigenvalues = link(prev.eigenvalues, older, values, 1.0);
      }
    }
    out.push_back(std::move(point));
  }
  return out;
}

double trajectory_derivative(const SecularFunction& s, double lambda) {
  const double slope = 1.0 - s.g1_at(lambda);
  if (std::abs(slope) <= s.tolerances().sign_margin()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "g'(" << lambda << ") = 1 at a = " << s.shift() << ": the branch derivative is unbounded";
    fail(ErrorKind::TangencyDerivative, msg.str());
  }
  return 1.0 / slope;
}

Complex trajectory_derivative(const SecularFunction& s, Complex lambda) {
  const Complex slope = 1.0 - s.g1_at(lambda);
  if (std::abs(slope) <= s.tolerances().sign_margin())
    fail(ErrorKind::TangencyDerivative, "g'(lambda) = 1: the branch derivative is unbounded");
  return 1.0 / slope;
}

bool AsymptoticReport::all_ok() const noexcept {
  return runaway_ok && std::all_of(pole_branch_ok.begin(), pole_branch_ok.end(), [](bool b) { return b; });
}

AsymptoticReport asymptotic_check(const SpectralForm& form, double a_large, const Tolerances& tol) {
  const double total = form.residue_sum();
  const double top = form.poles.empty() ? 0.0 : form.poles.front();
  if (a_large < 10.0 * (1.0 + std::abs(top) + total)) {
    fail(ErrorKind::InvalidArgument, "asymptotic_check needs a >= 10 (1 + |mu_1| + sum d)");
  }
  AsymptoticReport report;
  report.a = a_large;
  report.bound = 2.0 * total / a_large;
  const SecularFunction s(form.with_shift(a_large), tol);
  report.eigenvalues = solve_spectrum(s).values();
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
            [](Complex l, Complex r) { return l.real() > r.real(); });

  std::vector<bool> used(report.eigenvalues.size(), false);
  const double low = a_large - (form.poles.empty() ? 0.0 : total / (a_large - top)) - 1.0;
  for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
    const Complex z = report.eigenvalues[i];
    if (z.imag() == 0.0 && z.real() >= low && z.real() <= a_large + 1.0) {
      report.runaway_ok = true;
      used[i] = true;
      break;
    }
  }
  for (double mu : form.poles) {
    bool ok = false;
    for (std::size_t i = 0; i < report.eigenvalues.size() && !ok; ++i) {
      const Complex z = report.eigenvalues[i];
      if (!used[i] && z.imag() == 0.0 && z.real() > mu && z.real() < mu + report.bound) {
        used[i] = true;
        ok = true;
      }
    }
    report.pole_branch_ok.push_back(ok);
  }
  return report;
}

}  // namespace minkspec
