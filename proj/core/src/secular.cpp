#include <minkspec/secular.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <minkspec/error.hpp>

namespace minkspec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Safeguarded Newton on an open bracket (lo, hi). `sign_lo` is the sign of
// the function just above lo; the endpoints themselves are never evaluated,
// so they may be poles. `fn(x)` returns {value, derivative}.
template <typename Fn>
double bracketed_root(Fn&& fn, double lo, double hi, int sign_lo) {
  double x = 0.5 * (lo + hi);
  double dx = hi - lo;
  double dx_old = dx;
  for (int iter = 0; iter < 500; ++iter) {
    const auto [v, dv] = fn(x);
    if (v == 0.0) return x;
    if ((v > 0.0 ? 1 : -1) == sign_lo)
      lo = x;
    else
      hi = x;

    const double newton = x - v / dv;
    const bool inside = std::isfinite(newton) && newton > lo && newton < hi;
    double next;
    if (!inside || std::abs(2.0 * v) > std::abs(dx_old * dv)) {
      dx_old = dx;
      next = 0.5 * (lo + hi);
      dx = next - x;
    } else {
      dx_old = dx;
      next = newton;
      dx = next - x;
    }
    if (std::abs(dx) <= 2.0 * kEps * std::abs(next) || hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi))) {
      return next;
    }
    x = next;
  }
  return x;
}

// Moves x to the neighbouring double with the smallest |f|, a few ulps at most.
template <typename Fn>
double ulp_polish(Fn&& value, double x, double lo, double hi) {
  double best = x;
  double best_abs = std::abs(value(x));
  for (double dir : {-kInf, kInf}) {
    double y = x;
    for (int k = 0; k < 4; ++k) {
      y = std::nextafter(y, dir);
      if (!(y > lo && y < hi)) break;
      const double a = std::abs(value(y));
      if (a < best_abs) {
        best_abs = a;
        best = y;
      } else {
        break;
      }
    }
  }
  return best;
}

// Shift-independent geometry of g' on one interval.
struct Geometry {
  int index = 0;
  IntervalKind kind = IntervalKind::Internal;
  double lower = -kInf;
  double upper = kInf;
  std::optional<double> argmin;
  std::optional<double> min_value;
  std::optional<double> t1;  // left solution of g' = 1 (or the single outer one)
  std::optional<double> t2;  // right solution, internal intervals only
  bool collapsed = false;
  double center = 0.0;       // collapse point when collapsed
};

Geometry interval_geometry(const SecularFunction& s, int index) {
  const auto& poles = s.form().poles;
  const int m = static_cast<int>(poles.size());
  const double spread = s.spread();
  const double reach = std::sqrt(s.form().residue_sum()) + 1.0;

  auto g1_minus_one = [&](double x) { return std::pair{s.g1_at(x) - 1.0, s.g2_at(x)}; };

  Geometry geo;
  geo.index = index;
  if (index == 0) {
    geo.kind = IntervalKind::RightOuter;
    geo.lower = poles.front();
    // g' falls from +inf to 0; below 1 beyond mu_1 + sqrt(sum d).
    geo.t1 = bracketed_root(g1_minus_one, geo.lower, geo.lower + reach, +1);
  } else if (index == m) {
    geo.kind = IntervalKind::LeftOuter;
    geo.upper = poles.back();
    geo.t1 = bracketed_root(g1_minus_one, geo.upper - reach, geo.upper, -1);
  } else {
    geo.kind = IntervalKind::Internal;
    geo.upper = poles[static_cast<std::size_t>(index) - 1];
    geo.lower = poles[static_cast<std::size_t>(index)];
    // g' is convex here, so g'' has one sign change.
    const double tstar =
        bracketed_root([&](double x) { return std::pair{s.g2_at(x), s.g3_at(x)}; }, geo.lower, geo.upper, -1);
    const double gmin = s.g1_at(tstar);
    geo.argmin = tstar;
    geo.min_value = gmin;
    geo.center = tstar;
    const double collapse = s.tolerances().collapse(spread);
    if (gmin < 1.0) {
      geo.t1 = bracketed_root(g1_minus_one, geo.lower, tstar, +1);
      geo.t2 = bracketed_root(g1_minus_one, tstar, geo.upper, -1);
      geo.collapsed = *geo.t2 - *geo.t1 <= collapse;
    } else {
      // Distance the two tangency points would have if g' dipped to 1.
      const double half_width = std::sqrt(2.0 * (gmin - 1.0) / s.g3_at(tstar));
      geo.collapsed = 2.0 * half_width <= collapse;
    }
  }
  return geo;
}

int interval_count(const SecularFunction& s) { return static_cast<int>(s.pole_count()) + 1; }

}  // namespace

// ---------------------------------------------------------------------------
// SecularFunction

SecularFunction::SecularFunction(SpectralForm form, Tolerances tol) : form_(std::move(form)), tol_(tol) {
  if (form_.poles.size() != form_.residues.size())
    fail(ErrorKind::InvalidArgument, "spectral form has mismatched pole and residue lists");
}

double SecularFunction::pole_guard() const noexcept { return 0.5 * tol_.gap(spread()); }

void SecularFunction::check_off_pole(double x) const {
  const double guard = pole_guard();
  for (double mu : form_.poles) {
    if (std::abs(x - mu) <= guard) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "evaluation at " << x << " is within " << guard << " of the pole " << mu;
      fail(ErrorKind::PoleEvaluation, msg.str());
    }
  }
}

double SecularFunction::g(double x) const {
  check_off_pole(x);
  return g_at(x);
}

double SecularFunction::f(double x) const {
  check_off_pole(x);
  return f_at(x);
}

SecularFunction::Derivatives SecularFunction::g_derivatives(double x) const {
  check_off_pole(x);
  return {g1_at(x), g2_at(x)};
}

double SecularFunction::g_at(double x) const noexcept {
  CompensatedSum sum;
  for (std::size_t j = 0; j < form_.poles.size(); ++j) sum.add(-form_.residues[j] / (x - form_.poles[j]));
  return sum.value();
}

double SecularFunction::f_at(double x) const noexcept {
  CompensatedSum sum;
  sum.add(x);
  sum.add(-form_.shift);
  for (std::size_t j = 0; j < form_.poles.size(); ++j) sum.add(form_.residues[j] / (x - form_.poles[j]));
  return sum.value();
}

double SecularFunction::g1_at(double x) const noexcept {
  CompensatedSum sum;
  for (std::size_t j = 0; j < form_.poles.size(); ++j) {
    const double r = 1.0 / (x - form_.poles[j]);
    sum.add(form_.residues[j] * r * r);
  }
  return sum.value();
}

double SecularFunction::g2_at(double x) const noexcept {
  CompensatedSum sum;
  for (std::size_t j = 0; j < form_.poles.size(); ++j) {
    const double r = 1.0 / (x - form_.poles[j]);
    sum.add(-2.0 * form_.residues[j] * r * r * r);
  }
  return sum.value();
}

double SecularFunction::g3_at(double x) const noexcept {
  CompensatedSum sum;
  for (std::size_t j = 0; j < form_.poles.size(); ++j) {
    const double r = 1.0 / (x - form_.poles[j]);
    const double r2 = r * r;
    sum.add(6.0 * form_.residues[j] * r2 * r2);
  }
  return sum.value();
}

double SecularFunction::g2_scale_at(double x) const noexcept {
  double sum = 0.0;
  for (std::size_t j = 0; j < form_.poles.size(); ++j) {
    const double r = 1.0 / std::abs(x - form_.poles[j]);
    sum += 2.0 * form_.residues[j] * r * r * r;
  }
  return sum;
}

Complex SecularFunction::f_at(Complex z) const noexcept {
  Complex sum = z - form_.shift;
  for (std::size_t j = 0; j < form_.poles.size(); ++j) sum += form_.residues[j] / (z - form_.poles[j]);
  return sum;
}

Complex SecularFunction::g1_at(Complex z) const noexcept {
  Complex sum = 0.0;
  for (std::size_t j = 0; j < form_.poles.size(); ++j) {
    const Complex r = 1.0 / (z - form_.poles[j]);
    sum += form_.residues[j] * r * r;
  }
  return sum;
}

double SecularFunction::residual_scale(double x) const noexcept { return 1.0 + std::abs(x) + std::abs(form_.shift); }

// ---------------------------------------------------------------------------
// Interval census

int IntervalAnalysis::root_count() const noexcept {
  int count = 0;
  for (const auto& r : real_roots) count += r.multiplicity;
  return count;
}

std::vector<IntervalAnalysis> analyze_intervals(const SecularFunction& s) {
  std::vector<IntervalAnalysis> out;
  if (s.pole_count() == 0) return out;

  const double a = s.shift();
  const double tan_tol = s.tolerances().tangency(a, s.spread());
  auto f_pair = [&](double x) { return std::pair{s.f_at(x), 1.0 - s.g1_at(x)}; };
  auto f_value = [&](double x) { return s.f_at(x); };

  for (int index = 0; index < interval_count(s); ++index) {
    const Geometry geo = interval_geometry(s, index);
    IntervalAnalysis ia;
    ia.index = index;
    ia.kind = geo.kind;
    ia.lower = geo.lower;
    ia.upper = geo.upper;
    ia.g1_argmin = geo.argmin;
    ia.g1_min = geo.min_value;
    ia.collapsed = geo.collapsed;

    auto simple = [&](double lo, double hi, int sign_lo) {
      const double x = bracketed_root(f_pair, lo, hi, sign_lo);
      ia.real_roots.push_back({ulp_polish(f_value, x, lo, hi), 1});
    };

    if (geo.kind == IntervalKind::LeftOuter) {
      // f rises from -inf to a local max at t, then falls to -inf at mu_m.
      const double t = *geo.t1;
      ia.tangency_points = {t};
      const double F = s.f_at(t);
      if (std::abs(F) <= tan_tol) {
        ia.real_roots.push_back({t, 2});
      } else if (F > 0.0) {
        simple(std::min(a, t) - 1.0, t, -1);
        simple(t, geo.upper, +1);
      }
    } else if (geo.kind == IntervalKind::RightOuter) {
      // f falls from +inf at mu_1 to a local min at t, then rises to +inf.
      const double t = *geo.t1;
      ia.tangency_points = {t};
      const double F = s.f_at(t);
      if (std::abs(F) <= tan_tol) {
        ia.real_roots.push_back({t, 2});
      } else if (F < 0.0) {
        simple(geo.lower, t, +1);
        simple(t, std::max(a, t) + 1.0, -1);
      }
    } else if (!geo.t1) {
      // g' >= 1 throughout: f is nonincreasing from +inf to -inf.
      if (geo.collapsed) {
        ia.tangency_points = {geo.center};
        if (std::abs(s.f_at(geo.center)) <= tan_tol) {
          ia.real_roots.push_back({geo.center, 3});
          out.push_back(std::move(ia));
          continue;
        }
      }
      simple(geo.lower, geo.upper, +1);
    } else {
      // f: down to a local min at t1, up to a local max at t2, down again.
      const double t1 = *geo.t1;
      const double t2 = *geo.t2;
      const double F1 = s.f_at(t1);
      const double F2 = s.f_at(t2);
      const bool near1 = std::abs(F1) <= tan_tol;
      const bool near2 = std::abs(F2) <= tan_tol;
      ia.tangency_points = geo.collapsed ? std::vector<double>{geo.center} : std::vector<double>{t1, t2};
      if (geo.collapsed && near1 && near2) {
        ia.real_roots.push_back({geo.center, 3});
      } else if (near1 && (!near2 || std::abs(F1) <= std::abs(F2))) {
        ia.real_roots.push_back({t1, 2});
        simple(t2, geo.upper, +1);
      } else if (near2) {
        simple(geo.lower, t1, +1);
        ia.real_roots.push_back({t2, 2});
      } else if (F1 < 0.0 && F2 > 0.0) {
        simple(geo.lower, t1, +1);
        simple(t1, t2, -1);
        simple(t2, geo.upper, +1);
      } else if (F1 > 0.0) {
        simple(t2, geo.upper, +1);
      } else {
        simple(geo.lower, t1, +1);
      }
    }
    std::sort(ia.real_roots.begin(), ia.real_roots.end(),
              [](const RealRoot& l, const RealRoot& r) { return l.value < r.value; });
    out.push_back(std::move(ia));
  }
  return out;
}

std::vector<Tangency> tangency_points(const SecularFunction& s) {
  std::vector<Tangency> out;
  for (int index = 0; index < (s.pole_count() == 0 ? 0 : interval_count(s)); ++index) {
    const Geometry geo = interval_geometry(s, index);
    if (geo.kind != IntervalKind::Internal) {
      out.push_back({*geo.t1, index, geo.kind, Tangency::Side::Outer});
    } else if (geo.collapsed) {
      out.push_back({geo.center, index, geo.kind, Tangency::Side::Collapsed});
    } else if (geo.t1) {
      out.push_back({*geo.t1, index, geo.kind, Tangency::Side::Left});
      out.push_back({*geo.t2, index, geo.kind, Tangency::Side::Right});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spectrum

std::vector<Complex> EigenStructure::values() const {
  std::vector<Complex> out;
  for (const auto& r : records)
    for (int k = 0; k < r.algebraic_multiplicity; ++k) out.push_back(r.value);
  return out;
}

namespace {

// Coefficients (highest power first) of prod (x - r_k).
std::vector<double> poly_from_roots(const std::vector<double>& roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    c.push_back(0.0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] -= r * c[k - 1];
  }
  return c;
}

// p(x) = (x - a) prod (x - mu_j) + sum_j d_j prod_{k != j} (x - mu_k), highest power first.
std::vector<double> characteristic_coefficients(const SpectralForm& form) {
  std::vector<double> roots = form.poles;
  roots.push_back(form.shift);
  std::vector<double> p = poly_from_roots(roots);
  for (std::size_t j = 0; j < form.poles.size(); ++j) {
    std::vector<double> others;
    for (std::size_t k = 0; k < form.poles.size(); ++k)
      if (k != j) others.push_back(form.poles[k]);
    const std::vector<double> q = poly_from_roots(others);
    // q has degree m-1; align with p of degree m+1.
    for (std::size_t k = 0; k < q.size(); ++k) p[k + 2] += form.residues[j] * q[k];
  }
  return p;
}

ComplexPair recover_pair(const SecularFunction& s, std::vector<double> real_roots) {
  std::vector<double> c = characteristic_coefficients(s.form());
  std::sort(real_roots.begin(), real_roots.end(),
            [](double l, double r) { return std::abs(l) < std::abs(r); });
  for (double r : real_roots) {
    std::vector<double> q(c.size() - 1);
    q[0] = c[0];
    for (std::size_t k = 1; k < q.size(); ++k) q[k] = c[k] + r * q[k - 1];
    c = std::move(q);
  }
  if (c.size() != 3) fail(ErrorKind::CountMismatch, "deflation did not leave a quadratic");
  const double b = c[1] / c[0];
  const double cc = c[2] / c[0];
  const double disc = b * b - 4.0 * cc;
  if (!(disc < 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "residual quadratic has real roots (discriminant " << disc << ") at a = " << s.shift();
    fail(ErrorKind::CountMismatch, msg.str());
  }
  Complex z(-0.5 * b, 0.5 * std::sqrt(-disc));

  // Polish on f itself, which is better conditioned than the deflated quadratic.
  Complex w = z;
  for (int iter = 0; iter < 60; ++iter) {
    const Complex step = s.f_at(w) / (1.0 - s.g1_at(w));
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    w -= step;
    if (std::abs(step) <= 4.0 * kEps * std::abs(w)) break;
  }
  if (std::isfinite(w.real()) && std::isfinite(w.imag()) && w.imag() > 0.0 &&
      std::abs(s.f_at(w)) <= std::abs(s.f_at(z))) {
    z = w;
  }
  return {z.real(), std::abs(z.imag())};
}

}  // namespace

EigenStructure solve_spectrum(const SecularFunction& s) {
  EigenStructure e;
  e.order = s.order();
  if (s.pole_count() == 0) {
    e.records.push_back({Complex(s.shift(), 0.0), 1, 1, true, std::nullopt});
    e.case_label = CaseLabel::DegenerateSmall;
    return e;
  }

  std::vector<double> real_values;
  int count = 0;
  for (const auto& ia : analyze_intervals(s)) {
    for (const auto& root : ia.real_roots) {
      e.records.push_back({Complex(root.value, 0.0), root.multiplicity, root.multiplicity, true, ia.index});
      for (int k = 0; k < root.multiplicity; ++k) real_values.push_back(root.value);
      count += root.multiplicity;
    }
  }
  std::sort(e.records.begin(), e.records.end(),
            [](const EigenvalueRecord& l, const EigenvalueRecord& r) { return l.value.real() > r.value.real(); });

  const int n = static_cast<int>(e.order);
  if (count == n - 2) {
    const ComplexPair pair = recover_pair(s, real_values);
    e.complex_pair = pair;
    e.records.push_back({Complex(pair.re, pair.im), 1, 1, false, std::nullopt});
    e.records.push_back({Complex(pair.re, -pair.im), 1, 1, false, std::nullopt});
  } else if (count != n) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "found " << count << " real eigenvalues (with multiplicity) for n = " << n << " at a = " << s.shift();
    fail(ErrorKind::CountMismatch, msg.str());
  }
  e.case_label = classify_interlacing(e, s).label;
  return e;
}

// ---------------------------------------------------------------------------
// Classification

std::string_view to_string(CaseLabel label) noexcept {
  switch (label) {
    case CaseLabel::C1a: return "1a";
    case CaseLabel::C1b: return "1b";
    case CaseLabel::C2: return "2";
    case CaseLabel::C3a: return "3a";
    case CaseLabel::C3b: return "3b";
    case CaseLabel::C4a: return "4a";
    case CaseLabel::C4b: return "4b";
    case CaseLabel::C4c: return "4c";
    case CaseLabel::C4d: return "4d";
    case CaseLabel::Reducible: return "REDUCIBLE";
    case CaseLabel::DegenerateSmall: return "DEGENERATE_SMALL";
  }
  return "?";
}

std::optional<CaseLabel> case_label_from_string(std::string_view text) noexcept {
  for (CaseLabel l : {CaseLabel::C1a, CaseLabel::C1b, CaseLabel::C2, CaseLabel::C3a, CaseLabel::C3b, CaseLabel::C4a,
                      CaseLabel::C4b, CaseLabel::C4c, CaseLabel::C4d, CaseLabel::Reducible,
                      CaseLabel::DegenerateSmall}) {
    if (to_string(l) == text) return l;
  }
  return std::nullopt;
}

InterlacingReport classify_interlacing(const EigenStructure& e, const SecularFunction& s) {
  InterlacingReport report;
  const int m = static_cast<int>(s.pole_count());
  if (m == 0) {
    report.label = CaseLabel::DegenerateSmall;
    report.narrative = "no poles: the single eigenvalue is a";
    return report;
  }

  const auto& poles = s.form().poles;
  auto lower_of = [&](int k) { return k == m ? -kInf : poles[static_cast<std::size_t>(k)]; };
  auto upper_of = [&](int k) { return k == 0 ? kInf : poles[static_cast<std::size_t>(k) - 1]; };

  report.interval_counts.assign(static_cast<std::size_t>(m) + 1, 0);
  std::vector<std::vector<const EigenvalueRecord*>> hosted(static_cast<std::size_t>(m) + 1);
  for (const auto& r : e.records) {
    if (!r.is_real) continue;
    if (!r.interval_index || *r.interval_index < 0 || *r.interval_index > m)
      fail(ErrorKind::Unclassifiable, "real eigenvalue without a valid interval index");
    const int k = *r.interval_index;
    const double x = r.value.real();
    if (!(x > lower_of(k) && x < upper_of(k)))
      fail(ErrorKind::Unclassifiable, "eigenvalue lies outside its recorded interval");
    report.interval_counts[static_cast<std::size_t>(k)] += r.algebraic_multiplicity;
    hosted[static_cast<std::size_t>(k)].push_back(&r);
  }

  auto unclassifiable = [&](const std::string& why) {
    std::ostringstream msg;
    msg << why << "; census (top interval first):";
    for (int c : report.interval_counts) msg << ' ' << c;
    fail(ErrorKind::Unclassifiable, msg.str());
  };

  // Each internal interval holds one eigenvalue, the outer ones none, except
  // for exactly one interval holding two extra (or the complex pair).
  std::vector<int> anomalies;
  for (int k = 0; k <= m; ++k) {
    const bool outer = k == 0 || k == m;
    const int expected = outer ? 0 : 1;
    if (report.interval_counts[static_cast<std::size_t>(k)] != expected) {
      if (report.interval_counts[static_cast<std::size_t>(k)] != expected + 2)
        unclassifiable("interval " + std::to_string(k) + " has an impossible root count");
      anomalies.push_back(k);
    }
  }

  if (e.complex_pair) {
    if (!anomalies.empty()) unclassifiable("complex pair together with extra real roots");
    report.label = CaseLabel::C2;
    report.narrative = "one eigenvalue in each internal interval; the remaining two form a complex pair";
    return report;
  }
  if (anomalies.size() != 1) unclassifiable("expected exactly one interval with two extra roots");

  const int host = anomalies.front();
  report.host_interval = host;
  auto roots = hosted[static_cast<std::size_t>(host)];
  std::sort(roots.begin(), roots.end(), [](auto* l, auto* r) { return l->value.real() < r->value.real(); });

  std::ostringstream narrative;
  if (host == m) {
    report.label = roots.size() == 1 ? CaseLabel::C1b : CaseLabel::C1a;
    narrative << (roots.size() == 1 ? "double eigenvalue" : "two simple eigenvalues") << " below the smallest pole";
  } else if (host == 0) {
    report.label = roots.size() == 1 ? CaseLabel::C3b : CaseLabel::C3a;
    narrative << (roots.size() == 1 ? "double eigenvalue" : "two simple eigenvalues") << " above the largest pole";
  } else {
    if (roots.size() == 3) {
      report.label = CaseLabel::C4a;
      narrative << "three simple eigenvalues";
    } else if (roots.size() == 1) {
      report.label = CaseLabel::C4d;
      narrative << "a triple eigenvalue";
    } else if (roots[0]->algebraic_multiplicity == 2) {
      report.label = CaseLabel::C4b;
      narrative << "a double eigenvalue below a simple one";
    } else {
      report.label = CaseLabel::C4c;
      narrative << "a simple eigenvalue below a double one";
    }
    narrative << " in interval " << host << " (between poles " << poles[static_cast<std::size_t>(host)] << " and "
              << poles[static_cast<std::size_t>(host) - 1] << ")";
  }
  narrative << "; every other internal interval holds one eigenvalue";
  report.narrative = narrative.str();
  return report;
}

}  // namespace minkspec
