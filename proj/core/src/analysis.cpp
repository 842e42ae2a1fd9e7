#include <minkspec/analysis.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <minkspec/error.hpp>
#include <minkspec/oracle.hpp>

namespace minkspec {

BorderedPencil pencil_of(const Problem& problem) {
  if (const auto* pencil = std::get_if<BorderedPencil>(&problem)) return *pencil;
  return to_pencil(std::get<SpectralForm>(problem));
}

Analysis analyze(const Problem& problem, const Tolerances& tol) {
  Analysis an;
  if (const auto* pencil = std::get_if<BorderedPencil>(&problem)) {
    an.order = pencil->n();
    an.hautus = hautus_test(*pencil, tol);
    an.observability = kalman_reduce(*pencil, tol);
  } else {
    const auto& form = std::get<SpectralForm>(problem);
    an.order = form.order() + form.detached.size();
    an.observability.detached_spectrum = form.detached;
    an.observability.unobservable_dimension = static_cast<int>(form.detached.size());
    an.observability.observable = form.detached.empty();
    an.observability.reduced = form;
    an.observability.reduced.detached.clear();
  }

  const SecularFunction s(an.observability.reduced, tol);
  an.reduced = solve_spectrum(s);
  an.interlacing = classify_interlacing(an.reduced, s);
  an.case_label = an.observability.observable ? an.interlacing.label : CaseLabel::Reducible;
  an.canonical = assemble_canonical_form(assign_signs(an.reduced, s), an.observability.detached_spectrum, an.case_label);
  an.sign_census = check_sign_census(an.canonical, an.reduced, an.interlacing);

  an.eigenvalues = an.reduced.records;
  for (double x : an.observability.detached_spectrum)
    an.eigenvalues.push_back({Complex(x, 0.0), 1, 1, true, std::nullopt});

  auto& diag = an.diagnostics;
  diag.tolerance_scale = tol.scale;
  diag.tau_tangency = tol.tangency(s.shift(), s.spread());
  diag.tau_gap = tol.gap(s.spread());
  diag.tau_obs = tol.obs(s.form().residue_sum() + s.form().dropped_residue);
  for (const auto& r : an.reduced.records) {
    if (r.is_real && r.algebraic_multiplicity == 1) {
      const double x = r.value.real();
      diag.max_simple_residual = std::max(diag.max_simple_residual, std::abs(s.f_at(x)) / s.residual_scale(x));
    }
  }
  return an;
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

// Deterministic sample points spread over [lo, hi].
std::vector<double> probe_points(double lo, double hi, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) {
    // Irrational offsets keep the points away from any structured value.
    const double t = std::fmod(0.5 + 0.6180339887498949 * (k + 1), 1.0);
    out.push_back(lo + (hi - lo) * t);
  }
  return out;
}

}  // namespace

std::vector<CheckResult> verify_instance(const Problem& problem, const Tolerances& tol) {
  std::vector<CheckResult> out;
  const Analysis an = analyze(problem, tol);
  const BorderedPencil pencil = pencil_of(problem);
  const SpectralForm& reduced_form = an.observability.reduced;
  const SecularFunction s(reduced_form, tol);

  // A root declared multiple at tolerance tau may really be a cluster of
  // radius sqrt(2 tau / |f''|) for a double or cbrt(6 tau / |f'''|) for a triple.
  const double tau = tol.tangency(s.shift(), s.spread());
  bool multiple = an.reduced.complex_pair.has_value() && an.reduced.complex_pair->im < 1e-4;
  double cluster_radius = 0.0;
  for (const auto& r : an.reduced.records) {
    if (r.algebraic_multiplicity == 2)
      cluster_radius = std::max(cluster_radius, std::sqrt(2.0 * tau / std::abs(s.g2_at(r.value.real()))));
    if (r.algebraic_multiplicity == 3)
      cluster_radius = std::max(cluster_radius, std::cbrt(6.0 * tau / std::abs(s.g3_at(r.value.real()))));
    multiple = multiple || r.algebraic_multiplicity > 1;
  }
  const double root_tol = multiple ? std::max(1e-4, 2.0 * cluster_radius) : 1e-8;

  const std::vector<Complex> solved = an.reduced.values();

  {
    const auto oracle = char_poly_roots_oracle(reduced_form);
    const double dist = optimal_matching_distance(solved, oracle);
    out.push_back({"oracle-roots", dist <= root_tol, "max matched distance " + fmt(dist) + " (tol " + fmt(root_tol) + ")"});
  }

  std::vector<Complex> full = solved;
  for (double x : an.observability.detached_spectrum) full.emplace_back(x, 0.0);
  const CMatrix A = assemble_A_and_H(pencil).A;

  {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& z : full) {
      lo = std::min(lo, z.real());
      hi = std::max(hi, z.real());
    }
    double worst = 0.0;
    for (double x : probe_points(lo - 1.0, hi + 1.0, 20)) {
      PolyValue pv = char_poly_product_form(reduced_form, x);
      Complex product = pv.value;
      double magnitude = pv.magnitude;
      for (double mu : an.observability.detached_spectrum) {
        product *= (x - mu);
        magnitude *= std::abs(x - mu);
      }
      const Complex dense = dense_char_poly(A, x);
      worst = std::max(worst, std::abs(product - dense) / std::max({std::abs(dense), magnitude, 1e-300}));
    }
    out.push_back({"det-identity", worst <= 1e-9, "max relative gap " + fmt(worst) + " over 20 points"});
  }

  {
    const double dist = optimal_matching_distance(full, dense_spectrum(A));
    out.push_back({"dense-spectrum", dist <= root_tol,
                   "spectrum of J1 + reduced vs dense eigensolver: " + fmt(dist)});
  }

  {
    bool ok = true;
    for (const auto& z : solved) {
      const Complex c = std::conj(z);
      ok = ok && std::any_of(solved.begin(), solved.end(), [&](Complex w) { return w == c; });
    }
    out.push_back({"conjugate-symmetry", ok, ok ? "spectrum closed under conjugation" : "unpaired non-real value"});
  }

  {
    double worst = 0.0;
    bool ok = true;
    for (const auto& r : an.reduced.records) {
      if (!r.is_real || r.algebraic_multiplicity != 1) continue;
      const double x = r.value.real();
      const double res = std::abs(s.f_at(x));
      worst = std::max(worst, res / s.residual_scale(x));
      const bool small = res <= 1e-12 * s.residual_scale(x);
      const bool sign_flip = s.f_at(std::nextafter(x, -INFINITY)) * s.f_at(std::nextafter(x, INFINITY)) <= 0.0;
      ok = ok && (small || sign_flip);
    }
    out.push_back({"root-polish", ok, "max scaled residual " + fmt(worst)});
  }

  {
    bool ok = true;
    int checked = 0;
    std::size_t block = 0;
    for (const auto& r : an.reduced.records) {
      if (!r.is_real) continue;
      const double x = r.value.real();
      const auto& b = an.canonical.blocks[block];
      if (r.algebraic_multiplicity == 1 && std::abs(s.g1_at(x) - 1.0) > 0.05) {
        const auto check = nu_derivative_check(pencil, s, x);
        const int sign = check.numeric > 0.0 ? 1 : -1;
        ok = ok && check.agree && sign == b.epsilon;
        ++checked;
      } else if (r.algebraic_multiplicity == 2) {
        const auto check = nu_second_derivative_check(pencil, s, x);
        const int sign = check.numeric > 0.0 ? 1 : -1;
        ok = ok && check.agree && sign == b.epsilon;
        ++checked;
      }
      ++block;
    }
    out.push_back({"nu-signs", ok, std::to_string(checked) + " eigenvalues checked against nu-curve derivatives"});
  }

  {
    bool ok = true;
    std::string detail;
    for (const auto& r : an.reduced.records) {
      const auto cert = jordan_certificate(pencil, r.value, tol);
      const bool good = cert.block_size == r.jordan_block_size;
      if (!good) {
        std::ostringstream os;
        os << " x=" << r.value << " ranks(" << cert.ranks[0] << "," << cert.ranks[1] << "," << cert.ranks[2] << ")";
        detail += os.str();
      }
      ok = ok && good;
    }
    out.push_back({"jordan-rank", ok, ok ? "block sizes match rank drops" : "mismatch:" + detail});
  }

  {
    std::vector<double> reals;
    for (const auto& z : full)
      if (z.imag() == 0.0) reals.push_back(z.real());
    std::sort(reals.begin(), reals.end());
    // Distinct values with odd multiplicity cross zero.
    std::vector<double> expected, distinct;
    for (std::size_t i = 0; i < reals.size();) {
      std::size_t j = i;
      while (j < reals.size() && reals[j] - reals[i] <= 1e-9 * (1.0 + std::abs(reals[i]))) ++j;
      distinct.push_back(reals[i]);
      if ((j - i) % 2 == 1) expected.push_back(reals[i]);
      i = j;
    }
    std::vector<double> grid;
    if (!distinct.empty()) {
      grid.push_back(distinct.front() - 1.0);
      for (std::size_t i = 1; i < distinct.size(); ++i) grid.push_back(0.5 * (distinct[i - 1] + distinct[i]));
      grid.push_back(distinct.back() + 1.0);
    }
    const auto crossings = nu_zero_crossings(pencil, grid);
    bool ok = crossings.size() == expected.size();
    double worst = 0.0;
    for (std::size_t i = 0; ok && i < crossings.size(); ++i) worst = std::max(worst, std::abs(crossings[i] - expected[i]));
    ok = ok && worst <= (multiple ? root_tol : 1e-7);
    out.push_back({"nu-crossings", ok,
                   std::to_string(crossings.size()) + " crossings vs " + std::to_string(expected.size()) +
                       " odd real eigenvalues, max gap " + fmt(worst)});
  }

  {
    const auto [pos, neg] = an.canonical.signature();
    const bool ok = an.sign_census.empty();
    out.push_back({"canonical-form", ok,
                   "signature (" + std::to_string(pos) + ", " + std::to_string(neg) + ")" +
                       (ok ? "" : "; " + an.sign_census)});
  }
  return out;
}

}  // namespace minkspec
