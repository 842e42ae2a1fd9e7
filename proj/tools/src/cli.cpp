#include <minkspec/cli.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include <minkspec/analysis.hpp>
#include <minkspec/error.hpp>
#include <minkspec/io.hpp>
#include <minkspec/plot.hpp>
#include <minkspec/sweep.hpp>

namespace minkspec {

namespace {

struct Options {
  std::string file;
  bool json = false;
  std::string svg;
  std::string csv;
  double a_min = 0.0, a_max = 0.0;
  int steps = 0;
  double center = 0.0, window = 0.0;
  int samples = 0;
};

std::string complex_text(Complex z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real();
  if (z.imag() != 0.0) os << (z.imag() > 0 ? " + " : " - ") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string sign_text(const SignedBlock& b) {
  if (b.type == BlockType::ComplexPair) return "c";
  if (b.type == BlockType::Jordan3) return "T";
  return b.epsilon < 0 ? "-" : "+";
}

// Observable spectral data of a problem; the shift is kept.
SpectralForm observable_form(const Problem& problem, const Tolerances& tol, std::vector<double>* detached) {
  if (const auto* f = std::get_if<SpectralForm>(&problem)) {
    if (detached) *detached = f->detached;
    SpectralForm out = *f;
    out.detached.clear();
    return out;
  }
  auto report = kalman_reduce(std::get<BorderedPencil>(problem), tol);
  if (detached) *detached = report.detached_spectrum;
  return report.reduced;
}

int cmd_analyze(const Options& o, const Tolerances& tol, std::ostream& out) {
  const Problem problem = load_problem(o.file, tol);
  const Analysis an = analyze(problem, tol);
  if (!o.svg.empty()) {
    const auto& form = an.observability.reduced;
    double lo = form.shift, hi = form.shift;
    for (const auto& r : an.eigenvalues) lo = std::min(lo, r.value.real()), hi = std::max(hi, r.value.real());
    for (double mu : form.poles) lo = std::min(lo, mu), hi = std::max(hi, mu);
    const double pad = 0.25 * (hi - lo) + 0.5;
    write_file(o.svg, render_svg(secular_plot(form, lo - pad, hi + pad)));
  }
  if (o.json) {
    out << analysis_to_json(an);
    return an.sign_census.empty() ? kExitOk : kExitNumerical;
  }
  out << "order: " << an.order << "\n";
  out << "case: " << to_string(an.case_label);
  if (an.case_label == CaseLabel::Reducible) out << " (observable part: " << to_string(an.interlacing.label) << ")";
  out << "\n";
  out << "observable: " << (an.observability.observable ? "yes" : "no");
  if (!an.observability.observable) {
    out << " (detached:";
    for (double x : an.observability.detached_spectrum) out << ' ' << std::setprecision(12) << x;
    out << ")";
  }
  out << "\n" << an.interlacing.narrative << "\n";
  out << "blocks:\n";
  for (const auto& b : an.canonical.blocks) {
    out << "  type " << static_cast<int>(b.type) << "  size " << b.size << "  eps " << std::setw(2)
        << (b.type == BlockType::ComplexPair ? std::string("0") : std::to_string(b.epsilon)) << "  "
        << complex_text(b.eigenvalue) << (b.detached ? "  (detached)" : "") << "\n";
  }
  out << "signs:";
  for (const auto& b : an.canonical.blocks) out << ' ' << sign_text(b);
  out << "\n";
  const auto [pos, neg] = an.canonical.signature();
  out << "signature: (" << pos << ", " << neg << ")\n";
  out << "canonical form: " << (an.sign_census.empty() ? "valid" : "INVALID: " + an.sign_census) << "\n";
  return an.sign_census.empty() ? kExitOk : kExitNumerical;
}

int cmd_critical(const Options& o, const Tolerances& tol, std::ostream& out) {
  const Problem problem = load_problem(o.file, tol);
  const auto values = critical_a_values(observable_form(problem, tol, nullptr), tol);
  if (o.json) {
    out << critical_values_to_json(values);
    return kExitOk;
  }
  out << "a_star,t,case\n";
  for (const auto& v : values)
    out << format_number(v.a_star) << ',' << format_number(v.tangency_point) << ',' << to_string(v.resulting_case)
        << "\n";
  return kExitOk;
}

int cmd_sweep(const Options& o, const Tolerances& tol, std::ostream& out) {
  const Problem problem = load_problem(o.file, tol);
  std::vector<double> detached;
  const SpectralForm form = observable_form(problem, tol, &detached);
  auto points = eigenvalue_trajectories(form, o.a_min, o.a_max, o.steps, tol);
  // Detached eigenvalues do not move with a; they ride along as constant branches.
  for (auto& p : points)
    for (double x : detached) p.eigenvalues.emplace_back(x, 0.0);
  if (!o.svg.empty()) write_file(o.svg, render_svg(sweep_plot(points, form)));
  if (!o.csv.empty()) {
    std::ostringstream csv;
    write_sweep_csv(csv, points);
    write_file(o.csv, csv.str());
    out << "wrote " << points.size() * (points.empty() ? 0 : points.front().eigenvalues.size()) << " rows to "
        << o.csv << "\n";
  } else {
    write_sweep_csv(out, points);
  }
  return kExitOk;
}

int cmd_nu(const Options& o, const Tolerances& tol, std::ostream& out) {
  const Problem problem = load_problem(o.file, tol);
  if (o.samples < 2) fail(ErrorKind::InvalidArgument, "--samples must be at least 2");
  if (!(o.window > 0.0)) fail(ErrorKind::InvalidArgument, "--window must be positive");
  std::vector<double> grid;
  for (int k = 0; k < o.samples; ++k)
    grid.push_back(o.center - o.window + 2.0 * o.window * k / (o.samples - 1));
  const BorderedPencil pencil = pencil_of(problem);
  const auto samples = nu_curves(pencil, grid);
  if (!o.svg.empty()) {
    std::vector<double> poles;
    for (double mu : hermitian_eigendecomposition(pencil.J()).values)
      if (std::abs(mu - o.center) <= o.window) poles.push_back(mu);
    write_file(o.svg, render_svg(nu_plot(samples, poles)));
  }
  if (!o.csv.empty()) {
    std::ostringstream csv;
    write_nu_csv(csv, samples);
    write_file(o.csv, csv.str());
    out << "wrote " << samples.size() << " rows to " << o.csv << "\n";
  } else {
    write_nu_csv(out, samples);
  }
  return kExitOk;
}

int cmd_verify(const Options& o, const Tolerances& tol, std::ostream& out) {
  const Problem problem = load_problem(o.file, tol);
  const auto checks = verify_instance(problem, tol);
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  if (o.json) {
    out << checks_to_json(checks);
  } else {
    for (const auto& c : checks) out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    out << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return ok ? kExitOk : kExitNumerical;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral toolkit for bordered matrices that are selfadjoint in a Minkowski inner product", "minkspec"};
  app.require_subcommand(1);
  Options o;

  auto* analyze_cmd = app.add_subcommand("analyze", "Eigenvalues, Jordan structure, interlacing case and signs");
  analyze_cmd->add_option("file", o.file, "problem file (JSON)")->required();
  analyze_cmd->add_flag("--json", o.json, "machine-readable output");
  analyze_cmd->add_option("--svg", o.svg, "write a g-vs-h plot");

  auto* critical_cmd = app.add_subcommand("critical-a", "Shifts a at which a multiple eigenvalue appears");
  critical_cmd->add_option("file", o.file, "problem file (JSON)")->required();
  critical_cmd->add_flag("--json", o.json, "machine-readable output");

  auto* sweep_cmd = app.add_subcommand("sweep", "Eigenvalue branches over a range of a");
  sweep_cmd->add_option("file", o.file, "problem file (JSON)")->required();
  sweep_cmd->add_option("--a-min", o.a_min)->required();
  sweep_cmd->add_option("--a-max", o.a_max)->required();
  sweep_cmd->add_option("--steps", o.steps)->required();
  sweep_cmd->add_option("--csv", o.csv, "write CSV here instead of standard output");
  sweep_cmd->add_option("--svg", o.svg, "write a trajectory plot");
  sweep_cmd->add_flag("--json", o.json, "errors as JSON");

  auto* nu_cmd = app.add_subcommand("nu-curves", "Eigenvalue curves of lambda H - H A");
  nu_cmd->add_option("file", o.file, "problem file (JSON)")->required();
  nu_cmd->add_option("--center", o.center)->required();
  nu_cmd->add_option("--window", o.window)->required();
  nu_cmd->add_option("--samples", o.samples)->required();
  nu_cmd->add_option("--csv", o.csv, "write CSV here instead of standard output");
  nu_cmd->add_option("--svg", o.svg, "write a plot");
  nu_cmd->add_flag("--json", o.json, "errors as JSON");

  auto* verify_cmd = app.add_subcommand("verify", "Cross-check this instance against the independent oracles");
  verify_cmd->add_option("file", o.file, "problem file (JSON)")->required();
  verify_cmd->add_flag("--json", o.json, "machine-readable output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    const Tolerances tol = Tolerances::from_environment();
    if (analyze_cmd->parsed()) return cmd_analyze(o, tol, out);
    if (critical_cmd->parsed()) return cmd_critical(o, tol, out);
    if (sweep_cmd->parsed()) return cmd_sweep(o, tol, out);
    if (nu_cmd->parsed()) return cmd_nu(o, tol, out);
    return cmd_verify(o, tol, out);
  } catch (const Error& e) {
    err << "minkspec: " << to_string(e.kind()) << ": " << e.detail() << "\n";
    if (o.json) out << error_to_json(e);
    return is_input_error(e.kind()) ? kExitInput : kExitNumerical;
  } catch (const std::exception& e) {
    err << "minkspec: internal error: " << e.what() << "\n";
    if (o.json) out << error_to_json(e);
    return kExitNumerical;
  }
}

}  // namespace minkspec
