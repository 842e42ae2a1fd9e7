// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <minkspec/analysis.hpp>
#include <minkspec/cli.hpp>
#include <minkspec/error.hpp>
#include <minkspec/oracle.hpp>
#include <minkspec/sweep.hpp>

#include "instances.hpp"

using namespace minkspec;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Every instance touched by criteria 1-6, re-examined by criterion 7.
std::vector<Problem> g_instances;

const SpectralForm& four_pole() {
  static const SpectralForm form = SpectralForm::from_poles({4, 3, 2, 1}, {1, 0.001, 0.02, 0.01}, 0.0);
  return form;
}

BorderedPencil two_pole_pencil() {
  const double r = 1.0 / std::sqrt(2.0);
  const std::vector<Complex> u{r, r};
  return validate_problem(CMatrix{{1.0, 0.0}, {0.0, -1.0}}, u, 0.0);
}

std::string num(double x, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<double> kReferenceAStar{0.4591, 0.8319, 1.2631, 1.7485, 2.0087, 6.0097};
const std::vector<double> kReferenceT{0.8934, 1.10815, 1.83895, 2.1699, 2.91185, 5.00155};
const std::vector<std::string> kReferenceCases{"1b", "4b", "4c", "4b", "4c", "3b"};

struct CliRow {
  double a_star, t;
  std::string label;
};

// Runs `minkspec critical-a` on the four-pole example through the command-line entry point.
std::vector<CliRow> critical_rows_from_cli(int* exit_code) {
  const std::string path = std::string(MINKSPEC_TEST_DATA_DIR) + "/example1.json";
  std::ostringstream out, err;
  *exit_code = run_cli({"critical-a", path}, out, err);
  std::vector<CliRow> rows;
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    CliRow r;
    char label[16] = {};
    if (std::sscanf(line.c_str(), "%lf,%lf,%15s", &r.a_star, &r.t, label) == 3) {
      r.label = label;
      rows.push_back(r);
    }
  }
  return rows;
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  const auto rows = critical_rows_from_cli(&code);
  const double elapsed = seconds_since(t0);
  bool ok = code == 0 && rows.size() == 6;
  double worst = 0;
  std::string cases;
  for (std::size_t i = 0; i < rows.size() && i < 6; ++i) {
    worst = std::max(worst, std::abs(rows[i].a_star - kReferenceAStar[i]));
    ok = ok && rows[i].label == kReferenceCases[i];
    cases += (i ? " " : "") + rows[i].label;
    g_instances.push_back(four_pole().with_shift(rows[i].a_star));
  }
  ok = ok && worst <= 2e-3 && elapsed < 1.0;
  return {ok, std::to_string(rows.size()) + " values, max |a* - reference| = " + num(worst, 3) + ", cases [" + cases +
                  "], " + num(elapsed, 3) + " s"};
}

Outcome criterion2() {
  const auto values = critical_a_values(four_pole());
  bool ok = values.size() == 6;
  double worst = 0;
  for (std::size_t i = 0; i < values.size() && i < 6; ++i)
    worst = std::max(worst, std::abs(values[i].tangency_point - kReferenceT[i]));
  ok = ok && worst <= 2e-3;
  return {ok, std::to_string(values.size()) + " tangency points, max |t - reference| = " + num(worst, 3)};
}

// Sign of the block for the record at position k among real eigenvalues (descending).
Outcome criterion3() {
  std::vector<std::string> problems;
  auto expect = [&](bool cond, const std::string& what) {
    if (!cond) problems.push_back(what);
  };
  auto negatives = [](const Analysis& an) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < an.canonical.blocks.size(); ++k)
      if (an.canonical.blocks[k].type == BlockType::Simple && an.canonical.blocks[k].epsilon < 0) idx.push_back(k);
    return idx;
  };

  {
    const Problem p = four_pole().with_shift(0.0);
    g_instances.push_back(p);
    const Analysis an = analyze(p);
    const auto neg = negatives(an);
    expect(an.case_label == CaseLabel::C1a, "a=0 case " + std::string(to_string(an.case_label)));
    expect(neg.size() == 1 && neg[0] == an.canonical.blocks.size() - 1, "a=0 negative not on smallest");
  }
  {
    const Problem p = four_pole().with_shift(1.0);
    g_instances.push_back(p);
    const Analysis an = analyze(p);
    const auto neg = negatives(an);
    expect(an.case_label == CaseLabel::C4a, "a=1 case " + std::string(to_string(an.case_label)));
    // The host interval holds three simple roots; the middle one is the second in descending order.
    std::vector<std::size_t> host;
    for (std::size_t k = 0; k < an.reduced.records.size(); ++k)
      if (an.reduced.records[k].interval_index == an.interlacing.host_interval) host.push_back(k);
    expect(host.size() == 3 && neg.size() == 1 && neg[0] == host[1], "a=1 negative not on middle root of host");
  }
  {
    const Problem p = four_pole().with_shift(6.5);
    g_instances.push_back(p);
    const Analysis an = analyze(p);
    const auto neg = negatives(an);
    expect(an.case_label == CaseLabel::C3a, "a=6.5 case " + std::string(to_string(an.case_label)));
    expect(neg.size() == 1 && neg[0] == 0, "a=6.5 negative not on largest");
  }

  const std::vector<int> expected{-1, +1, -1, +1, -1, +1};
  std::string got, nu_signs;
  int sign_mismatches = 0;
  const auto values = critical_a_values(four_pole());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Problem p = four_pole().with_shift(values[i].a_star);
    g_instances.push_back(p);
    const Analysis an = analyze(p);
    int eps = 0;
    for (const auto& b : an.canonical.blocks)
      if (b.type == BlockType::Jordan2) eps = b.epsilon;
    got += (eps > 0 ? "+" : eps < 0 ? "-" : "?");
    // Independent reading of the same sign: curvature of the vanishing nu-curve.
    const SecularFunction s(four_pole().with_shift(values[i].a_star));
    const auto curve = nu_second_derivative_check(pencil_of(p), s, values[i].tangency_point);
    nu_signs += (curve.numeric > 0 ? "+" : "-");
    if (i >= expected.size() || eps != expected[i]) ++sign_mismatches;
    expect(to_string(an.case_label) == kReferenceCases.at(i), "case at a*=" + num(values[i].a_star));
  }
  expect(sign_mismatches == 0, std::to_string(sign_mismatches) + " of 6 size-2 signs differ from the expected table");
  std::string detail = "a=0 1a, a=1 4a, a=6.5 3a; size-2 signs " + got + " (expected -+-+-+), nu-curve curvature signs " + nu_signs;
  for (const auto& p : problems) detail += "; " + p;
  return {problems.empty() && values.size() == 6, detail};
}

Outcome criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  const BorderedPencil pencil = two_pole_pencil();
  g_instances.push_back(pencil);
  const Analysis an = analyze(pencil);
  const CMatrix a = assemble_A_and_H(pencil).A;
  double worst = 0;
  for (int k = 0; k <= 40; ++k) {
    const double x = -2.0 + 0.1 * k;
    worst = std::max(worst, std::abs(dense_char_poly(a, x) - Complex(x * x * x)));
    const Complex z(x, 0.7 * x);  // off-axis samples in the same disc
    if (std::abs(z) <= 2.0) worst = std::max(worst, std::abs(dense_char_poly(a, z) - z * z * z));
  }
  const auto cert = jordan_certificate(pencil, 0.0);
  const double elapsed = seconds_since(t0);
  const bool one_block = an.canonical.blocks.size() == 1 && an.canonical.blocks[0].type == BlockType::Jordan3 &&
                         std::abs(an.canonical.blocks[0].eigenvalue) < 1e-6;
  const bool ranks = cert.ranks[0] == 2 && cert.ranks[1] == 1 && cert.ranks[2] == 0;
  const bool ok = worst <= 1e-12 && an.case_label == CaseLabel::C4d && one_block && ranks && elapsed < 0.1;
  return {ok, "max |det(zI-A) - z^3| = " + num(worst, 3) + ", case " + std::string(to_string(an.case_label)) +
                  ", ranks (" + std::to_string(cert.ranks[0]) + "," + std::to_string(cert.ranks[1]) + "," +
                  std::to_string(cert.ranks[2]) + "), " + num(elapsed, 3) + " s"};
}

Outcome criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  testing::Rng rng(20240501);
  double worst = 0;
  int count_mismatch = 0, other_errors = 0, over = 0;
  std::string first_error;
  for (int i = 0; i < 200; ++i) {
    const SpectralForm form = testing::random_form(rng);
    g_instances.push_back(form);
    try {
      const auto solved = solve_spectrum(SecularFunction(form)).values();
      const auto oracle = char_poly_roots_oracle(form);
      const double dist = optimal_matching_distance(solved, oracle);
      worst = std::max(worst, dist);
      if (dist > 1e-8) ++over;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::CountMismatch) ++count_mismatch;
      else ++other_errors;
      if (first_error.empty()) first_error = e.what();
    }
  }
  const double elapsed = seconds_since(t0);
  const bool ok = over == 0 && count_mismatch == 0 && other_errors == 0 && elapsed < 30.0;
  std::string detail = "200 forms, max matched distance " + num(worst, 3) + ", " + std::to_string(over) +
                       " over 1e-8, CountMismatch " + std::to_string(count_mismatch) + ", other errors " +
                       std::to_string(other_errors) + ", " + num(elapsed, 3) + " s";
  if (!first_error.empty()) detail += "; first error: " + first_error;
  return {ok, detail};
}

Outcome criterion6() {
  testing::Rng rng(77123);
  int accepted = 0, tried = 0, sign_checks = 0, sign_agree = 0, slope_agree = 0;
  while (accepted < 100 && tried < 10000) {
    ++tried;
    const SpectralForm form = testing::random_form(rng);
    const SecularFunction s(form);
    EigenStructure e;
    try {
      e = solve_spectrum(s);
    } catch (const Error&) {
      continue;  // criterion 5 accounts for solver failures
    }
    bool margin = true;
    for (const auto& r : e.records)
      if (r.is_real) margin = margin && r.algebraic_multiplicity == 1 && std::abs(s.g1_at(r.value.real()) - 1) > 0.05;
    if (!margin) continue;
    ++accepted;
    g_instances.push_back(form);
    const auto blocks = assign_signs(e, s);
    const BorderedPencil pencil = to_pencil(form);
    for (std::size_t k = 0; k < e.records.size(); ++k) {
      if (!e.records[k].is_real) continue;
      const auto check = nu_derivative_check(pencil, s, e.records[k].value.real());
      ++sign_checks;
      if ((check.numeric > 0 ? 1 : -1) == blocks[k].epsilon) ++sign_agree;
      if (check.agree) ++slope_agree;
    }
  }
  const bool ok = accepted == 100 && sign_agree == sign_checks;
  return {ok, std::to_string(accepted) + " instances (" + std::to_string(tried) + " drawn), signs " +
                  std::to_string(sign_agree) + "/" + std::to_string(sign_checks) + ", slope magnitude " +
                  std::to_string(slope_agree) + "/" + std::to_string(sign_checks) + " within 1e-4"};
}

Outcome criterion7() {
  int failures = 0;
  std::string first;
  auto note = [&](bool cond, const std::string& what) {
    if (cond) return;
    if (failures++ == 0) first = what;
  };
  for (std::size_t i = 0; i < g_instances.size(); ++i) {
    const std::string tag = "instance " + std::to_string(i) + ": ";
    Analysis an;
    try {
      an = analyze(g_instances[i]);
    } catch (const Error& e) {
      note(false, tag + e.what());
      continue;
    }
    std::vector<Complex> values;
    for (const auto& r : an.eigenvalues)
      for (int k = 0; k < r.algebraic_multiplicity; ++k) values.push_back(r.value);
    note(values.size() == an.order, tag + "eigenvalue count");
    for (const auto& z : values)
      note(std::count(values.begin(), values.end(), std::conj(z)) == std::count(values.begin(), values.end(), z),
           tag + "spectrum not conjugate-symmetric");
    const auto& counts = an.interlacing.interval_counts;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      const bool outer = k == 0 || k + 1 == counts.size();
      note(outer ? (counts[k] == 0 || counts[k] == 2) : (counts[k] == 1 || counts[k] == 3),
           tag + "interval " + std::to_string(k) + " holds " + std::to_string(counts[k]));
    }
    const auto [pos, neg] = an.canonical.signature();
    note(pos == static_cast<int>(an.order) - 1 && neg == 1, tag + "signature");
    int special = 0, negative_simple = 0;
    for (const auto& b : an.canonical.blocks) {
      if (b.type != BlockType::Simple) ++special;
      else if (b.epsilon < 0) ++negative_simple;
    }
    note(special <= 1, tag + "more than one block of type 2/3/4");
    note(negative_simple <= 1, tag + "more than one negative type-1 block");
  }
  return {failures == 0, std::to_string(g_instances.size()) + " instances, " + std::to_string(failures) +
                             " violations" + (first.empty() ? "" : "; first: " + first)};
}

Outcome criterion8() {
  testing::Rng rng(4242);
  double worst = 0;
  int planted_ok = 0, errors = 0;
  std::string first_error;
  for (int i = 0; i < 50; ++i) {
    const auto inst = testing::random_planted_pencil(rng);
    try {
      const auto report = kalman_reduce(inst.pencil);
      std::vector<Complex> split;
      for (double x : report.detached_spectrum) split.emplace_back(x, 0.0);
      for (const auto& z : solve_spectrum(SecularFunction(report.reduced)).values()) split.push_back(z);
      const auto dense = dense_spectrum(assemble_A_and_H(inst.pencil).A);
      worst = std::max(worst, optimal_matching_distance(split, dense));
      bool same = report.detached_spectrum.size() == inst.planted.size();
      for (std::size_t k = 0; same && k < inst.planted.size(); ++k)
        same = std::abs(report.detached_spectrum[k] - inst.planted[k]) <= 1e-9;
      if (same) ++planted_ok;
    } catch (const Error& e) {
      ++errors;
      if (first_error.empty()) first_error = e.what();
    }
  }
  const bool ok = errors == 0 && worst <= 1e-8;
  std::string detail = "50 pencils, max matched distance to dense spectrum " + num(worst, 3) + ", planted spectrum recovered " +
                       std::to_string(planted_ok) + "/50, errors " + std::to_string(errors);
  if (!first_error.empty()) detail += "; first error: " + first_error;
  return {ok, detail};
}

Outcome criterion9() {
  double worst = 0;
  std::string problems;
  for (double a : {5.0, 10.0, 100.0}) {
    const double h = 1e-5 * (1.0 + std::abs(a));
    const SecularFunction s(four_pole().with_shift(a));
    const auto center = solve_spectrum(s).values();
    const auto plus = solve_spectrum(SecularFunction(four_pole().with_shift(a + h))).values();
    const auto minus = solve_spectrum(SecularFunction(four_pole().with_shift(a - h))).values();
    auto match_to_center = [&](const std::vector<Complex>& other) {
      std::vector<std::vector<double>> cost(center.size(), std::vector<double>(other.size()));
      for (std::size_t i = 0; i < center.size(); ++i)
        for (std::size_t j = 0; j < other.size(); ++j) cost[i][j] = std::abs(center[i] - other[j]);
      return min_cost_assignment(cost);
    };
    const auto mp = match_to_center(plus), mm = match_to_center(minus);
    for (std::size_t i = 0; i < center.size(); ++i) {
      const Complex fd = (plus[mp[i]] - minus[mm[i]]) / (2.0 * h);
      const Complex analytic = center[i].imag() == 0.0 ? Complex(trajectory_derivative(s, center[i].real()))
                                                       : trajectory_derivative(s, center[i]);
      const double rel = std::abs(fd - analytic) / std::abs(analytic);
      worst = std::max(worst, rel);
    }
  }
  const double big = 1e4;
  const auto report = asymptotic_check(four_pole(), big);
  // Independent reading of the same eigenvalues: one near each pole from above, one near a.
  bool near_poles = true;
  for (double mu : four_pole().poles) {
    const auto hits = std::count_if(report.eigenvalues.begin(), report.eigenvalues.end(), [&](Complex z) {
      return z.imag() == 0.0 && z.real() > mu && z.real() < mu + 1e-3;
    });
    near_poles = near_poles && hits == 1;
  }
  const bool runaway = std::any_of(report.eigenvalues.begin(), report.eigenvalues.end(),
                                   [&](Complex z) { return std::abs(z - big) < 1.0; });
  const bool ok = worst <= 1e-4 && report.all_ok() && near_poles && runaway;
  return {ok, "max relative slope gap " + num(worst, 3) + " at a in {5, 10, 100}; a = 1e4: pole branches " +
                  (near_poles ? "ok" : "off") + ", runaway " + (runaway ? "ok" : "off") + ", bound " +
                  num(report.bound, 3) + problems};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"four-pole critical values", criterion1},
      {"four-pole double-eigenvalue locations", criterion2},
      {"four-pole sign table", criterion3},
      {"two-pole triple block", criterion4},
      {"Oracle equivalence on random forms", criterion5},
      {"Sign rule vs nu-curve slopes", criterion6},
      {"Structural invariants", criterion7},
      {"Kalman reduction vs dense spectrum", criterion8},
      {"Trajectory derivative and asymptotics", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << "  " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
