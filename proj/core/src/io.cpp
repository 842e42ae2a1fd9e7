#include <minkspec/io.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include <minkspec/error.hpp>

namespace minkspec {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) fail(ErrorKind::ParseError, where + ": expected a number");
  return j.get<double>();
}

Complex complex_at(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::ParseError, where + ": expected [re, im]");
  return {number_at(j[0], where + "[0]"), number_at(j[1], where + "[1]")};
}

std::vector<double> numbers_at(const json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorKind::ParseError, where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number_at(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

ojson complex_ojson(Complex z) { return ojson::array({z.real(), z.imag()}); }

}  // namespace

Problem parse_problem(std::string_view text, const Tolerances& tol) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::ParseError, "top level: expected an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "J" && key != "u" && key != "a" && key != "mu" && key != "d")
      fail(ErrorKind::ParseError, "unknown key '" + key + "'");
  }
  const bool matrix = doc.contains("J") || doc.contains("u");
  const bool spectral = doc.contains("mu") || doc.contains("d");
  if (matrix && spectral) fail(ErrorKind::ParseError, "both matrix keys (J, u) and spectral keys (mu, d) present");
  if (!matrix && !spectral) fail(ErrorKind::ParseError, "neither matrix keys (J, u) nor spectral keys (mu, d) present");
  if (!doc.contains("a")) fail(ErrorKind::ParseError, "missing key 'a'");
  const double a = number_at(doc["a"], "key 'a'");

  if (spectral) {
    if (!doc.contains("mu")) fail(ErrorKind::ParseError, "missing key 'mu'");
    if (!doc.contains("d")) fail(ErrorKind::ParseError, "missing key 'd'");
    auto mu = numbers_at(doc["mu"], "key 'mu'");
    auto d = numbers_at(doc["d"], "key 'd'");
    if (mu.size() != d.size())
      fail(ErrorKind::ParseError, "keys 'mu' and 'd' differ in length (" + std::to_string(mu.size()) + " vs " +
                                      std::to_string(d.size()) + ")");
    return SpectralForm::from_poles(std::move(mu), std::move(d), a, tol);
  }

  if (!doc.contains("J")) fail(ErrorKind::ParseError, "missing key 'J'");
  if (!doc.contains("u")) fail(ErrorKind::ParseError, "missing key 'u'");
  const json& jj = doc["J"];
  if (!jj.is_array()) fail(ErrorKind::ParseError, "key 'J': expected an array of rows");
  std::vector<std::vector<Complex>> rows;
  for (std::size_t i = 0; i < jj.size(); ++i) {
    const std::string where = "key 'J' row " + std::to_string(i);
    if (!jj[i].is_array()) fail(ErrorKind::ParseError, where + ": expected an array");
    auto& row = rows.emplace_back();
    for (std::size_t k = 0; k < jj[i].size(); ++k)
      row.push_back(complex_at(jj[i][k], where + " entry " + std::to_string(k)));
  }
  const json& ju = doc["u"];
  if (!ju.is_array()) fail(ErrorKind::ParseError, "key 'u': expected an array");
  std::vector<Complex> u;
  for (std::size_t i = 0; i < ju.size(); ++i) u.push_back(complex_at(ju[i], "key 'u' entry " + std::to_string(i)));
  return validate_problem(rows, u, a, tol);
}

Problem load_problem(const std::filesystem::path& path, const Tolerances& tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_problem(buf.str(), tol);
  } catch (const Error& e) {
    fail(e.kind(), path.string() + ": " + e.detail());
  }
}

std::string serialize_problem(const Problem& problem) {
  json doc;
  if (const auto* p = std::get_if<BorderedPencil>(&problem)) {
    json rows = json::array();
    const auto& j = p->J().entries();
    for (std::size_t r = 0; r < j.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < j.cols(); ++c) row.push_back(complex_json(j(r, c)));
      rows.push_back(row);
    }
    json u = json::array();
    for (Complex z : p->u()) u.push_back(complex_json(z));
    doc["J"] = rows;
    doc["u"] = u;
    doc["a"] = p->a();
  } else {
    const auto& f = std::get<SpectralForm>(problem);
    doc["mu"] = f.poles;
    doc["d"] = f.residues;
    doc["a"] = f.shift;
  }
  // nlohmann prints the shortest representation that reads back bit-identical.
  return doc.dump(2) + "\n";
}

std::string analysis_to_json(const Analysis& an) {
  ojson doc;
  doc["order"] = an.order;
  doc["case"] = std::string(to_string(an.case_label));
  doc["observable_case"] = std::string(to_string(an.interlacing.label));
  if (an.interlacing.host_interval) doc["host_interval"] = *an.interlacing.host_interval;
  doc["interval_counts"] = an.interlacing.interval_counts;

  ojson obs;
  obs["observable"] = an.observability.observable;
  obs["unobservable_dimension"] = an.observability.unobservable_dimension;
  obs["detached_spectrum"] = an.observability.detached_spectrum;
  obs["poles"] = an.observability.reduced.poles;
  obs["residues"] = an.observability.reduced.residues;
  if (an.hautus) {
    ojson entries = ojson::array();
    for (const auto& e : an.hautus->entries)
      entries.push_back({{"eigenvalue", e.eigenvalue}, {"multiplicity", e.multiplicity}, {"observable", e.observable}});
    obs["hautus"] = entries;
  }
  doc["observability"] = obs;

  ojson eig = ojson::array();
  for (const auto& r : an.eigenvalues) {
    ojson rec;
    rec["value"] = complex_ojson(r.value);
    rec["algebraic_multiplicity"] = r.algebraic_multiplicity;
    rec["jordan_block_size"] = r.jordan_block_size;
    rec["is_real"] = r.is_real;
    if (r.interval_index) rec["interval"] = *r.interval_index;
    eig.push_back(rec);
  }
  doc["eigenvalues"] = eig;

  ojson blocks = ojson::array();
  for (const auto& b : an.canonical.blocks) {
    const auto [pos, neg] = b.inertia();
    blocks.push_back({{"type", static_cast<int>(b.type)},
                      {"eigenvalue", complex_ojson(b.eigenvalue)},
                      {"size", b.size},
                      {"epsilon", b.epsilon},
                      {"sign_in_h", b.sign_in_h},
                      {"detached", b.detached},
                      {"inertia", {pos, neg}}});
  }
  doc["blocks"] = blocks;
  const auto [pos, neg] = an.canonical.signature();
  doc["signature"] = {pos, neg};
  doc["canonical_valid"] = an.sign_census.empty();
  if (!an.sign_census.empty()) doc["sign_census"] = an.sign_census;

  const auto& dg = an.diagnostics;
  doc["diagnostics"] = {{"tolerance_scale", dg.tolerance_scale},
                        {"tau_tangency", dg.tau_tangency},
                        {"tau_gap", dg.tau_gap},
                        {"tau_obs", dg.tau_obs},
                        {"max_simple_residual", dg.max_simple_residual}};
  return doc.dump(2) + "\n";
}

std::string critical_values_to_json(const std::vector<CriticalValue>& values) {
  ojson rows = ojson::array();
  for (const auto& v : values)
    rows.push_back({{"a_star", v.a_star},
                    {"t", v.tangency_point},
                    {"interval", v.interval_index},
                    {"case", std::string(to_string(v.resulting_case))}});
  return rows.dump(2) + "\n";
}

std::string checks_to_json(const std::vector<CheckResult>& checks) {
  ojson rows = ojson::array();
  for (const auto& c : checks) rows.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return rows.dump(2) + "\n";
}

std::string error_to_json(const std::exception& error) {
  ojson doc;
  if (const auto* e = dynamic_cast<const Error*>(&error)) {
    doc["error"] = std::string(to_string(e->kind()));
    doc["message"] = e->detail();
  } else {
    doc["error"] = "Internal";
    doc["message"] = error.what();
  }
  return doc.dump(2) + "\n";
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_sweep_csv(std::ostream& out, const std::vector<TrajectoryPoint>& points) {
  out << "a,branch_index,re,im,case_label\n";
  for (const auto& p : points) {
    for (std::size_t b = 0; b < p.eigenvalues.size(); ++b) {
      out << format_number(p.a) << ',' << b << ',' << format_number(p.eigenvalues[b].real()) << ','
          << format_number(p.eigenvalues[b].imag()) << ',' << to_string(p.case_label) << '\n';
    }
  }
}

void write_nu_csv(std::ostream& out, const std::vector<NuCurveSample>& samples) {
  const std::size_t n = samples.empty() ? 0 : samples.front().nus.size();
  out << "lambda";
  for (std::size_t c = 1; c <= n; ++c) out << ",nu_" << c;
  out << '\n';
  for (const auto& s : samples) {
    out << format_number(s.lambda);
    for (std::size_t c = 0; c < n; ++c) out << ',' << format_number(s.nus[s.matching[c]]);
    out << '\n';
  }
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) fail(ErrorKind::IoError, "write to " + path.string() + " failed");
}

}  // namespace minkspec
