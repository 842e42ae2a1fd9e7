#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <minkspec/analysis.hpp>
#include <minkspec/oracle.hpp>
#include <minkspec/sweep.hpp>

namespace minkspec {

/// Parses a problem file. Matrix form {"J", "u", "a"} with complex entries as
/// [re, im]; spectral form {"mu", "d", "a"}. Unknown keys and mixed forms are
/// rejected with ParseError; numeric validation raises the model errors.
Problem parse_problem(std::string_view text, const Tolerances& tol = {});
Problem load_problem(const std::filesystem::path& path, const Tolerances& tol = {});

/// JSON text that parses back to an identical problem.
std::string serialize_problem(const Problem& problem);

std::string analysis_to_json(const Analysis& analysis);
std::string critical_values_to_json(const std::vector<CriticalValue>& values);
std::string checks_to_json(const std::vector<CheckResult>& checks);
std::string error_to_json(const std::exception& error);

/// %.17g, the format every CSV column uses.
std::string format_number(double x);

/// Columns: a,branch_index,re,im,case_label
void write_sweep_csv(std::ostream& out, const std::vector<TrajectoryPoint>& points);
/// Columns: lambda,nu_1..nu_n with curve c taking nus[matching[c]].
void write_nu_csv(std::ostream& out, const std::vector<NuCurveSample>& samples);

/// Writes text to a file; throws IoError.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace minkspec
