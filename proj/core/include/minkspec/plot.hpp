#pragma once

#include <string>
#include <utility>
#include <vector>

#include <minkspec/oracle.hpp>
#include <minkspec/sweep.hpp>

namespace minkspec {

struct PlotSeries {
  std::string label;
  /// A non-finite y breaks the polyline (used at poles).
  std::vector<std::pair<double, double>> points;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  std::vector<double> vertical_lines;  ///< drawn dashed, e.g. poles
  /// Optional clamp of the y range; zero width means automatic.
  double y_min = 0.0;
  double y_max = 0.0;
};

/// Self-contained SVG: axes, tick labels, polylines, dashed verticals, legend.
std::string render_svg(const PlotSpec& spec);

/// Real parts of the branches against a, poles as dashed lines at mu_j on the
/// eigenvalue axis (x = Re lambda, y = a).
PlotSpec sweep_plot(const std::vector<TrajectoryPoint>& points, const SpectralForm& form);
PlotSpec nu_plot(const std::vector<NuCurveSample>& samples, const std::vector<double>& poles);
/// g(lambda) and h(lambda) = lambda - a on [x_min, x_max].
PlotSpec secular_plot(const SpectralForm& form, double x_min, double x_max, int samples = 800);

}  // namespace minkspec
