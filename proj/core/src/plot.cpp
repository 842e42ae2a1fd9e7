#include <minkspec/plot.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <minkspec/secular.hpp>

namespace minkspec {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 70, kRight = 160, kTop = 40, kBottom = 50;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) lo = 0, hi = 1;
    if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
  }
};

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  Range xr, yr;
  for (const auto& s : spec.series)
    for (const auto& [x, y] : s.points) {
      xr.add(x);
      yr.add(y);
    }
  for (double v : spec.vertical_lines) xr.add(v);
  xr.finish();
  yr.finish();
  if (spec.y_max > spec.y_min) yr.lo = spec.y_min, yr.hi = spec.y_max;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<defs><clipPath id=\"plot\"><rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw
      << "\" height=\"" << ph << "\"/></clipPath></defs>\n";
  svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(spec.title) << "</text>\n";

  // Axes box with five ticks per axis.
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xr.lo + (xr.hi - xr.lo) * k / 4.0, yv = yr.lo + (yr.hi - yr.lo) * k / 4.0;
    svg << "<line x1=\"" << px(xv) << "\" y1=\"" << kTop + ph << "\" x2=\"" << px(xv) << "\" y2=\"" << kTop + ph + 5
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << px(xv) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">" << num(xv)
        << "</text>\n";
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << kLeft << "\" y2=\"" << py(yv)
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << num(yv)
        << "</text>\n";
  }
  if (yr.lo < 0 && yr.hi > 0)
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << py(0) << "\" x2=\"" << kLeft + pw << "\" y2=\"" << py(0)
        << "\" stroke=\"#999\"/>\n";
  svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">"
      << escape(spec.x_label) << "</text>\n";
  svg << "<text transform=\"translate(18," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(spec.y_label) << "</text>\n";

  for (double v : spec.vertical_lines)
    svg << "<line x1=\"" << px(v) << "\" y1=\"" << kTop << "\" x2=\"" << px(v) << "\" y2=\"" << kTop + ph
        << "\" stroke=\"#555\" stroke-dasharray=\"5,4\"/>\n";

  svg << "<g clip-path=\"url(#plot)\" fill=\"none\" stroke-width=\"1.5\">\n";
  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    std::string run;
    auto flush = [&] {
      if (!run.empty()) svg << "<polyline stroke=\"" << color << "\" points=\"" << run << "\"/>\n";
      run.clear();
    };
    for (const auto& [x, y] : spec.series[i].points) {
      if (!std::isfinite(x) || !std::isfinite(y)) {
        flush();
        continue;
      }
      // Keep far-off points finite so renderers do not choke.
      const double yc = std::clamp(y, yr.lo - 10 * (yr.hi - yr.lo), yr.hi + 10 * (yr.hi - yr.lo));
      run += num(px(x)) + "," + num(py(yc)) + " ";
    }
    flush();
  }
  svg << "</g>\n";

  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const double y = kTop + 10 + 18.0 * static_cast<double>(i);
    svg << "<line x1=\"" << kLeft + pw + 12 << "\" y1=\"" << y << "\" x2=\"" << kLeft + pw + 32 << "\" y2=\"" << y
        << "\" stroke=\"" << kPalette[i % std::size(kPalette)] << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kLeft + pw + 38 << "\" y=\"" << y + 4 << "\">" << escape(spec.series[i].label)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

PlotSpec sweep_plot(const std::vector<TrajectoryPoint>& points, const SpectralForm& form) {
  PlotSpec spec;
  spec.title = "Eigenvalue trajectories";
  spec.x_label = "Re lambda";
  spec.y_label = "a";
  spec.vertical_lines = form.poles;
  const std::size_t n = points.empty() ? 0 : points.front().eigenvalues.size();
  for (std::size_t b = 0; b < n; ++b) {
    PlotSeries s{"branch " + std::to_string(b), {}};
    for (const auto& p : points) s.points.emplace_back(p.eigenvalues[b].real(), p.a);
    spec.series.push_back(std::move(s));
  }
  return spec;
}

PlotSpec nu_plot(const std::vector<NuCurveSample>& samples, const std::vector<double>& poles) {
  PlotSpec spec;
  spec.title = "nu-curves of lambda H - H A";
  spec.x_label = "lambda";
  spec.y_label = "nu";
  spec.vertical_lines = poles;
  const std::size_t n = samples.empty() ? 0 : samples.front().nus.size();
  for (std::size_t c = 0; c < n; ++c) {
    PlotSeries s{"nu_" + std::to_string(c + 1), {}};
    for (const auto& smp : samples) s.points.emplace_back(smp.lambda, smp.nus[smp.matching[c]]);
    spec.series.push_back(std::move(s));
  }
  return spec;
}

PlotSpec secular_plot(const SpectralForm& form, double x_min, double x_max, int samples) {
  const SecularFunction s(form);
  PlotSpec spec;
  spec.title = "g(lambda) and h(lambda) = lambda - " + num(form.shift);
  spec.x_label = "lambda";
  spec.y_label = "value";
  spec.vertical_lines = form.poles;
  PlotSeries g{"g", {}}, h{"h", {}};
  const double guard = 1e-3 * std::max(1.0, x_max - x_min);
  for (int k = 0; k < samples; ++k) {
    const double x = x_min + (x_max - x_min) * k / std::max(1, samples - 1);
    const bool near_pole = std::any_of(form.poles.begin(), form.poles.end(),
                                       [&](double mu) { return std::abs(x - mu) < guard; });
    g.points.emplace_back(x, near_pole ? std::numeric_limits<double>::quiet_NaN() : s.g_at(x));
    h.points.emplace_back(x, s.h(x));
  }
  // A polyline must also break where g jumps across a pole between samples.
  std::vector<std::pair<double, double>> broken;
  for (std::size_t k = 0; k < g.points.size(); ++k) {
    if (k > 0) {
      const double lo = g.points[k - 1].first, hi = g.points[k].first;
      if (std::any_of(form.poles.begin(), form.poles.end(), [&](double mu) { return lo < mu && mu < hi; }))
        broken.emplace_back(0.5 * (lo + hi), std::numeric_limits<double>::quiet_NaN());
    }
    broken.push_back(g.points[k]);
  }
  g.points = std::move(broken);
  spec.series = {std::move(g), std::move(h)};
  const double span = x_max - x_min;
  spec.y_min = x_min - form.shift - span;
  spec.y_max = x_max - form.shift + span;
  return spec;
}

}  // namespace minkspec
