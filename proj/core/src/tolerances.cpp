#include <minkspec/tolerances.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include <minkspec/error.hpp>

namespace minkspec {

double Tolerances::herm(double j_max_abs) const { return 1e-10 * scale * std::max(1.0, j_max_abs); }

double Tolerances::obs(double u_norm_sq) const { return 1e-12 * scale * std::max(1.0, u_norm_sq); }

double Tolerances::gap(double pole_spread) const { return 1e-10 * scale * std::max(1.0, pole_spread); }

double Tolerances::rank(double j_max_abs, double u_norm) const {
  return 1e-10 * scale * std::max({1.0, j_max_abs, u_norm});
}

double Tolerances::tangency(double shift, double pole_spread) const {
  return 1e-8 * scale * (1.0 + std::abs(shift) + pole_spread);
}

double Tolerances::collapse(double pole_spread) const { return 1e-6 * scale * std::max(1.0, pole_spread); }

double Tolerances::sign_margin() const { return 1e-9 * scale; }

double Tolerances::probe() const { return 1e-8 * scale; }

Tolerances Tolerances::from_environment() {
  Tolerances tol;
  const char* raw = std::getenv("MINKSPEC_TOL");
  if (raw == nullptr || *raw == '\0') return tol;
  char* end = nullptr;
  const double value = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !std::isfinite(value) || value <= 0.0) {
    fail(ErrorKind::InvalidArgument, std::string("MINKSPEC_TOL must be a positive number, got '") + raw + "'");
  }
  tol.scale = value;
  return tol;
}

}  // namespace minkspec
