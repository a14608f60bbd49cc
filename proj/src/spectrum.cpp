#include "sedflow/spectrum.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace sedflow {

namespace {

constexpr double pole_margin = 1e-9;

// Bisection on [lo, hi] where f(lo) < 0 < f(hi). Runs to interval collapse
// in double precision.
template <class F>
double bisect(F f, double lo, double hi, const char* relation) {
  double flo = f(lo);
  double fhi = f(hi);
  if (!(flo < 0.0 && fhi > 0.0)) throw BracketError(lo, hi, relation);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if (fmid < 0.0) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }
  return std::abs(flo) < std::abs(fhi) ? lo : hi;
}

template <class F>
std::vector<double> branch_roots(F f, int n, const char* relation) {
  if (n < 1) throw std::invalid_argument("wavenumbers: n must be >= 1");
  std::vector<double> ks;
  ks.reserve(static_cast<std::size_t>(n));
  for (int m = 1; m <= n; ++m) {
    // tan k >= 0 on (m pi, (m + 1/2) pi); both relations have a positive
    // right-hand side there, so the crossing lies on this half branch.
    const double lo = m * std::numbers::pi;
    const double hi = (m + 0.5) * std::numbers::pi - pole_margin;
    const double k = bisect(f, lo, hi, relation);
    // Residual scaled by the slope of tan, i.e. the root is located to 1e-12.
    const double slope = 1.0 + std::tan(k) * std::tan(k);
    if (!(std::abs(f(k)) < 1e-12 * slope))
      throw std::runtime_error(
          fmt::format("{}: root {:.17g} has residual {:.3g}", relation, k, f(k)));
    ks.push_back(k);
  }
  return ks;
}

}  // namespace

BracketError::BracketError(double lo, double hi, const char* relation)
    : std::runtime_error(fmt::format("no sign change of {} on [{:.17g}, {:.17g}]",
                                     relation, lo, hi)),
      lo_(lo),
      hi_(hi) {}

double SpectrumResult::gap() const {
  return nu * std::numbers::pi * std::numbers::pi;
}

double equilibrium_eddy_viscosity(double c_t, double h, double q, double c_u) {
  if (!(c_t > 0.0 && h > 0.0 && q > 0.0 && c_u > 0.0))
    throw std::domain_error("equilibrium_eddy_viscosity: inputs must be positive");
  return c_t * h * q * std::numbers::sqrt2 / (1.0 + 2.0 * c_u);
}

double velocity_characteristic(double k, double c_u) {
  return std::tan(k) - k / (1.0 + c_u * (1.0 + c_u) * k * k);
}

double concentration_characteristic(double k, double h) {
  return std::tan(k) - h * k;
}

std::vector<double> velocity_wavenumbers(double c_u, int n) {
  if (!(c_u > 0.0)) throw std::domain_error("velocity_wavenumbers: c_u must be positive");
  return branch_roots([c_u](double k) { return velocity_characteristic(k, c_u); }, n,
                      "tan k - k/(1 + c_u(1 + c_u)k^2)");
}

std::vector<double> concentration_wavenumbers(double h, int n) {
  if (!(h > 0.0)) throw std::domain_error("concentration_wavenumbers: h must be positive");
  return branch_roots([h](double k) { return concentration_characteristic(k, h); }, n,
                      "tan k - h k");
}

std::vector<double> decay_rates(double nu, const std::vector<double>& ks) {
  if (!(nu > 0.0)) throw std::domain_error("decay_rates: nu must be positive");
  std::vector<double> lambdas;
  lambdas.reserve(ks.size());
  for (double k : ks) lambdas.push_back(-nu * k * k);
  return lambdas;
}

}  // namespace sedflow
