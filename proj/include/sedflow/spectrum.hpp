#pragma once

#include <stdexcept>
#include <vector>

namespace sedflow {

/// Wavenumbers and decay rates of the fast vertical modes about the
/// flat-bed shear-flow equilibrium.
struct SpectrumResult {
  std::vector<double> ks;
  std::vector<double> lambdas;
  double nu = 0.0;

  /// nu pi^2: every fast mode decays at least this fast while the slow
  /// modes have zero eigenvalue.
  double gap() const;
};

class BracketError : public std::runtime_error {
 public:
  BracketError(double lo, double hi, const char* relation);
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// Eddy viscosity of the equilibrium shear flow: c_t h q sqrt(2) / (1 + 2 c_u).
double equilibrium_eddy_viscosity(double c_t, double h, double q, double c_u);

/// Residuals of the two characteristic relations, tan k - rhs(k).
double velocity_characteristic(double k, double c_u);
double concentration_characteristic(double k, double h);

/// First n roots k > pi of tan k = k / (1 + c_u (1 + c_u) k^2), one per
/// branch (m pi, (m + 1/2) pi), m = 1..n.
std::vector<double> velocity_wavenumbers(double c_u, int n);

/// First n roots k > pi of tan k = h k, one per branch (m pi, (m + 1/2) pi).
std::vector<double> concentration_wavenumbers(double h, int n);

/// lambda_i = -nu k_i^2.
std::vector<double> decay_rates(double nu, const std::vector<double>& ks);

}  // namespace sedflow
