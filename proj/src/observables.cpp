#include "weylcorr/observables.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace weylcorr {

double intensity(double x, Complex w) {
  const double mag = std::abs(w);
  if (mag > 1.0 + 1e-12) {
    throw std::invalid_argument("intensity: |w| must be <= 1 + 1e-12");
  }
  return 1.0 + mag * std::cos(x + std::arg(w));
}

double visibility(Complex w) { return std::abs(w); }

bool phase_defined(Complex w) { return w != Complex{0.0, 0.0}; }

double phase_shift(Complex w) {
  if (!phase_defined(w)) return 0.0;
  return std::arg(w);
}

double squid_current(Complex w, double critical_current) {
  if (!(critical_current > 0.0)) {
    throw std::invalid_argument("squid_current: critical current must be positive");
  }
  return critical_current * w.imag();
}

Complex fit_fringe(std::span<const double> x, std::span<const double> intensity) {
  if (x.size() != intensity.size() || x.size() < 3) {
    throw std::invalid_argument("fit_fringe: need >= 3 matching samples");
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::cos(x[static_cast<std::size_t>(i)]);
    design(i, 2) = std::sin(x[static_cast<std::size_t>(i)]);
    rhs(i) = intensity[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector3d coeff =
      design.colPivHouseholderQr().solve(rhs);
  // I = 1 + |w| cos(phi) cos(x) - |w| sin(phi) sin(x)
  return Complex{coeff(1), -coeff(2)};
}

}  // namespace weylcorr
