#include "weylcorr/weyl.hpp"

#include <cmath>
#include <stdexcept>

#include "weylcorr/special_functions.hpp"

namespace weylcorr {

namespace {

Complex integer_power(Complex z, int k) {
  Complex out{1.0, 0.0};
  for (int i = 0; i < k; ++i) out *= z;
  return out;
}

Complex mode_element(const ProductKet& bra, const ProductKet& ket,
                     std::size_t mode, Complex lambda) {
  if (ket.kind() == ModeKind::fock) {
    return displacement_element_fock(bra.occupation(mode), ket.occupation(mode),
                                     lambda);
  }
  return displacement_element_coherent(bra.amplitude(mode), ket.amplitude(mode),
                                       lambda);
}

}  // namespace

DriveAt drive_lambda(const DriveParams& drive, double t) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("drive_lambda: t must be finite");
  }
  const double q = drive.q();
  DriveAt at;
  at.lambdas.reserve(drive.omegas.size());
  for (double omega : drive.omegas) {
    at.lambdas.push_back(Complex{0.0, q} * std::exp(Complex{0.0, omega * t}));
  }
  return at;
}

Complex displacement_element_fock(int m, int n, Complex z) {
  if (m < 0 || n < 0) {
    throw std::invalid_argument("displacement_element_fock: indices must be >= 0");
  }
  if (m < n) {
    return std::conj(displacement_element_fock(n, m, -z));
  }
  const double x = std::norm(z);
  const double log_ratio = 0.5 * (log_factorial(n) - log_factorial(m));
  return std::exp(log_ratio - 0.5 * x) * integer_power(z, m - n) *
         laguerre(n, m - n, x);
}

Complex displacement_element_coherent(Complex a, Complex b, Complex z) {
  const Complex w = -a + z + b;
  const Complex chi = 0.5 * (-a * std::conj(z) + std::conj(a) * z -
                             a * std::conj(b) + std::conj(a) * b -
                             std::conj(z) * b + z * std::conj(b));
  return std::exp(-0.5 * std::norm(w) + chi);
}

Complex weyl(const OperatorEnsemble& rho, const DriveAt& at) {
  if (at.lambdas.size() != rho.mode_count()) {
    throw std::invalid_argument("weyl: drive length must match mode count");
  }
  Complex total{0.0, 0.0};
  for (const auto& term : rho.terms()) {
    Complex factor{1.0, 0.0};
    for (std::size_t m = 0; m < rho.mode_count(); ++m) {
      factor *= mode_element(term.bra, term.ket, m, at.lambdas[m]);
      if (factor == Complex{0.0, 0.0}) break;
    }
    total += term.weight * factor;
  }
  return total;
}

CorrelatorValue correlator(const OperatorEnsemble& rho, const DriveAt& at) {
  CorrelatorValue out;
  out.joint = weyl(rho, at);
  out.marginals.reserve(at.lambdas.size());
  Complex product{1.0, 0.0};
  for (std::size_t m = 0; m < at.lambdas.size(); ++m) {
    DriveAt single;
    single.lambdas.assign(at.lambdas.size(), Complex{0.0, 0.0});
    single.lambdas[m] = at.lambdas[m];
    const Complex w = weyl(rho, single);
    out.marginals.push_back(w);
    product *= w;
  }
  out.c = out.joint - product;
  return out;
}

NumberCorrelators closed_form_number_correlators(int n1, int n2, double q,
                                                 double omega_t) {
  if (n1 < 0 || n2 < 0) {
    throw std::invalid_argument("closed_form_number_correlators: occupations must be >= 0");
  }
  const double x = q * q;
  const double l1 = laguerre(n1, 0, x);
  const double l2 = laguerre(n2, 0, x);
  const double e = std::exp(-x);
  NumberCorrelators out;
  out.c_sep = e * l1 * l2 - 0.25 * e * (l1 + l2) * (l1 + l2);
  out.c_ent = out.c_sep + e * laguerre(n1, n2 - n1, x) *
                              laguerre(n2, n1 - n2, x) * std::cos(omega_t);
  return out;
}

namespace {

double beat_frequency_impl(std::span<const double> n,
                           std::span<const double> w) {
  if (n.size() != w.size()) {
    throw std::invalid_argument("beat_frequency: length mismatch");
  }
  if (n.size() == 2) {
    return (n[0] - n[1]) * (w[0] - w[1]);
  }
  if (n.size() == 3) {
    return n[0] * (w[2] - w[0]) + n[1] * (w[0] - w[1]) + n[2] * (w[1] - w[2]);
  }
  throw std::invalid_argument("beat_frequency: needs 2 or 3 modes");
}

}  // namespace

double beat_frequency(std::span<const int> numbers,
                      std::span<const double> omegas) {
  std::vector<double> n(numbers.begin(), numbers.end());
  return beat_frequency_impl(n, omegas);
}

double beat_frequency(std::span<const double> numbers,
                      std::span<const double> omegas) {
  return beat_frequency_impl(numbers, omegas);
}

}  // namespace weylcorr
