#pragma once

#include <span>
#include <vector>

#include "weylcorr/states.hpp"

namespace weylcorr {

// Per-mode displacement arguments at one instant.
struct DriveAt {
  std::vector<Complex> lambdas;
};

// lambda_i(t) = i q exp(i omega_i t), one entry per mode.
DriveAt drive_lambda(const DriveParams& drive, double t);

// <m|D(z)|n> in the Fock basis:
//   sqrt(n!/m!) z^(m-n) exp(-|z|^2/2) L_n^(m-n)(|z|^2)   for m >= n,
// and <m|D(z)|n> = conj(<n|D(-z)|m>) otherwise, so the Laguerre order
// stays nonnegative.
Complex displacement_element_fock(int m, int n, Complex z);

// <A|D(z)|B> in the coherent basis:
//   <0|D(-A+z+B)|0> exp(chi),
//   chi = (-A z* + A* z - A B* + A* B - z* B + z B*) / 2.
Complex displacement_element_coherent(Complex a, Complex b, Complex z);

// W(lambda) = Tr[rho D(lambda_1) ... D(lambda_k)] over the dyad sum.
// A marginal is the same call with the other lambdas set to zero.
Complex weyl(const OperatorEnsemble& rho, const DriveAt& at);

struct CorrelatorValue {
  Complex joint;                   // W over all modes
  std::vector<Complex> marginals;  // per-mode W
  Complex c;                       // joint - product of marginals
};

CorrelatorValue correlator(const OperatorEnsemble& rho, const DriveAt& at);

// Closed forms for the two-mode number-state mixtures/superpositions:
//   c_sep = e^{-q^2} L_N1 L_N2 - e^{-q^2} [L_N1 + L_N2]^2 / 4
//   c_ent = c_sep + e^{-q^2} L_N1^(N2-N1) L_N2^(N1-N2) cos(omega_t)
// (all Laguerre arguments q^2; omega_t is the accumulated beat phase).
struct NumberCorrelators {
  double c_sep;
  double c_ent;
};

NumberCorrelators closed_form_number_correlators(int n1, int n2, double q,
                                                 double omega_t);

// Beat frequency of the entangled-state oscillation:
//   2 modes: (N1 - N2)(omega_1 - omega_2)
//   3 modes: N1(omega_3 - omega_1) + N2(omega_1 - omega_2) + N3(omega_2 - omega_3)
double beat_frequency(std::span<const int> numbers,
                      std::span<const double> omegas);
// Same formulas over effective (possibly fractional) photon numbers.
double beat_frequency(std::span<const double> numbers,
                      std::span<const double> omegas);

}  // namespace weylcorr
