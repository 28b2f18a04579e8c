#pragma once

#include <span>

#include "weylcorr/states.hpp"

namespace weylcorr {

// Fringe intensity at screen coordinate x for a phase-factor expectation w:
//   I(x) = 1 + |w| cos(x + arg w).
// Requires |w| <= 1 + 1e-12 (w is an expectation of a unitary).
double intensity(double x, Complex w);

// Fringe contrast (I_max - I_min)/(I_max + I_min) = |w|.
double visibility(Complex w);

// Fringe shift arg(w) in (-pi, pi]; 0 by convention when w == 0
// (zero visibility carries no phase information).
double phase_shift(Complex w);
bool phase_defined(Complex w);

// SQUID-ring readout: I = I_cr * Im(w). critical_current must be positive.
double squid_current(Complex w, double critical_current);

// Least-squares cosine fit of intensity samples; recovers the complex w
// that produced them (basis 1, cos x, sin x).
Complex fit_fringe(std::span<const double> x, std::span<const double> intensity);

}  // namespace weylcorr
