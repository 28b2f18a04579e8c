#pragma once

namespace weylcorr {

// ln(n!), exact to double precision; factorial ratios such as sqrt(n!/m!)
// must be formed in log space and exponentiated.
double log_factorial(int n);

// Generalized Laguerre polynomial L_n^alpha(x) for integer order alpha.
// Evaluated by upward recurrence in n at fixed alpha:
//   (k+1) L_{k+1}^a = (2k+1+a-x) L_k^a - (k+a) L_{k-1}^a,
// seeded with L_0^a = 1, L_1^a = 1 + a - x. Stable for the small arguments
// used here (x <= ~4, n <= ~40). Negative alpha is supported; callers are
// expected to keep n + alpha >= 0.
double laguerre(int n, int alpha, double x);

}  // namespace weylcorr
