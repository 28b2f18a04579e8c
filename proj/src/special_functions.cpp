#include "weylcorr/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace weylcorr {

double log_factorial(int n) {
  if (n < 0) {
    throw std::invalid_argument("log_factorial: n must be >= 0");
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double laguerre(int n, int alpha, double x) {
  if (n < 0) {
    throw std::invalid_argument("laguerre: degree n must be >= 0");
  }
  if (x < 0.0) {
    throw std::invalid_argument("laguerre: argument x must be >= 0");
  }
  const double a = static_cast<double>(alpha);
  if (n == 0) {
    return 1.0;
  }
  double prev = 1.0;            // L_0^a
  double curr = 1.0 + a - x;    // L_1^a
  for (int k = 1; k < n; ++k) {
    const double next =
        ((2.0 * k + 1.0 + a - x) * curr - (k + a) * prev) / (k + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

}  // namespace weylcorr
