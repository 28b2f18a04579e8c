#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "weylcorr/special_functions.hpp"

using weylcorr::laguerre;
using weylcorr::log_factorial;

namespace {

// Independent oracle: direct finite-series evaluation
//   L_n^a(x) = sum_k (-1)^k C(n+a, n-k) x^k / k!
// with integer binomials (n + a >= 0 in every query here).
double binomial(int top, int k) {
  if (k < 0 || k > top) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) {
    out *= static_cast<double>(top - k + i) / i;
  }
  return out;
}

double laguerre_series(int n, int alpha, double x) {
  double sum = 0.0;
  double x_pow = 1.0;
  double k_fact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      x_pow *= x;
      k_fact *= k;
    }
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binomial(n + alpha, n - k) * x_pow / k_fact;
  }
  return sum;
}

long long binomial_exact(int top, int k) {
  if (k < 0 || k > top) return 0;
  long long out = 1;
  for (int i = 1; i <= k; ++i) {
    out = out * (top - k + i) / i;
  }
  return out;
}

}  // namespace

TEST_CASE("log_factorial on known values") {
  CHECK(log_factorial(0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_factorial(1) == doctest::Approx(0.0).epsilon(1e-15));
  // 5! = 120, derived by direct product
  CHECK(std::abs(log_factorial(5) - std::log(120.0)) < 1e-13);
  CHECK(std::abs(log_factorial(5) - 4.7874917427820458) < 1e-12);
  CHECK_THROWS_AS(log_factorial(-1), std::invalid_argument);
}

TEST_CASE("log_factorial matches cumulative direct products") {
  double direct = 0.0;
  for (int n = 1; n <= 30; ++n) {
    direct += std::log(static_cast<double>(n));
    CHECK(std::abs(log_factorial(n) - direct) <
          1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("laguerre closed forms for n <= 1") {
  CHECK(laguerre(0, 3, 2.5) == 1.0);
  CHECK(laguerre(0, -2, 0.0) == 1.0);
  const double x = 0.045862666;
  CHECK(laguerre(1, 0, x) == doctest::Approx(0.954137334).epsilon(1e-12));
  CHECK(laguerre(1, 0, x) == 1.0 - x);
  CHECK(laguerre(1, -1, x) == doctest::Approx(-0.045862666).epsilon(1e-12));
  CHECK(laguerre(1, -1, x) == -x);
  CHECK(laguerre(1, 2, 0.25) == 1.0 + 2.0 - 0.25);
}

TEST_CASE("laguerre degree two against the direct series") {
  // series for (n=2, a=1, x=0.5): 3 - 3x + x^2/2 = 1.625
  CHECK(laguerre_series(2, 1, 0.5) == doctest::Approx(1.625).epsilon(1e-15));
  CHECK(laguerre(2, 1, 0.5) == doctest::Approx(1.625).epsilon(1e-12));
}

TEST_CASE("laguerre rejects bad queries") {
  CHECK_THROWS_AS(laguerre(-1, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(laguerre(2, 0, -0.5), std::invalid_argument);
}

TEST_CASE("recurrence agrees with the direct series over the working range") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> xs(0.0, 4.0);
  for (int n = 0; n <= 30; ++n) {
    for (int alpha = -n; alpha <= 10; ++alpha) {
      const double x = xs(rng);
      const double rec = laguerre(n, alpha, x);
      const double ser = laguerre_series(n, alpha, x);
      CHECK(std::abs(rec - ser) <= 1e-10 * std::max(1.0, std::abs(ser)));
    }
  }
}

TEST_CASE("L_n^a(0) equals binomial(n+a, n) for a >= 0") {
  for (int n = 0; n <= 30; ++n) {
    for (int alpha = 0; alpha <= 10; ++alpha) {
      const auto expected = static_cast<double>(binomial_exact(n + alpha, n));
      CHECK(std::abs(laguerre(n, alpha, 0.0) - expected) <=
            1e-10 * std::max(1.0, expected));
    }
  }
}
