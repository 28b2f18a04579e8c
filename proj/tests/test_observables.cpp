#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "weylcorr/observables.hpp"
#include "weylcorr/states.hpp"
#include "weylcorr/weyl.hpp"

using namespace weylcorr;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("intensity basics") {
  for (double x : {-2.0, 0.0, 0.7, 3.1}) {
    CHECK(intensity(x, {0.0, 0.0}) == 1.0);
  }
  CHECK(intensity(0.0, {1.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-15));
  const Complex w = 0.5 * std::exp(Complex{0.0, kPi / 3.0});
  CHECK(intensity(-kPi / 3.0, w) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK_THROWS(intensity(0.0, {1.5, 0.0}));
}

TEST_CASE("intensity extrema are 1 +- |w|") {
  for (const Complex w : {Complex{0.3, 0.4}, Complex{-0.2, 0.85},
                          Complex{0.954918, 0.0}, Complex{0.0, -0.6}}) {
    const double phi = std::arg(w);
    CHECK(std::abs(intensity(-phi, w) - (1.0 + std::abs(w))) < 1e-12);
    CHECK(std::abs(intensity(kPi - phi, w) - (1.0 - std::abs(w))) < 1e-12);
  }
}

TEST_CASE("visibility and phase") {
  CHECK(visibility({0.7, 0.0}) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(phase_shift({0.7, 0.0}) == 0.0);
  CHECK(phase_shift({0.0, 0.0}) == 0.0);
  CHECK(!phase_defined({0.0, 0.0}));
  CHECK(phase_defined({1e-300, 0.0}));

  // number-state marginal, the engine value
  StateParams p;
  p.numbers = {1, 0};
  const auto rho = build_state(StateFamily::sep_number2, p);
  DriveParams d;
  d.omegas = {1.2e-4, 1.0e-4};
  const auto value = correlator(rho, drive_lambda(d, 0.0));
  CHECK(std::abs(visibility(value.marginals[0]) - 0.95491812098122075) < 1e-12);
}

TEST_CASE("visibility recovered from a fine intensity scan") {
  const Complex w{0.42, -0.31};
  const int n = 100000;
  double imax = -1e300, imin = 1e300;
  for (int k = 0; k < n; ++k) {
    const double x = 2.0 * kPi * k / n;
    const double val = intensity(x, w);
    imax = std::max(imax, val);
    imin = std::min(imin, val);
  }
  CHECK(std::abs((imax - imin) / (imax + imin) - std::abs(w)) < 1e-9);
}

TEST_CASE("least-squares fringe fit recovers the weyl value") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> xs(0.0, 2.0 * kPi);
  for (const Complex w : {Complex{0.93, 0.1}, Complex{-0.4, 0.2},
                          Complex{1e-5, -2e-5}, Complex{0.0, 0.77}}) {
    std::vector<double> x(1000), samples(1000);
    for (std::size_t k = 0; k < x.size(); ++k) {
      x[k] = xs(rng);
      samples[k] = intensity(x[k], w);
    }
    const Complex recovered = fit_fringe(x, samples);
    CHECK(std::abs(recovered - w) < 1e-9);
  }
  CHECK_THROWS(fit_fringe(std::vector<double>{1.0}, std::vector<double>{1.0}));
}

TEST_CASE("squid current reads the imaginary part") {
  CHECK(squid_current({0.83, 0.0}, 3.0) == 0.0);
  CHECK(squid_current({0.0, 1.0}, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS(squid_current({0.1, 0.1}, 0.0));
  CHECK_THROWS(squid_current({0.1, 0.1}, -1.0));

  // vacuum marginal at t = 0: w = exp(-q^2/2) is real, so no current
  StateParams p;
  p.ket = ProductKet::coherent({{0.0, 0.0}});
  const auto vacuum = build_state(StateFamily::factorizable, p);
  DriveParams d;
  d.omegas = {1.0e-4};
  const Complex w = weyl(vacuum, drive_lambda(d, 0.0));
  CHECK(std::abs(w - Complex{std::exp(-0.5 * d.q() * d.q()), 0.0}) < 1e-15);
  CHECK(std::abs(squid_current(w, 1.0)) < 1e-15);
}
