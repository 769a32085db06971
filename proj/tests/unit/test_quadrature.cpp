#include <doctest.h>

#include <cmath>

#include "fgsg/errors.hpp"
#include "fgsg/quadrature.hpp"

using namespace fgsg;

TEST_CASE("adaptive quadrature: smooth and peaked integrands") {
  auto f = [](double t, std::span<Complex> out) {
    out[0] = std::exp(t);
    out[1] = 1.0 / (1e-4 + (t - 0.3) * (t - 0.3));
  };
  const auto r = integrate_adaptive(f, 2, 0.0, 1.0);
  CHECK(std::abs(r.value[0] - (std::exp(1.0) - 1.0)) < 1e-13);
  const double exact = 100.0 * (std::atan(0.7 / 1e-2) + std::atan(0.3 / 1e-2));
  CHECK(std::abs(r.value[1] - exact) < 1e-10 * exact);
}

TEST_CASE("adaptive quadrature: budget exhaustion is reported") {
  auto f = [](double t, std::span<Complex> out) { out[0] = 1.0 / std::sqrt(std::abs(t - 0.5)); };
  QuadratureTolerance tol;
  tol.max_intervals = 8;
  CHECK_THROWS_AS(integrate_adaptive(f, 1, 0.0, 1.0, tol), Error);
  auto g = [](double t, std::span<Complex> out) { out[0] = 1.0 / std::sqrt(std::abs(t - 0.3)); };
  CHECK_THROWS_AS(integrate_adaptive(g, 1, 0.0, 1.0, tol), Error);
}
