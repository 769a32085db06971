#include <doctest.h>

#include <cmath>

#include "fgsg/errors.hpp"
#include "fgsg/topological_charge.hpp"
#include "support.hpp"

using namespace fgsg;

TEST_CASE("winding of simple loops") {
  CHECK(std::abs(winding_of([](double T) { return std::polar(1.0, 2 * kPi * 3 * T); }).raw - 3.0) < 1e-12);
  CHECK(std::abs(winding_of([](double T) { return Complex(2.0) + std::polar(1.0, -2 * kPi * T); }).raw) < 1e-12);
  CHECK(std::abs(winding_of([](double T) { return std::polar(1.0, -2 * kPi * 40 * T); }).raw + 40.0) < 1e-9);
}

TEST_CASE("theorem charges") {
  CHECK(theorem_charges({1}, 1, 1) == std::vector<int>{1});
  CHECK(theorem_charges({-1}, 1, 2) == std::vector<int>{-1, 0});
  CHECK(theorem_charges({1, 1}, 2, 2) == std::vector<int>{1, -1});
  CHECK(theorem_charges({-1, 1}, 2, 3) == std::vector<int>{-1, -1, 0});
  CHECK(theorem_charges({}, 0, 1) == std::vector<int>{0});
}

TEST_CASE("charges agree with the theorem for every type") {
  for (const auto& name : fixtures::names()) {
    CAPTURE(name);
    const auto& p = fixtures::prepared(name);
    const int g = p.ctx->genus(), m = p.ctx->real_pairs();
    for (const auto& s : all_types(m)) {
      const auto tp = make_torus_point(g, m, s, RVector::Constant(g, 0.31));
      const auto r = charge_report(*p.ctx, tp);
      CHECK(r.n == theorem_charges(s, m, g));
      for (double d : r.deviations) CHECK(d < 1e-3);
      for (double d : r.deviations_reduced) CHECK(d < 1e-3);
      CHECK(std::abs(r.density_formula - charge_density(p.periods, r.n)) < 1e-15);
    }
  }
}

TEST_CASE("charges do not depend on x0 and density flips with s") {
  const auto& p = fixtures::prepared("G2M2");
  const auto a = charge_report(*p.ctx, make_torus_point(2, 2, {1, -1}, RVector::Zero(2)));
  RVector x0(2);
  x0 << 0.77, 0.05;
  const auto b = charge_report(*p.ctx, make_torus_point(2, 2, {1, -1}, x0));
  CHECK(a.n == b.n);
  const auto c = charge_report(*p.ctx, make_torus_point(2, 2, {-1, 1}, x0));
  CHECK(std::abs(c.density_formula + b.density_formula) < 1e-14);
}

TEST_CASE("elliptic tilde charge") {
  const auto& p = fixtures::prepared("G1R");
  for (int s1 : {1, -1}) {
    const auto v = tilde_charge_elliptic(*p.ctx, s1);
    CHECK(v.n == -s1);
    CHECK(v.deviation < 1e-3);
  }
  CHECK_THROWS_AS(tilde_charge_elliptic(*fixtures::prepared("G2M1").ctx, 1), Error);
}

TEST_CASE("empirical density approaches the formula") {
  const auto& p = fixtures::prepared("G1R");
  const auto tp = make_torus_point(1, 1, {1}, RVector::Constant(1, 0.4));
  const Solution sol(*p.ctx, tp);
  const double window = 200.0;
  const double rho = charge_density(p.periods, theorem_charges({1}, 1, 1));
  CHECK(std::abs(empirical_density(sol, window) - rho) <= 1.0 / window);
}
