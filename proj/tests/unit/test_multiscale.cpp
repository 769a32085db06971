#include <doctest.h>

#include <cmath>

#include "fgsg/errors.hpp"
#include "fgsg/multiscale.hpp"
#include "support.hpp"

using namespace fgsg;

TEST_CASE("scaled basis at k = 1 reproduces the base basis") {
  const auto& p = fixtures::prepared("G2M1");
  const auto scaled = scaled_cycle_basis(p.curve, p.basis, 1.0);
  const auto d = period_matrix(p.curve, scaled);
  CHECK((d.B - p.periods.B).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(scaled.alpha == p.basis.alpha);
  CHECK(scaled.beta == p.basis.beta);
}

TEST_CASE("winding data does not depend on k") {
  const auto& p = fixtures::prepared("G3");
  for (double k : {2.0, 8.0, 64.0}) {
    CAPTURE(k);
    const auto curve = deformed_curve(p.curve, k);
    const auto scaled = scaled_cycle_basis(p.curve, p.basis, k);
    CycleBasis fresh = scaled;
    fill_winding_data(curve, fresh);
    CHECK(fresh.alpha == p.basis.alpha);
    CHECK(fresh.beta == p.basis.beta);
    CHECK(fresh.alpha_odd == p.basis.alpha_odd);
    CHECK(fresh.beta_odd == p.basis.beta_odd);
  }
}

TEST_CASE("block limit for two real pairs") {
  const auto& p = fixtures::prepared("G2M2");
  const CMatrix binf = b_infinity(p.curve);
  REQUIRE(binf.rows() == 2);
  // components x(x+1)(x+2) and x(x+3)(x+4): tau = i K(k')/K(k) with k^2 = E1/E2
  CHECK(std::abs(binf(0, 0) - Complex(0.0, 1.0)) < 1e-10);
  CHECK(std::abs(binf(1, 1) - Complex(0.0, 0.781701)) < 1e-6);
  CHECK(std::abs(binf(0, 1)) == 0.0);
}

TEST_CASE("genus one sweep is flat") {
  const auto& p = fixtures::prepared("G1R");
  const auto sweep = convergence_sweep(p.curve, {1.0, 10.0, 100.0});
  for (const auto& e : sweep.entries) CHECK(e.deviation < 1e-8);
}

TEST_CASE("sweeps converge monotonically") {
  for (const std::string name : {"G2M1", "G3"}) {
    CAPTURE(name);
    const auto& p = fixtures::prepared(name);
    const auto sweep = convergence_sweep(p.curve, {1.0, 4.0, 16.0, 64.0, 256.0, 1000.0});
    REQUIRE(sweep.entries.size() == 6);
    for (std::size_t i = 1; i < sweep.entries.size(); ++i)
      CHECK(sweep.entries[i].deviation < sweep.entries[i - 1].deviation);
    CHECK(sweep.entries.back().deviation < 0.05);
    CHECK_NOTHROW(require_monotone(sweep));
  }
}

TEST_CASE("non-monotone tables are rejected") {
  MultiscaleSweep sweep;
  for (double d : {0.5, 0.2, 0.3}) {
    SweepEntry e;
    e.deviation = d;
    sweep.entries.push_back(e);
  }
  try {
    require_monotone(sweep);
    FAIL("expected NonMonotoneConvergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonMonotoneConvergence);
  }
}
