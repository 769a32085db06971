#include <doctest.h>

#include <cmath>
#include <random>

#include "fgsg/abelian_data.hpp"
#include "fgsg/errors.hpp"
#include "fgsg/theta_engine.hpp"
#include "support.hpp"

using namespace fgsg;

namespace {

double agm(double a, double b) {
  for (int i = 0; i < 40; ++i) {
    const double m = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = m;
  }
  return a;
}

// tau of y^2 = x (x - E1)(x - E2), 0 > E1 > E2: i K(k') / K(k) with k^2 = E1/E2.
double elliptic_kappa(double E1, double E2) {
  const double k = std::sqrt(E1 / E2);
  const double kp = std::sqrt(1.0 - k * k);
  return agm(1.0, kp) / agm(1.0, k);
}

double chebyshev(double a, double b, const std::function<double(double)>& f, int n = 400) {
  double s = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double x = 0.5 * (a + b) + 0.5 * (b - a) * std::cos((2.0 * k - 1.0) * kPi / (2.0 * n));
    s += f(x);
  }
  return kPi * s / n;
}

}  // namespace

TEST_CASE("period matrix: elliptic curves against the AGM oracle") {
  const auto& g1r = fixtures::prepared("G1R");
  CHECK(std::abs(g1r.periods.B(0, 0).real()) < 1e-12);
  CHECK(std::abs(g1r.periods.B(0, 0).imag() - elliptic_kappa(-1, -2)) < 1e-10);

  for (auto [e1, e2] : {std::pair{-1.0, -3.0}, std::pair{-0.2, -5.0}, std::pair{-3.0, -4.0}}) {
    const auto c = build_curve(std::vector<Complex>{e1, e2});
    const auto d = period_matrix(c, standard_cycle_basis(c));
    CHECK(std::abs(d.B(0, 0) - Complex(0.0, elliptic_kappa(e1, e2))) < 1e-10);
  }
}

TEST_CASE("period matrix: reality structure on every fixture") {
  for (const auto& name : fixtures::names()) {
    CAPTURE(name);
    const auto& p = fixtures::prepared(name);
    const auto& r = p.periods.residuals;
    CHECK(r.symmetry < 1e-8);
    CHECK(r.min_eig_im > 0.0);
    CHECK(r.real_part < 1e-6);
    CHECK(r.imag_uv < 1e-8);
    CHECK(r.half_period < 1e-6);
    CHECK(r.riemann < 1e-6);
    // -conj(B) = B + diag(0, I)
    const int g = p.curve.genus(), m = p.curve.real_pairs();
    CMatrix shift = CMatrix::Zero(g, g);
    for (int j = m; j < g; ++j) shift(j, j) = 1.0;
    CHECK((-p.periods.B.conjugate() - p.periods.B - shift).cwiseAbs().maxCoeff() < 1e-6);
  }
  CHECK(std::abs(fixtures::prepared("G1C").periods.B(0, 0).real() + 0.5) < 1e-6);
}

TEST_CASE("second-kind differentials: zero a-periods and real-interval oracle") {
  const auto& p = fixtures::prepared("G2M1");
  const int g = p.curve.genus();
  // omega_inf = 1/2 lambda^g dlambda/mu - sum_i a_i omega_i
  std::vector<RationalDifferential> forms;
  for (int q = 0; q <= g; ++q) forms.push_back(RationalDifferential::monomial(q));
  const auto tables = period_tables(p.curve, p.basis, forms);
  const CVector a_lead = 0.5 * tables.a.row(g).transpose();
  RationalDifferential omega_inf = RationalDifferential::monomial(g);
  omega_inf.numerator[static_cast<std::size_t>(g)] = 0.5;
  for (int q = 0; q < g; ++q) omega_inf.numerator[static_cast<std::size_t>(q)] = -(a_lead.transpose() * p.periods.c.col(q))(0);
  for (int j = 0; j < g; ++j) CHECK(std::abs(integrate_form(p.curve, omega_inf, p.basis.a[static_cast<std::size_t>(j)])) < 1e-10);

  // g = m = 1: |U| from integrals over the cut [-1, 0] and the gap [-2, -1].
  const auto& e = fixtures::prepared("G1R");
  auto cut = [](int power) {
    return chebyshev(-1.0, 0.0, [power](double x) { return std::pow(x, power) / std::sqrt(x + 2.0); });
  };
  auto gap = [](int power) {
    return chebyshev(-2.0, -1.0, [power](double x) { return std::pow(x, power) / std::sqrt(-x); });
  };
  const double u_oracle = 2.0 * gap(0) / (4.0 * kPi) * std::abs(gap(1) / gap(0) - cut(1) / cut(0));
  CHECK(std::abs(std::abs(e.periods.U(0)) - u_oracle) < 1e-10);
  // lambda -> E1 E2 / lambda exchanges 0 and infinity, so |V| = |U| / sqrt(E1 E2).
  CHECK(std::abs(std::abs(e.periods.V(0)) - u_oracle / std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(e.periods.U(0) - 0.38138) < 1e-5);
}

TEST_CASE("half period and Riemann constants formulas") {
  CMatrix tau(1, 1);
  tau << Complex(0.0, 1.3);
  CHECK(std::abs(riemann_constants(tau, 1)(0) - 0.5 * (1.0 + tau(0, 0))) < 1e-15);
  CHECK(std::abs(half_period(tau, 1)(0) - 0.5 * tau(0, 0)) < 1e-15);
  CHECK(std::abs(half_period(tau, 0)(0) - 0.5) < 1e-15);

  const CMatrix& B = fixtures::prepared("G2M1").periods.B;
  const CVector K = riemann_constants(B, 1);
  const CVector expected = 0.5 * CVector((CVector(2) << 1.0, 2.0).finished()) + 0.5 * B * CVector::Ones(2);
  CHECK((K - expected).norm() < 1e-15);
}

TEST_CASE("Abel map: base point, half period, tau symmetry") {
  for (const auto& name : fixtures::names()) {
    CAPTURE(name);
    const auto& p = fixtures::prepared(name);
    const CVector a0 = abel_map(p.curve, p.periods, {0.0, 0.0});
    CHECK(lattice_distance(p.periods.B, a0 - p.periods.A0) < 1e-6);

    const double far = 1e8;
    const CVector near_inf = abel_map(p.curve, p.periods, point_on_sheet(p.curve, far, 1));
    CHECK(near_inf.norm() < 1e-2);

    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    int tested = 0;
    while (tested < 20) {
      const Complex lam(u(rng), u(rng));
      bool close = false;
      for (const auto& e : p.curve.finite_branch_points()) close = close || std::abs(lam - e) < 0.05;
      if (close) continue;
      const SheetPoint P = point_on_sheet(p.curve, lam, tested % 2 ? 1 : -1);
      const CVector a = abel_map(p.curve, p.periods, P);
      const CVector at = abel_map(p.curve, p.periods, {std::conj(P.lambda), std::conj(P.mu)});
      CHECK(lattice_distance(p.periods.B, at + a.conjugate()) < 1e-6);
      // the other sheet gives the negative
      const CVector other = abel_map(p.curve, p.periods, {P.lambda, -P.mu});
      CHECK((other + a).norm() < 1e-9);
      ++tested;
    }
  }
}

TEST_CASE("period normalization: conditioning") {
  CMatrix pa(2, 2);
  pa << 1.0, 2.0, 2.0, 4.0;
  try {
    normalize_periods(pa, CMatrix::Identity(2, 2));
    FAIL("expected SingularPeriodMatrix");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularPeriodMatrix);
  }
  CMatrix scaled(2, 2);
  scaled << 1e6, 1.0, 3.0, 1e-6;
  const auto n = normalize_periods(scaled, CMatrix::Identity(2, 2));
  CHECK((n.c * scaled - CMatrix::Identity(2, 2)).norm() < 1e-14 * n.c.norm() * scaled.norm());
}

TEST_CASE("g = 1 period matrix is scale invariant") {
  for (double c : {1e-3, 1.0, 1e3}) {
    const auto curve = build_curve(std::vector<Complex>{-1.0 * c, -2.0 * c});
    const auto d = period_matrix(curve, standard_cycle_basis(curve));
    CHECK(std::abs(d.B(0, 0) - Complex(0.0, 1.0)) < 1e-10);
    const auto cc = build_curve(std::vector<Complex>{Complex(c, 2 * c), Complex(c, -2 * c)});
    const auto dc = period_matrix(cc, standard_cycle_basis(cc));
    CHECK(std::abs(dc.B(0, 0) - fixtures::prepared("G1C").periods.B(0, 0)) < 1e-10);
  }
}
