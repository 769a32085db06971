#include "fgsg/abelian_data.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fgsg/errors.hpp"
#include "fgsg/theta_engine.hpp"

namespace fgsg {
namespace {

std::vector<RationalDifferential> holomorphic_forms(int g) {
  std::vector<RationalDifferential> forms;
  for (int p = 0; p < g; ++p) forms.push_back(RationalDifferential::monomial(p));
  return forms;
}

double distance_to_segment(Complex p, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  const double u = std::clamp(std::real((p - a) * std::conj(d)) / len2, 0.0, 1.0);
  return std::abs(p - (a + u * d));
}

}  // namespace

CVector half_period(const CMatrix& B, int m) {
  const Eigen::Index g = B.rows();
  CVector eps = CVector::Zero(g);
  CVector epsp = CVector::Zero(g);
  for (Eigen::Index j = 0; j < g; ++j) (j < m ? eps : epsp)(j) = 1.0;
  return 0.5 * epsp + 0.5 * B * eps;
}

CVector riemann_constants(const CMatrix& B, int m) {
  const Eigen::Index g = B.rows();
  CVector first(g), second(g);
  for (Eigen::Index j = 0; j < g; ++j) {
    const double nu = static_cast<double>(j + 1);
    first(j) = j < m ? 1.0 : nu;
    second(j) = j < m ? nu : 1.0;
  }
  return 0.5 * first + 0.5 * B * second;
}

PeriodData period_matrix(const SpectralCurve& curve, const CycleBasis& basis, const QuadratureTolerance& tol) {
  const int g = curve.genus();
  const int m = curve.real_pairs();
  const auto forms = holomorphic_forms(g);
  const auto tables = period_tables(curve, basis, forms, tol);
  const auto norm = normalize_periods(tables.a, tables.b);

  PeriodData d;
  d.g = g;
  d.m = m;
  d.B = norm.riemann;
  d.c = norm.c;
  d.residuals.condition = norm.condition;
  d.residuals.symmetry = (d.B - d.B.transpose()).cwiseAbs().maxCoeff();
  const RMatrix im = 0.5 * (d.B.imag() + d.B.imag().transpose());
  d.residuals.min_eig_im = Eigen::SelfAdjointEigenSolver<RMatrix>(im).eigenvalues().minCoeff();
  RMatrix target = RMatrix::Zero(g, g);
  for (int j = m; j < g; ++j) target(j, j) = -0.5;
  d.residuals.real_part = (d.B.real() - target).cwiseAbs().maxCoeff();

  if (!(d.residuals.symmetry < 1e-8 && d.residuals.min_eig_im > 0.0 && d.residuals.real_part < 1e-6)) {
    std::ostringstream os;
    os << "Riemann matrix checks failed: symmetry " << d.residuals.symmetry << ", min eig Im B "
       << d.residuals.min_eig_im << ", Re B residual " << d.residuals.real_part;
    throw Error(ErrorKind::InvariantViolation, os.str());
  }
  // Exact symmetry downstream.
  d.B = 0.5 * (d.B + d.B.transpose());
  d.A0 = half_period(d.B, m);
  d.K = riemann_constants(d.B, m);

  Complex prod = 1.0;
  for (const auto& e : curve.branch_points()) prod *= -e;
  d.c0 = std::sqrt(std::max(prod.real(), 0.0));
  return d;
}

void second_kind_uv(const SpectralCurve& curve, const CycleBasis& basis, PeriodData& d,
                    const QuadratureTolerance& tol) {
  const int g = curve.genus();
  std::vector<RationalDifferential> forms{RationalDifferential::monomial(g),
                                          RationalDifferential::over_lambda_mu()};
  const auto t = period_tables(curve, basis, forms, tol);
  const CVector a_inf = 0.5 * t.a.row(0).transpose();
  const CVector b_inf = 0.5 * t.b.row(0).transpose();
  const CVector u = (b_inf - d.B.transpose() * a_inf) / (2.0 * kPi);

  auto v_for = [&](int sign) -> CVector {
    const CVector a0 = sign * 0.5 * d.c0 * t.a.row(1).transpose();
    const CVector b0 = sign * 0.5 * d.c0 * t.b.row(1).transpose();
    return (b0 - d.B.transpose() * a0) / (2.0 * kPi);
  };
  auto imag_max = [](const CVector& a, const CVector& b) {
    return std::max(a.imag().cwiseAbs().maxCoeff(), b.imag().cwiseAbs().maxCoeff());
  };

  CVector v = v_for(d.omega0_sign);
  if (imag_max(u, v) >= 1e-8) {
    d.omega0_sign = -d.omega0_sign;
    v = v_for(d.omega0_sign);
  }
  d.residuals.imag_uv = imag_max(u, v);
  if (d.residuals.imag_uv >= 1e-8) {
    std::ostringstream os;
    os << "U, V are not real: max imaginary part " << d.residuals.imag_uv;
    throw Error(ErrorKind::InvariantViolation, os.str());
  }
  d.U = u.real();
  d.V = v.real();
}

CVector abel_map(const SpectralCurve& curve, const PeriodData& data, const SheetPoint& target,
                 const QuadratureTolerance& tol) {
  const int g = curve.genus();
  const auto pts = curve.finite_branch_points();
  double max_abs = 0.0, max_im = 0.0;
  for (const auto& e : pts) {
    max_abs = std::max(max_abs, std::abs(e));
    max_im = std::max(max_im, std::abs(e.imag()));
  }
  max_abs = std::max(max_abs, std::abs(target.lambda));
  const double R0 = 2.0 * max_abs + 1.0;
  const double sigma = target.lambda.imag() >= 0.0 ? 1.0 : -1.0;
  const double Y = std::max(max_im, std::abs(target.lambda.imag())) + 1.0;
  const double clearance = required_clearance(curve);

  bool at_branch = false;
  for (const auto& e : pts) at_branch = at_branch || std::abs(e - target.lambda) < 1e-14 * std::max(1.0, max_abs);

  // Lateral shifts of the final descent, tried in order.
  const double step = 0.37 * curve.min_separation();
  std::vector<Complex> path;
  for (int k = 0; k <= 16 && path.empty(); ++k) {
    const double shift = (k == 0) ? 0.0 : ((k % 2 == 1) ? 1.0 : -1.0) * step * ((k + 1) / 2) / 8.0;
    std::vector<Complex> cand{Complex{R0, sigma * Y}, Complex{target.lambda.real() + shift, sigma * Y},
                              target.lambda};
    Complex from{R0, 0.0};
    bool ok = true;
    for (std::size_t leg = 0; leg < cand.size() && ok; ++leg) {
      for (const auto& e : pts) {
        if (leg + 1 == cand.size() && std::abs(e - target.lambda) < 1e-14 * std::max(1.0, max_abs)) continue;
        const double need = (leg + 1 == cand.size()) ? std::min(clearance, 0.5 * std::abs(e - target.lambda))
                                                     : clearance;
        if (distance_to_segment(e, from, cand[leg]) < need) ok = false;
      }
      from = cand[leg];
    }
    if (ok) path = std::move(cand);
  }
  if (path.empty()) throw Error(ErrorKind::PathCrossesCut, "no Abel-map path clears the branch points");

  const auto forms = holomorphic_forms(g);
  const auto res = integrate_from_infinity(curve, forms, R0, path, tol);
  CVector raw(g);
  for (int p = 0; p < g; ++p) raw(p) = res.integrals[static_cast<std::size_t>(p)];
  CVector out = data.c * raw;
  if (!at_branch) {
    const double scale = std::max(std::abs(target.mu), std::abs(res.end_mu));
    if (std::abs(res.end_mu + target.mu) < std::abs(res.end_mu - target.mu)) out = -out;
    if (std::min(std::abs(res.end_mu + target.mu), std::abs(res.end_mu - target.mu)) > 1e-6 * scale)
      throw Error(ErrorKind::InvalidInput, "target mu does not lie over target lambda");
  }
  return out;
}

PeriodData compute_period_data(const SpectralCurve& curve, const CycleBasis& basis, const PeriodOptions& options) {
  PeriodData d = period_matrix(curve, basis, options.tolerance);
  second_kind_uv(curve, basis, d, options.tolerance);
  if (!options.check_abel) return d;

  const int g = curve.genus();
  const CVector a0 = abel_map(curve, d, {0.0, 0.0}, options.tolerance);
  d.residuals.half_period = lattice_distance(d.B, a0 - d.A0);
  CVector ksum = CVector::Zero(g);
  for (int i = 1; i <= g; ++i) ksum += abel_map(curve, d, {curve.E(2 * i - 1), 0.0}, options.tolerance);
  d.residuals.riemann = lattice_distance(d.B, ksum - d.K);
  if (!(d.residuals.half_period < options.invariant_tolerance &&
        d.residuals.riemann < options.invariant_tolerance)) {
    std::ostringstream os;
    os << "Abel-map checks failed: A(0) residual " << d.residuals.half_period << ", K residual "
       << d.residuals.riemann;
    throw Error(ErrorKind::InvariantViolation, os.str());
  }
  return d;
}

}  // namespace fgsg
